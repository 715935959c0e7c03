// Hex boards: size×size rhombi of hexagonally connected cells.
//
// Cells are named like "b3": letter = column (a leftmost), number = row
// (1 topmost). Ids are row-major: id = row*size + col. Black connects the top
// row to the bottom row; White connects the rightmost column to the leftmost.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "posqbf/ghex.hpp"

namespace posqbf {

enum class Stone : unsigned char { Empty, Black, White };
enum class Side { Black, White };

struct HexBoard {
  int size = 0;
  std::vector<Stone> cells;  // size*size entries, row-major

  HexBoard() = default;
  explicit HexBoard(int size_);  // throws GameError unless 1 <= size <= 26

  Stone at(int id) const { return cells[id]; }
  Stone at(int row, int col) const { return cells[row * size + col]; }
  void set(int row, int col, Stone s) { cells[row * size + col] = s; }
  int num_cells() const { return size * size; }
};

int cell_id(const HexBoard& b, int row, int col);
std::string cell_name(const HexBoard& b, int id);
// Parses "b3" style names; throws ParseError (line 0) on bad syntax or range.
int parse_cell(const HexBoard& b, const std::string& name);

// On-board hex neighbors of a cell in fixed order:
// up, down, left, right, up-right, down-left.
std::vector<int> hex_neighbors(const HexBoard& b, int id);

// Graph view of the whole board with border sets for one side, plus that
// side's claims. In the White view the mover is White (border_s = rightmost
// column, border_e = leftmost column) and Black's stones are the cut claims.
struct SideView {
  GeneralizedHexInstance graph;    // every cell is a node, claimed or not
  std::vector<int> short_claimed;  // the side's own stones (sorted)
  std::vector<int> cut_claimed;    // the opponent's stones (sorted)
};
SideView board_to_ghex(const HexBoard& b, Side side);

// Text format:
//   c <comment>
//   size <n>
//   black <cells...>   (optional, at most once)
//   white <cells...>   (optional, at most once)
HexBoard read_hex_board(std::istream& in);
HexBoard read_hex_board_file(const std::string& path);
void write_hex_board(std::ostream& out, const HexBoard& b);
std::string hex_board_to_string(const HexBoard& b);

// Whitespace-separated cell names, Black moving first; throws ParseError on
// bad cells, GameError on occupied/repeated cells.
std::vector<int> read_move_list(std::istream& in, const HexBoard& b);
// Applies moves (Black first) to a copy of the board.
HexBoard apply_moves(const HexBoard& b, const std::vector<int>& moves);

}  // namespace posqbf
