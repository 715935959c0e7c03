// Shape-forming games on a square board (maker-breaker): the maker claims
// cells of an n x n grid and wins by owning every cell of some placement of
// a target polyomino — any translation of any rotated/reflected variant.
//
// Shapes are small cell sets connected under 4-adjacency, stored as (x, y)
// offsets (x to the right, y up) in canonical form: cells sorted, first cell
// at the origin. A shape catalog ships with the library (see data/ in the
// repository root, same content as builtin_shapes()) and can be replaced by
// any file in the same format:
//
//   shape <name>
//   cell <dx> <dy>      (one line per cell; blank lines and # comments ok)
//
// Two routes to a QBF verdict are provided:
//   * httt_win_sets() expands all placements into explicit win sets, which
//     any of the win-set encoders (or the game oracle) can consume;
//   * encode_httt_sn() builds the move-symbolic circuit directly: the
//     witness slots spell the shape cell by cell, with consecutive slots
//     linked by the variant's fixed (dx, dy) offsets, so the placement
//     list never materializes.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "posqbf/game.hpp"
#include "posqbf/ghex.hpp"  // ParseError
#include "posqbf/qbf.hpp"

namespace posqbf {

struct Polyomino {
  std::string name;
  std::vector<std::pair<int, int>> cells;  // (x, y) offsets

  // Sorts the cells and shifts them so the first one sits at the origin
  // (making the list the lexicographically smallest among translations).
  // Throws GameError when the shape is empty, has duplicate cells, or is
  // not connected under 4-adjacency.
  void canonicalize();

  bool operator==(const Polyomino&) const = default;
};

// The distinct images of p under the square's eight rotations/reflections,
// canonicalized, deduplicated, and sorted; every variant keeps p's name.
std::vector<Polyomino> variants(const Polyomino& p);

// Every placement of every variant that fits fully on a board_size x
// board_size board, as sorted sets of row-major cell indices (cell (x, y)
// has index y * board_size + x). Shapes too large to fit yield an empty
// family. The family is sorted and duplicate-free.
std::vector<std::vector<int>> httt_win_sets(const Polyomino& p, int board_size);

// Move-symbolic encoding with one witness slot per shape cell. Prefix: d
// alternating move blocks (maker first) with the witness merged into the
// final block. Matrix: the witness matches some variant's offset chain and
// stays on the board, every witness slot repeats a maker move, maker moves
// avoid all earlier moves, and maker moves stay in range when the cell
// count is not a power of two. With symmetry_reduce, the first move is
// restricted to a fundamental-domain triangle (row <= col and
// row + col <= board_size - 1), sound on the empty board.
//
// Throws QbfError unless depth is a positive odd number; throws GameError
// when the shape has more cells than the maker has moves.
QbfCircuit encode_httt_sn(const Polyomino& p, int board_size, int depth,
                          bool symmetry_reduce);

// Catalog file parsing/writing. parse_shapes throws ParseError on malformed
// input and GameError on invalid shapes; writing then parsing is identity
// for canonical shapes.
std::vector<Polyomino> parse_shapes(const std::string& text);
std::string shapes_to_string(const std::vector<Polyomino>& shapes);

// Built-in catalog: the classic shapes of one to four cells (monomino,
// domino, tic, el, skinny, elly, tippy, knobby, fatty) plus z, l, snaky.
const std::vector<Polyomino>& builtin_shapes();
const std::string& builtin_shapes_text();

// Catalog lookup by name; throws GameError for unknown names.
const Polyomino& shape_by_name(const std::string& name);

}  // namespace posqbf
