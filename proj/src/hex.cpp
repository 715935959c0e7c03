#include "posqbf/hex.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace posqbf {

HexBoard::HexBoard(int size_) : size(size_) {
  if (size_ < 1 || size_ > 26)
    throw GameError("board size out of range (1..26): " + std::to_string(size_));
  cells.assign(static_cast<size_t>(size_) * size_, Stone::Empty);
}

int cell_id(const HexBoard& b, int row, int col) { return row * b.size + col; }

std::string cell_name(const HexBoard& b, int id) {
  int row = id / b.size, col = id % b.size;
  return std::string(1, static_cast<char>('a' + col)) + std::to_string(row + 1);
}

int parse_cell(const HexBoard& b, const std::string& name) {
  if (name.size() < 2 || name[0] < 'a' || name[0] >= 'a' + b.size)
    throw ParseError("bad cell name '" + name + "'", 0);
  int row = 0;
  for (size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') throw ParseError("bad cell name '" + name + "'", 0);
    row = row * 10 + (name[i] - '0');
  }
  if (row < 1 || row > b.size) throw ParseError("cell row out of range '" + name + "'", 0);
  return cell_id(b, row - 1, name[0] - 'a');
}

std::vector<int> hex_neighbors(const HexBoard& b, int id) {
  int row = id / b.size, col = id % b.size;
  static constexpr int kOff[6][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}, {-1, 1}, {1, -1}};
  std::vector<int> out;
  for (auto [dr, dc] : kOff) {
    int r = row + dr, c = col + dc;
    if (r >= 0 && r < b.size && c >= 0 && c < b.size) out.push_back(cell_id(b, r, c));
  }
  return out;
}

SideView board_to_ghex(const HexBoard& b, Side side) {
  SideView view;
  view.graph.num_nodes = b.num_cells();
  for (int id = 0; id < b.num_cells(); ++id)
    for (int w : hex_neighbors(b, id))
      if (id < w) view.graph.edges.push_back({id, w});
  for (int i = 0; i < b.size; ++i) {
    if (side == Side::Black) {
      view.graph.border_s.push_back(cell_id(b, 0, i));
      view.graph.border_e.push_back(cell_id(b, b.size - 1, i));
    } else {
      view.graph.border_s.push_back(cell_id(b, i, b.size - 1));
      view.graph.border_e.push_back(cell_id(b, i, 0));
    }
  }
  Stone own = side == Side::Black ? Stone::Black : Stone::White;
  for (int id = 0; id < b.num_cells(); ++id) {
    if (b.at(id) == own)
      view.short_claimed.push_back(id);
    else if (b.at(id) != Stone::Empty)
      view.cut_claimed.push_back(id);
  }
  view.graph.canonicalize();
  return view;
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream iss(line);
  std::vector<std::string> toks;
  std::string t;
  while (iss >> t) toks.push_back(t);
  return toks;
}

}  // namespace

HexBoard read_hex_board(std::istream& in) {
  HexBoard board;
  bool saw_size = false, saw_black = false, saw_white = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokens_of(line);
    if (toks.empty() || toks[0] == "c") continue;
    if (!saw_size) {
      if (toks.size() != 2 || toks[0] != "size")
        throw ParseError("expected 'size <n>' first", lineno);
      int n = 0;
      try {
        size_t pos = 0;
        n = std::stoi(toks[1], &pos);
        if (pos != toks[1].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError("bad board size '" + toks[1] + "'", lineno);
      }
      try {
        board = HexBoard(n);
      } catch (const GameError& e) {
        throw ParseError(e.what(), lineno);
      }
      saw_size = true;
      continue;
    }
    if (toks[0] == "black" || toks[0] == "white") {
      bool is_black = toks[0] == "black";
      if ((is_black && saw_black) || (!is_black && saw_white))
        throw ParseError("duplicate '" + toks[0] + "' line", lineno);
      (is_black ? saw_black : saw_white) = true;
      for (size_t i = 1; i < toks.size(); ++i) {
        int id;
        try {
          id = parse_cell(board, toks[i]);
        } catch (const ParseError& e) {
          throw ParseError(e.what(), lineno);
        }
        if (board.at(id) != Stone::Empty)
          throw ParseError("cell claimed twice: " + toks[i], lineno);
        board.cells[id] = is_black ? Stone::Black : Stone::White;
      }
    } else {
      throw ParseError("unexpected line kind '" + toks[0] + "'", lineno);
    }
  }
  if (!saw_size) throw ParseError("missing 'size' line", lineno);
  return board;
}

HexBoard read_hex_board_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return read_hex_board(in);
}

void write_hex_board(std::ostream& out, const HexBoard& b) {
  out << "size " << b.size << '\n';
  for (Stone s : {Stone::Black, Stone::White}) {
    bool any = false;
    for (int id = 0; id < b.num_cells(); ++id) any |= b.at(id) == s;
    if (!any) continue;
    out << (s == Stone::Black ? "black" : "white");
    for (int id = 0; id < b.num_cells(); ++id)
      if (b.at(id) == s) out << ' ' << cell_name(b, id);
    out << '\n';
  }
}

std::string hex_board_to_string(const HexBoard& b) {
  std::ostringstream oss;
  write_hex_board(oss, b);
  return oss.str();
}

std::vector<int> read_move_list(std::istream& in, const HexBoard& b) {
  std::vector<int> moves;
  std::vector<char> taken(static_cast<size_t>(b.num_cells()), 0);
  for (int id = 0; id < b.num_cells(); ++id) taken[id] = b.at(id) != Stone::Empty;
  std::string tok;
  while (in >> tok) {
    int id = parse_cell(b, tok);
    if (taken[id]) throw GameError("move hits an occupied cell: " + tok);
    taken[id] = 1;
    moves.push_back(id);
  }
  return moves;
}

HexBoard apply_moves(const HexBoard& b, const std::vector<int>& moves) {
  HexBoard out = b;
  for (size_t i = 0; i < moves.size(); ++i) {
    if (out.at(moves[i]) != Stone::Empty)
      throw GameError("move hits an occupied cell: " + cell_name(b, moves[i]));
    out.cells[moves[i]] = i % 2 == 0 ? Stone::Black : Stone::White;
  }
  return out;
}

}  // namespace posqbf
