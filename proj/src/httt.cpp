#include "posqbf/httt.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "posqbf/encode_lifted.hpp"

namespace posqbf {

namespace {

using Cell = std::pair<int, int>;

int bits_for(int n) {
  int b = 0;
  while ((1 << b) < n) ++b;
  return b;
}

void check_depth(int depth) {
  if (depth < 1 || depth % 2 == 0)
    throw QbfError("encoding depth must be a positive odd number, got " + std::to_string(depth));
}

// the square's eight rotations/reflections
Cell transform(Cell c, int k) {
  auto [x, y] = c;
  switch (k) {
    case 0: return {x, y};
    case 1: return {-y, x};
    case 2: return {-x, -y};
    case 3: return {y, -x};
    case 4: return {-x, y};
    case 5: return {y, x};
    case 6: return {x, -y};
    default: return {-y, -x};
  }
}

}  // namespace

void Polyomino::canonicalize() {
  if (cells.empty()) throw GameError("shape '" + name + "' has no cells");
  std::sort(cells.begin(), cells.end());
  if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
    throw GameError("shape '" + name + "' repeats a cell");
  const Cell base = cells.front();
  for (auto& [x, y] : cells) {
    x -= base.first;
    y -= base.second;
  }
  // connectivity under 4-adjacency
  std::set<Cell> todo(cells.begin() + 1, cells.end());
  std::vector<Cell> frontier{cells.front()};
  while (!frontier.empty()) {
    auto [x, y] = frontier.back();
    frontier.pop_back();
    for (Cell nb : {Cell{x + 1, y}, Cell{x - 1, y}, Cell{x, y + 1}, Cell{x, y - 1}}) {
      if (auto it = todo.find(nb); it != todo.end()) {
        todo.erase(it);
        frontier.push_back(nb);
      }
    }
  }
  if (!todo.empty()) throw GameError("shape '" + name + "' is not connected");
}

std::vector<Polyomino> variants(const Polyomino& p) {
  Polyomino base = p;
  base.canonicalize();
  std::set<std::vector<Cell>> seen;
  for (int k = 0; k < 8; ++k) {
    Polyomino q = base;
    for (auto& c : q.cells) c = transform(c, k);
    q.canonicalize();
    seen.insert(q.cells);
  }
  std::vector<Polyomino> out;
  for (const auto& cells : seen) out.push_back({p.name, cells});
  return out;
}

std::vector<std::vector<int>> httt_win_sets(const Polyomino& p, int board_size) {
  if (board_size < 1) throw GameError("board size must be positive");
  std::vector<std::vector<int>> family;
  for (const Polyomino& v : variants(p)) {
    int min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    for (auto [x, y] : v.cells) {
      min_x = std::min(min_x, x), max_x = std::max(max_x, x);
      min_y = std::min(min_y, y), max_y = std::max(max_y, y);
    }
    for (int ox = -min_x; ox + max_x < board_size; ++ox) {
      for (int oy = -min_y; oy + max_y < board_size; ++oy) {
        std::vector<int> set;
        for (auto [x, y] : v.cells) set.push_back((y + oy) * board_size + (x + ox));
        std::sort(set.begin(), set.end());
        family.push_back(std::move(set));
      }
    }
  }
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

QbfCircuit encode_httt_sn(const Polyomino& p, int board_size, int depth, bool symmetry_reduce) {
  Polyomino shape = p;
  shape.canonicalize();
  if (board_size < 1) throw GameError("board size must be positive");
  check_depth(depth);
  const int m = static_cast<int>(shape.cells.size());
  const int budget = (depth + 1) / 2;
  if (m > budget)
    throw GameError("shape '" + shape.name + "' has " + std::to_string(m) +
                    " cells but depth " + std::to_string(depth) + " allows only " +
                    std::to_string(budget) + " maker moves");

  const int n = board_size * board_size;
  const int bits = bits_for(n);
  const auto idx = [board_size](int x, int y) { return y * board_size + x; };

  // d alternating move blocks, with the witness slots (one per shape cell)
  // merged into the final block
  int next = 1;
  const auto take = [&next](int k) {
    std::vector<Var> v(static_cast<size_t>(k));
    for (auto& x : v) x = next++;
    return v;
  };
  std::vector<std::vector<Var>> move, witness;
  std::vector<QuantBlock> blocks;
  for (int t = 1; t <= depth; ++t) {
    move.push_back(take(bits));
    blocks.push_back({t % 2 == 1 ? Quant::Exists : Quant::Forall, move.back()});
  }
  for (int i = 0; i < m; ++i) {
    witness.push_back(take(bits));
    auto& last = blocks.back().vars;
    last.insert(last.end(), witness.back().begin(), witness.back().end());
  }

  CircuitBuilder cb(next - 1);
  std::vector<Lit> top;

  // goal: the witness spells out some variant, cell by cell; consecutive
  // slots are linked by the variant's fixed offset, and a slot may not sit
  // where the offset would leave the board
  std::vector<Lit> variant_terms;
  for (const Polyomino& v : variants(shape)) {
    std::vector<Lit> chain;
    for (int i = 0; i + 1 < m; ++i) {
      const int dx = v.cells[static_cast<size_t>(i) + 1].first - v.cells[static_cast<size_t>(i)].first;
      const int dy = v.cells[static_cast<size_t>(i) + 1].second - v.cells[static_cast<size_t>(i)].second;
      for (int y = 0; y < board_size; ++y) {
        for (int x = 0; x < board_size; ++x) {
          const Lit here = cb.bin(witness[static_cast<size_t>(i)], idx(x, y));
          const int tx = x + dx, ty = y + dy;
          if (tx >= 0 && tx < board_size && ty >= 0 && ty < board_size)
            chain.push_back(cb.implies(here, cb.bin(witness[static_cast<size_t>(i) + 1], idx(tx, ty))));
          else
            chain.push_back(-here);
        }
      }
    }
    variant_terms.push_back(cb.band(std::move(chain)));
  }
  top.push_back(cb.bor(std::move(variant_terms)));

  // every witness slot repeats one of the maker's moves
  for (const auto& w : witness) {
    std::vector<Lit> any;
    for (int t = 1; t <= depth; t += 2)
      any.push_back(cb.eq(w, move[static_cast<size_t>(t - 1)]));
    top.push_back(cb.bor(std::move(any)));
  }

  // maker moves avoid all earlier moves and stay in range
  const bool need_bound = (1 << bits) != n;
  for (int t = 1; t <= depth; t += 2) {
    for (int i = 1; i < t; ++i)
      top.push_back(-cb.eq(move[static_cast<size_t>(t - 1)], move[static_cast<size_t>(i - 1)]));
    if (need_bound) top.push_back(cb.lt_const(move[static_cast<size_t>(t - 1)], n));
  }

  // first-move symmetry reduction: one octant of the board
  if (symmetry_reduce) {
    std::vector<Lit> domain;
    for (int r = 0; r < board_size; ++r)
      for (int c = 0; c < board_size; ++c)
        if (r <= c && r + c <= board_size - 1) domain.push_back(cb.bin(move[0], idx(c, r)));
    top.push_back(cb.bor(std::move(domain)));
  }

  return cb.finish(std::move(blocks), cb.band(std::move(top)));
}

std::vector<Polyomino> parse_shapes(const std::string& text) {
  std::vector<Polyomino> shapes;
  std::set<std::string> names;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "shape") {
      std::string name;
      if (!(ls >> name)) throw ParseError("shape line without a name", line_no);
      if (!names.insert(name).second) throw ParseError("duplicate shape '" + name + "'", line_no);
      shapes.push_back({name, {}});
    } else if (word == "cell") {
      int x = 0, y = 0;
      if (shapes.empty()) throw ParseError("cell line before any shape line", line_no);
      if (!(ls >> x >> y)) throw ParseError("cell line needs two integers", line_no);
      shapes.back().cells.emplace_back(x, y);
    } else {
      throw ParseError("expected 'shape' or 'cell', got '" + word + "'", line_no);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing text '" + extra + "'", line_no);
  }
  for (auto& s : shapes) s.canonicalize();
  return shapes;
}

std::string shapes_to_string(const std::vector<Polyomino>& shapes) {
  std::string out;
  for (const auto& s : shapes) {
    if (!out.empty()) out += "\n";
    out += "shape " + s.name + "\n";
    for (auto [x, y] : s.cells)
      out += "cell " + std::to_string(x) + " " + std::to_string(y) + "\n";
  }
  return out;
}

const std::string& builtin_shapes_text() {
  static const std::string text = R"(# Built-in shape catalog: the classic one-to-four-cell shapes plus three
# larger ones. Coordinates are (dx, dy) with dx to the right and dy up.

shape monomino
cell 0 0

shape domino
cell 0 0
cell 1 0

shape tic
cell 0 0
cell 1 0
cell 2 0

shape el
cell 0 0
cell 1 0
cell 0 1

shape skinny
cell 0 0
cell 1 0
cell 2 0
cell 3 0

shape elly
cell 0 0
cell 1 0
cell 2 0
cell 0 1

shape tippy
cell 0 1
cell 1 1
cell 1 0
cell 2 0

shape knobby
cell 0 0
cell 1 0
cell 2 0
cell 1 1

shape fatty
cell 0 0
cell 1 0
cell 0 1
cell 1 1

shape z
cell 0 2
cell 1 2
cell 1 1
cell 1 0
cell 2 0

shape l
cell 0 0
cell 1 0
cell 0 1
cell 0 2
cell 0 3

shape snaky
cell 0 1
cell 1 1
cell 1 0
cell 2 0
cell 3 0
cell 4 0
)";
  return text;
}

const std::vector<Polyomino>& builtin_shapes() {
  static const std::vector<Polyomino> shapes = parse_shapes(builtin_shapes_text());
  return shapes;
}

const Polyomino& shape_by_name(const std::string& name) {
  for (const auto& s : builtin_shapes())
    if (s.name == name) return s;
  throw GameError("unknown shape '" + name + "'");
}

}  // namespace posqbf
