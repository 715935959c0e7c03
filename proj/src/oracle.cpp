#include "posqbf/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>

namespace posqbf {

namespace {

// Negamax over the open positions with a transposition table. Positions are
// compressed to indices into `open`; the win test sees the mover's added
// claims as a bit mask over those indices.
template <typename WinFn>
class Search {
 public:
  Search(std::vector<int> open, int depth, WinFn win)
      : open_(std::move(open)), depth_(depth), win_(win) {
    full_ = open_.size() == 64 ? ~0ull : (1ull << open_.size()) - 1;
  }

  bool solve(uint64_t black, uint64_t white) {
    if (win_(black)) return true;
    int made = std::popcount(black) + std::popcount(white);
    if (made >= depth_) return false;
    uint64_t occ = black | white;
    if (occ == full_) return false;
    uint64_t key = black | (white << 32);  // exact: masks fit in 30 bits
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool black_to_move = made % 2 == 0;
    bool result = !black_to_move;
    for (size_t i = 0; i < open_.size(); ++i) {
      uint64_t bit = 1ull << i;
      if (occ & bit) continue;
      bool r = black_to_move ? solve(black | bit, white) : solve(black, white | bit);
      if (black_to_move == r) {
        result = r;
        break;
      }
      result = r;
    }
    memo_.emplace(key, result);
    return result;
  }

  // Solves and extracts the line of play; forced_idx >= 0 pins the maker's
  // first move to open_[forced_idx].
  Verdict run(int forced_idx) {
    Verdict v;
    if (forced_idx < 0) {
      v.black_wins = solve(0, 0);
      v.variation = variation(0, 0);
    } else if (win_(0) || depth_ < 1) {
      v.black_wins = win_(0);  // settled before the forced move matters
    } else {
      const uint64_t bit = 1ull << forced_idx;
      v.black_wins = solve(bit, 0);
      v.variation.push_back(open_[forced_idx]);
      auto rest = variation(bit, 0);
      v.variation.insert(v.variation.end(), rest.begin(), rest.end());
    }
    return v;
  }

  std::vector<int> variation(uint64_t black, uint64_t white) {
    std::vector<int> line;
    while (true) {
      if (win_(black)) break;
      int made = std::popcount(black) + std::popcount(white);
      if (made >= depth_) break;
      uint64_t occ = black | white;
      if (occ == full_) break;
      bool black_to_move = made % 2 == 0;
      bool cur = solve(black, white);
      for (size_t i = 0; i < open_.size(); ++i) {
        uint64_t bit = 1ull << i;
        if (occ & bit) continue;
        bool r = black_to_move ? solve(black | bit, white) : solve(black, white | bit);
        if (r == cur) {
          (black_to_move ? black : white) |= bit;
          line.push_back(open_[i]);
          break;
        }
      }
    }
    return line;
  }

 private:
  std::vector<int> open_;
  int depth_;
  WinFn win_;
  uint64_t full_;
  std::unordered_map<uint64_t, bool> memo_;
};

std::vector<int> open_positions(int n, const std::vector<char>& taken) {
  std::vector<int> open;
  for (int v = 0; v < n; ++v)
    if (!taken[v]) open.push_back(v);
  return open;
}

void check_limit(size_t n_open, const OracleOptions& opts) {
  int limit = std::min(opts.open_limit, 30);
  if (static_cast<int>(n_open) > limit)
    throw OracleLimitError("position has " + std::to_string(n_open) +
                           " open cells, search limit is " + std::to_string(limit));
}

// Maps opts.forced_first to its index among the open positions (-1 if unset).
int forced_index(const OracleOptions& opts, const std::vector<int>& open) {
  if (opts.forced_first < 0) return -1;
  auto it = std::find(open.begin(), open.end(), opts.forced_first);
  if (it == open.end())
    throw GameError("forced first move " + std::to_string(opts.forced_first) +
                    " is not an open position");
  return static_cast<int>(it - open.begin());
}

}  // namespace

Verdict solve_game(const GameInstance& game, int depth, const OracleOptions& opts) {
  if (depth < 0) throw GameError("negative depth");
  std::vector<char> taken(static_cast<size_t>(game.num_positions), 0);
  std::vector<char> is_black(static_cast<size_t>(game.num_positions), 0);
  std::vector<char> is_white(static_cast<size_t>(game.num_positions), 0);
  for (int v : game.initial_black) taken[v] = is_black[v] = 1;
  for (int v : game.initial_white) taken[v] = is_white[v] = 1;
  auto open = open_positions(game.num_positions, taken);
  check_limit(open.size(), opts);
  std::vector<int> open_index(static_cast<size_t>(game.num_positions), -1);
  for (size_t i = 0; i < open.size(); ++i) open_index[open[i]] = static_cast<int>(i);

  // Per win set: mask of needed open positions; sets touching White are dead.
  std::vector<uint64_t> needed;
  for (const auto& ws : game.win_sets) {
    uint64_t mask = 0;
    bool dead = false;
    for (int v : ws) {
      if (is_white[v]) {
        dead = true;
        break;
      }
      if (!is_black[v]) mask |= 1ull << open_index[v];
    }
    if (!dead) needed.push_back(mask);
  }
  auto win = [&needed](uint64_t black) {
    for (uint64_t m : needed)
      if ((m & ~black) == 0) return true;
    return false;
  };
  Search search(open, depth, win);
  return search.run(forced_index(opts, open));
}

namespace {

// BFS win tests for the two graph games. `mover_adds` maps search-mask bits
// back to node ids.
struct GraphWin {
  const GeneralizedHexInstance* g;
  std::vector<std::vector<int>> adj;
  std::vector<char> in_s, in_e;
  std::vector<char> static_flag;   // pre-claimed nodes of the relevant color
  std::vector<int> open;           // node id per mask bit
  bool transversal;                // true: win = non-cut disconnects

  bool operator()(uint64_t mover_mask) const {
    std::vector<char> active = static_flag;
    if (transversal) {
      // active currently marks CUT nodes; flip to "passable".
      for (size_t i = 0; i < open.size(); ++i)
        if (mover_mask & (1ull << i)) active[open[i]] = 1;
      std::vector<char> passable(active.size());
      for (size_t v = 0; v < active.size(); ++v) passable[v] = !active[v];
      return !bfs_connects(passable);
    }
    for (size_t i = 0; i < open.size(); ++i)
      if (mover_mask & (1ull << i)) active[open[i]] = 1;
    return bfs_connects(active);
  }

  bool bfs_connects(const std::vector<char>& ok) const {
    std::vector<char> seen(ok.size(), 0);
    std::vector<int> queue;
    for (int v = 0; v < g->num_nodes; ++v)
      if (in_s[v] && ok[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    for (size_t i = 0; i < queue.size(); ++i) {
      int v = queue[i];
      if (in_e[v]) return true;
      for (int w : adj[v])
        if (ok[w] && !seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    }
    return false;
  }
};

Verdict solve_graph_game(const GeneralizedHexInstance& g, const std::vector<int>& short_claimed,
                         const std::vector<int>& cut_claimed, int depth,
                         const OracleOptions& opts, bool transversal) {
  if (depth < 0) throw GameError("negative depth");
  std::vector<char> taken(static_cast<size_t>(g.num_nodes), 0);
  GraphWin win;
  win.g = &g;
  win.adj = g.adjacency();
  win.in_s.assign(static_cast<size_t>(g.num_nodes), 0);
  win.in_e.assign(static_cast<size_t>(g.num_nodes), 0);
  for (int v : g.border_s) win.in_s[v] = 1;
  for (int v : g.border_e) win.in_e[v] = 1;
  win.static_flag.assign(static_cast<size_t>(g.num_nodes), 0);
  for (int v : short_claimed) taken[v] = 1;
  for (int v : cut_claimed) taken[v] = 1;
  if (transversal) {
    for (int v : cut_claimed) win.static_flag[v] = 1;  // mover side = cut
  } else {
    for (int v : short_claimed) win.static_flag[v] = 1;
  }
  win.transversal = transversal;
  win.open = open_positions(g.num_nodes, taken);
  check_limit(win.open.size(), opts);

  Search search(win.open, depth, win);
  return search.run(forced_index(opts, win.open));
}

}  // namespace

Verdict solve_ghex(const GeneralizedHexInstance& g, const std::vector<int>& short_claimed,
                   const std::vector<int>& cut_claimed, int depth, const OracleOptions& opts) {
  return solve_graph_game(g, short_claimed, cut_claimed, depth, opts, false);
}

Verdict solve_ghex_transversal(const GeneralizedHexInstance& g,
                               const std::vector<int>& short_claimed,
                               const std::vector<int>& cut_claimed, int depth,
                               const OracleOptions& opts) {
  return solve_graph_game(g, short_claimed, cut_claimed, depth, opts, true);
}

}  // namespace posqbf
