#include "posqbf/preprocess.hpp"

#include <algorithm>
#include <set>

namespace posqbf {

namespace {

void check_claims(const GeneralizedHexInstance& g, const std::vector<int>& short_claimed,
                  const std::vector<int>& cut_claimed) {
  std::vector<char> seen(static_cast<size_t>(g.num_nodes), 0);
  for (int pass = 0; pass < 2; ++pass) {
    for (int v : pass == 0 ? short_claimed : cut_claimed) {
      if (v < 0 || v >= g.num_nodes) throw GameError("claim out of range");
      if (seen[static_cast<size_t>(v)]) throw GameError("node claimed twice");
      seen[static_cast<size_t>(v)] = 1;
    }
  }
}

}  // namespace

ContractResult contract(const GeneralizedHexInstance& g, const std::vector<int>& short_claimed,
                        const std::vector<int>& cut_claimed) {
  check_claims(g, short_claimed, cut_claimed);
  const size_t n = static_cast<size_t>(g.num_nodes);
  std::vector<std::set<int>> adj(n);  // self-loops kept separately
  std::vector<char> self_loop(n, 0);
  for (auto [u, v] : g.edges) {
    if (u == v) {
      self_loop[static_cast<size_t>(u)] = 1;
    } else {
      adj[static_cast<size_t>(u)].insert(v);
      adj[static_cast<size_t>(v)].insert(u);
    }
  }
  std::vector<char> in_s(n, 0), in_e(n, 0), alive(n, 1);
  for (int v : g.border_s) in_s[static_cast<size_t>(v)] = 1;
  for (int v : g.border_e) in_e[static_cast<size_t>(v)] = 1;

  auto erase_node = [&](int v) {
    alive[static_cast<size_t>(v)] = 0;
    for (int w : adj[static_cast<size_t>(v)]) adj[static_cast<size_t>(w)].erase(v);
    adj[static_cast<size_t>(v)].clear();
  };

  for (int v : cut_claimed) erase_node(v);

  ContractResult res;
  std::vector<int> shorts(short_claimed);
  std::sort(shorts.begin(), shorts.end());
  for (int v : shorts) {
    const size_t sv = static_cast<size_t>(v);
    if (in_s[sv] && in_e[sv]) res.already_connected = true;
    std::vector<int> nbrs(adj[sv].begin(), adj[sv].end());
    for (int a : nbrs) {
      in_s[static_cast<size_t>(a)] |= in_s[sv];
      in_e[static_cast<size_t>(a)] |= in_e[sv];
    }
    for (size_t i = 0; i < nbrs.size(); ++i)
      for (size_t j = i + 1; j < nbrs.size(); ++j) {
        adj[static_cast<size_t>(nbrs[i])].insert(nbrs[j]);
        adj[static_cast<size_t>(nbrs[j])].insert(nbrs[i]);
      }
    erase_node(v);
  }

  res.old_to_new.assign(n, -1);
  int next = 0;
  for (size_t v = 0; v < n; ++v)
    if (alive[v]) res.old_to_new[v] = next++;

  GeneralizedHexInstance& out = res.instance;
  out.num_nodes = next;
  for (size_t v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    const int nv = res.old_to_new[v];
    if (in_s[v]) out.border_s.push_back(nv);
    if (in_e[v]) out.border_e.push_back(nv);
    if (self_loop[v]) out.edges.emplace_back(nv, nv);
    for (int w : adj[v]) {
      if (w <= static_cast<int>(v)) continue;
      // two contacts with the same border never help a minimal connection
      if (in_s[v] && in_s[static_cast<size_t>(w)]) continue;
      if (in_e[v] && in_e[static_cast<size_t>(w)]) continue;
      out.edges.emplace_back(nv, res.old_to_new[w]);
    }
  }
  out.canonicalize();
  return res;
}

GameInstance prune_win_sets(const GameInstance& game, int depth) {
  if (depth < 0) throw GameError("depth must be nonnegative");
  const int budget = (depth + 1) / 2;  // maker moves within depth
  std::vector<char> black(static_cast<size_t>(game.num_positions), 0);
  std::vector<char> white(static_cast<size_t>(game.num_positions), 0);
  for (int v : game.initial_black) black[static_cast<size_t>(v)] = 1;
  for (int v : game.initial_white) white[static_cast<size_t>(v)] = 1;

  std::vector<std::vector<int>> kept;
  for (const auto& ws : game.win_sets) {
    bool blocked = false;
    int needed = 0;
    for (int v : ws) {
      if (white[static_cast<size_t>(v)]) blocked = true;
      if (!black[static_cast<size_t>(v)]) ++needed;
    }
    if (!blocked && needed <= budget) kept.push_back(ws);
  }
  // subset-minimal within the kept family
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<std::vector<int>> minimal;
  for (const auto& ws : kept) {
    bool dominated = false;
    for (const auto& m : minimal)
      if (std::includes(ws.begin(), ws.end(), m.begin(), m.end())) {
        dominated = true;
        break;
      }
    if (!dominated) minimal.push_back(ws);
  }
  GameInstance out = game;
  out.win_sets = std::move(minimal);
  out.canonicalize();
  return out;
}

GameInstance fill_breaker(const GameInstance& game) {
  std::vector<char> used(static_cast<size_t>(game.num_positions), 0);
  for (const auto& ws : game.win_sets)
    for (int v : ws) used[static_cast<size_t>(v)] = 1;
  for (int v : game.initial_black) used[static_cast<size_t>(v)] = 1;
  for (int v : game.initial_white) used[static_cast<size_t>(v)] = 1;
  GameInstance out = game;
  for (int v = 0; v < game.num_positions; ++v)
    if (!used[static_cast<size_t>(v)]) out.initial_white.push_back(v);
  out.canonicalize();
  return out;
}

GeneralizedHexInstance stutter_closure(const GeneralizedHexInstance& g) {
  GeneralizedHexInstance out = g;
  for (int v : g.border_e) out.edges.emplace_back(v, v);
  out.canonicalize();
  return out;
}

BoardReduction reduce_board(const HexBoard& b, Side side, int depth) {
  if (depth < 0) throw GameError("depth must be nonnegative");
  SideView view = board_to_ghex(b, side);
  ContractResult c = contract(view.graph, view.short_claimed, view.cut_claimed);

  BoardReduction r;
  if (c.already_connected) {
    r.already_won = true;
    r.game.num_positions = 0;
    r.game.win_sets = {{}};
    return r;
  }

  auto sets = min_connecting_sets(c.instance, (depth + 1) / 2);
  std::vector<char> keep(static_cast<size_t>(c.instance.num_nodes), 0);
  for (const auto& ws : sets)
    for (int v : ws) keep[static_cast<size_t>(v)] = 1;

  std::vector<int> mid_to_new(static_cast<size_t>(c.instance.num_nodes), -1);
  int next = 0;
  for (int v = 0; v < c.instance.num_nodes; ++v)
    if (keep[static_cast<size_t>(v)]) mid_to_new[static_cast<size_t>(v)] = next++;

  GeneralizedHexInstance& inst = r.instance;
  inst.num_nodes = next;
  for (auto [u, v] : c.instance.edges)
    if (keep[static_cast<size_t>(u)] && keep[static_cast<size_t>(v)])
      inst.edges.emplace_back(mid_to_new[static_cast<size_t>(u)],
                              mid_to_new[static_cast<size_t>(v)]);
  for (int v : c.instance.border_s)
    if (keep[static_cast<size_t>(v)]) inst.border_s.push_back(mid_to_new[static_cast<size_t>(v)]);
  for (int v : c.instance.border_e)
    if (keep[static_cast<size_t>(v)]) inst.border_e.push_back(mid_to_new[static_cast<size_t>(v)]);
  inst.canonicalize();

  r.game.num_positions = next;
  for (auto& ws : sets) {
    for (int& v : ws) v = mid_to_new[static_cast<size_t>(v)];
    r.game.win_sets.push_back(std::move(ws));
  }
  r.game.canonicalize();

  r.node_to_cell.assign(static_cast<size_t>(next), -1);
  for (int cell = 0; cell < static_cast<int>(c.old_to_new.size()); ++cell) {
    const int mid = c.old_to_new[static_cast<size_t>(cell)];
    if (mid >= 0 && keep[static_cast<size_t>(mid)])
      r.node_to_cell[static_cast<size_t>(mid_to_new[static_cast<size_t>(mid)])] = cell;
  }
  return r;
}

TransversalInstance transversal_of_board(const HexBoard& b, Side maker, int depth) {
  BoardReduction br = reduce_board(b, maker, depth);
  std::vector<char> useful(b.cells.size(), 0);
  for (int cell : br.node_to_cell) useful[static_cast<size_t>(cell)] = 1;

  const Side breaker = maker == Side::Black ? Side::White : Side::Black;
  const Stone fill = breaker == Side::Black ? Stone::Black : Stone::White;
  HexBoard filled = b;
  for (size_t i = 0; i < filled.cells.size(); ++i)
    if (filled.cells[i] == Stone::Empty && !useful[i]) filled.cells[i] = fill;

  SideView wv = board_to_ghex(filled, breaker);
  ContractResult c = contract(wv.graph, wv.short_claimed, wv.cut_claimed);

  TransversalInstance t;
  t.instance = std::move(c.instance);
  t.mover_hopeless = c.already_connected;
  t.node_to_cell.assign(static_cast<size_t>(t.instance.num_nodes), -1);
  for (int cell = 0; cell < static_cast<int>(c.old_to_new.size()); ++cell)
    if (c.old_to_new[static_cast<size_t>(cell)] >= 0)
      t.node_to_cell[static_cast<size_t>(c.old_to_new[static_cast<size_t>(cell)])] = cell;
  return t;
}

}  // namespace posqbf
