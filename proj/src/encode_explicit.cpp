#include "posqbf/encode_explicit.hpp"

#include <algorithm>

namespace posqbf {

namespace {

int bits_for(int n) {
  int b = 0;
  while ((1 << b) < n) ++b;
  return b;
}

// Explicit board core shared by all three encoders: prefix layout, state
// variables at odd steps, and the move/claim bookkeeping clauses.
struct BoardCore {
  ExplicitVarMap vars;
  std::vector<QuantBlock> prefix;
  std::vector<std::vector<Lit>> clauses;
  ClauseTally tally;
  int num_vars = 0;
  int n = 0, d = 0;

  Var mv(int t, int j) const { return vars.move[t - 1][j]; }           // t = 1..d
  Var blackv(int t, int v) const { return vars.black[(t - 1) / 2][v]; }  // odd t
  Var whitev(int t, int v) const { return vars.white[(t - 1) / 2][v]; }

  enum class Family { Unit, Binary, Ternary, Longer };

  // Bucketing is by clause family, not emitted width: the set-by-move and
  // disjunction families stay in "longer" even when few bits or few branches
  // make them short. Anything emitted at width 1 counts as a unit.
  void add(std::vector<Lit> cl, Family fam) {
    if (cl.size() == 1) fam = Family::Unit;
    switch (fam) {
      case Family::Unit: ++tally.units; break;
      case Family::Binary: ++tally.binary; break;
      case Family::Ternary: ++tally.ternary; break;
      case Family::Longer: ++tally.longer; break;
    }
    clauses.push_back(std::move(cl));
  }
};

BoardCore encode_board(const GameInstance& game, int d) {
  if (d < 1 || d % 2 == 0) throw QbfError("move count must be odd and positive");
  if (game.num_positions < 1) throw QbfError("need at least one position");

  BoardCore bc;
  bc.n = game.num_positions;
  bc.d = d;
  const int n = bc.n;
  const int B = bits_for(n);
  bc.vars.bits = B;

  std::vector<char> init_black(static_cast<size_t>(n), 0), init_white(static_cast<size_t>(n), 0);
  for (int v : game.initial_black) init_black[static_cast<size_t>(v)] = 1;
  for (int v : game.initial_white) init_white[static_cast<size_t>(v)] = 1;

  // prefix: maker move + state on odd steps, breaker move alone on even steps
  bc.vars.move.assign(static_cast<size_t>(d), {});
  bc.vars.black.assign(static_cast<size_t>((d + 1) / 2), {});
  bc.vars.white.assign(static_cast<size_t>((d + 1) / 2), {});
  for (int t = 1; t <= d; ++t) {
    QuantBlock blk;
    blk.q = t % 2 == 1 ? Quant::Exists : Quant::Forall;
    for (int j = 0; j < B; ++j) {
      const Var x = ++bc.num_vars;
      bc.vars.move[static_cast<size_t>(t - 1)].push_back(x);
      blk.vars.push_back(x);
    }
    if (t % 2 == 1) {
      auto& blacks = bc.vars.black[static_cast<size_t>((t - 1) / 2)];
      auto& whites = bc.vars.white[static_cast<size_t>((t - 1) / 2)];
      for (int v = 0; v < n; ++v) {
        const Var bv = ++bc.num_vars;
        const Var wv = ++bc.num_vars;
        blacks.push_back(bv);
        whites.push_back(wv);
        blk.vars.push_back(bv);
        blk.vars.push_back(wv);
      }
    }
    bc.prefix.push_back(std::move(blk));
  }

  // per vertex and odd step: white persists, the breaker's preceding move
  // paints white, white excludes black, and a mismatched maker move (or a
  // cell claimed before the game) rules out fresh black
  using F = BoardCore::Family;
  for (int t = 1; t <= d; t += 2) {
    for (int v = 0; v < n; ++v) {
      if (t >= 3) {
        bc.add({-static_cast<Lit>(bc.whitev(t - 2, v)), static_cast<Lit>(bc.whitev(t, v))},
               F::Binary);
      } else if (init_white[static_cast<size_t>(v)]) {
        bc.add({static_cast<Lit>(bc.whitev(t, v))}, F::Unit);
      }
      if (t >= 3) {
        std::vector<Lit> cl;
        for (int j = 0; j < B; ++j) {
          const Lit m = static_cast<Lit>(bc.mv(t - 1, j));
          cl.push_back((v >> j) & 1 ? -m : m);
        }
        cl.push_back(static_cast<Lit>(bc.blackv(t - 2, v)));
        cl.push_back(static_cast<Lit>(bc.whitev(t, v)));
        bc.add(std::move(cl), F::Longer);
      }
      bc.add({-static_cast<Lit>(bc.whitev(t, v)), -static_cast<Lit>(bc.blackv(t, v))},
             F::Binary);
      if (t == 1 && init_black[static_cast<size_t>(v)]) continue;  // black from the start
      for (int j = 0; j < B; ++j) {
        const Lit m = static_cast<Lit>(bc.mv(t, j));
        std::vector<Lit> cl{(v >> j) & 1 ? m : -m};
        if (t >= 3) cl.push_back(static_cast<Lit>(bc.blackv(t - 2, v)));
        cl.push_back(-static_cast<Lit>(bc.blackv(t, v)));
        bc.add(std::move(cl), t >= 3 ? F::Ternary : F::Binary);
      }
    }
  }
  return bc;
}

ExplicitEncoding finish(BoardCore&& bc) {
  ExplicitEncoding enc;
  enc.cnf.prefix = std::move(bc.prefix);
  normalize_prefix(enc.cnf.prefix);
  enc.cnf.num_vars = bc.num_vars;
  enc.cnf.clauses = std::move(bc.clauses);
  enc.vars = std::move(bc.vars);
  enc.tally = bc.tally;
  check(enc.cnf);
  return enc;
}

// appends fresh variables to the innermost existential block
Var fresh_goal_var(BoardCore& bc) {
  const Var x = ++bc.num_vars;
  bc.prefix.back().vars.push_back(x);
  return x;
}

}  // namespace

ExplicitEncoding encode_ea(const GameInstance& game, int d) {
  if (game.win_sets.empty()) {
    ExplicitEncoding enc;
    enc.cnf = trivial_false_cnf();
    enc.tally.units = 2;
    return enc;
  }
  BoardCore bc = encode_board(game, d);
  ExplicitEncoding pre;
  const int budget = (d + 1) / 2;
  for (const auto& ws : game.win_sets)
    if (static_cast<int>(ws.size()) > budget)
      pre.warnings.push_back("winning set of size " + std::to_string(ws.size()) +
                             " cannot be completed in " + std::to_string(budget) +
                             " maker moves");

  using F = BoardCore::Family;
  for (size_t k = 0; k < game.win_sets.size(); ++k)
    bc.vars.hedge.push_back(fresh_goal_var(bc));
  std::vector<Lit> big_or;
  for (Var h : bc.vars.hedge) big_or.push_back(static_cast<Lit>(h));
  bc.add(std::move(big_or), F::Longer);
  for (size_t k = 0; k < game.win_sets.size(); ++k)
    for (int v : game.win_sets[k])
      bc.add({-static_cast<Lit>(bc.vars.hedge[k]), static_cast<Lit>(bc.blackv(d, v))},
             F::Binary);

  ExplicitEncoding enc = finish(std::move(bc));
  enc.warnings = std::move(pre.warnings);
  return enc;
}

ExplicitEncoding encode_en(const GeneralizedHexInstance& g, int d) {
  GameInstance board;
  board.num_positions = g.num_nodes;
  BoardCore bc = encode_board(board, d);
  const int ell = (d - 1) / 2;
  const int n = g.num_nodes;

  bc.vars.path.assign(static_cast<size_t>(ell) + 1, {});
  for (int i = 0; i <= ell; ++i)
    for (int v = 0; v < n; ++v)
      bc.vars.path[static_cast<size_t>(i)].push_back(fresh_goal_var(bc));
  auto pathv = [&](int i, int v) { return bc.vars.path[static_cast<size_t>(i)][v]; };

  std::vector<char> in_e(static_cast<size_t>(n), 0);
  for (int v : g.border_e) in_e[static_cast<size_t>(v)] = 1;
  const auto adj = g.adjacency();

  using F = BoardCore::Family;
  for (int i = 0; i <= ell; ++i)
    for (int v = 0; v < n; ++v)
      bc.add({-static_cast<Lit>(pathv(i, v)), static_cast<Lit>(bc.blackv(d, v))}, F::Binary);
  std::vector<Lit> src;
  for (int v : g.border_s) src.push_back(static_cast<Lit>(pathv(0, v)));
  bc.add(std::move(src), F::Longer);
  for (int i = 0; i < ell; ++i)
    for (int v = 0; v < n; ++v) {
      if (in_e[static_cast<size_t>(v)]) continue;
      std::vector<Lit> cl{-static_cast<Lit>(pathv(i, v))};
      for (int w : adj[static_cast<size_t>(v)]) cl.push_back(static_cast<Lit>(pathv(i + 1, w)));
      bc.add(std::move(cl), F::Longer);
    }
  for (int v = 0; v < n; ++v)
    if (!in_e[static_cast<size_t>(v)]) bc.add({-static_cast<Lit>(pathv(ell, v))}, F::Unit);

  return finish(std::move(bc));
}

ExplicitEncoding encode_et(const GeneralizedHexInstance& g, int d) {
  GameInstance board;
  board.num_positions = g.num_nodes;
  BoardCore bc = encode_board(board, d);
  const int n = g.num_nodes;

  for (int v = 0; v < n; ++v) bc.vars.reach.push_back(fresh_goal_var(bc));
  auto reach = [&](int v) { return bc.vars.reach[static_cast<size_t>(v)]; };

  using F = BoardCore::Family;
  for (int v : g.border_s)
    bc.add({static_cast<Lit>(bc.blackv(d, v)), static_cast<Lit>(reach(v))}, F::Binary);
  for (auto [u, v] : g.edges) {
    if (u == v) continue;  // a self-loop never extends reachability
    bc.add({-static_cast<Lit>(reach(u)), static_cast<Lit>(bc.blackv(d, v)),
            static_cast<Lit>(reach(v))},
           F::Ternary);
    bc.add({-static_cast<Lit>(reach(v)), static_cast<Lit>(bc.blackv(d, u)),
            static_cast<Lit>(reach(u))},
           F::Ternary);
  }
  for (int v : g.border_e) bc.add({-static_cast<Lit>(reach(v))}, F::Unit);

  return finish(std::move(bc));
}

}  // namespace posqbf
