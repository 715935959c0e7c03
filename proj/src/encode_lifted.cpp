#include "posqbf/encode_lifted.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

namespace posqbf {

namespace {

int bits_for(int n) {
  int b = 0;
  while ((1 << b) < n) ++b;
  return b;
}

void check_depth(int n, int depth) {
  if (n < 1) throw QbfError("encoding requires at least one position");
  if (depth < 1 || depth % 2 == 0)
    throw QbfError("encoding depth must be a positive odd number, got " + std::to_string(depth));
}

void check_empty_start(const GameInstance& game) {
  if (!game.initial_black.empty() || !game.initial_white.empty())
    throw GameError(
        "move-symbolic encodings require an empty starting board; "
        "fold claimed positions away first");
}

struct Alloc {
  int next = 1;
  std::vector<Var> take(int k) {
    std::vector<Var> v(static_cast<size_t>(k));
    for (auto& x : v) x = next++;
    return v;
  }
};

// moves and witness slots, with the witness merged into the final move block
struct MoveSkeleton {
  Alloc alloc;
  std::vector<std::vector<Var>> move;     // [t-1]
  std::vector<std::vector<Var>> witness;  // [i]
  std::vector<QuantBlock> blocks;
};

MoveSkeleton move_skeleton(int n, int depth) {
  MoveSkeleton s;
  const int bits = bits_for(n);
  for (int t = 1; t <= depth; ++t) {
    s.move.push_back(s.alloc.take(bits));
    s.blocks.push_back({t % 2 == 1 ? Quant::Exists : Quant::Forall, s.move.back()});
  }
  for (int i = 0; i <= (depth - 1) / 2; ++i) {
    s.witness.push_back(s.alloc.take(bits));
    auto& last = s.blocks.back().vars;
    last.insert(last.end(), s.witness.back().begin(), s.witness.back().end());
  }
  return s;
}

std::string oversize_warning(size_t set_size, int budget) {
  return "winning set of size " + std::to_string(set_size) +
         " cannot be completed in " + std::to_string(budget) + " maker moves";
}

// disjunction over the winning sets of "the witness spells out this set";
// oversize sets are skipped with a warning
Lit explicit_goal(CircuitBuilder& cb, const MoveSkeleton& s, const GameInstance& game,
                  std::vector<std::string>& warnings) {
  const int slots = static_cast<int>(s.witness.size());
  std::vector<Lit> terms;
  for (const auto& h : game.win_sets) {
    if (static_cast<int>(h.size()) > slots) {
      warnings.push_back(oversize_warning(h.size(), slots));
      continue;
    }
    std::vector<Lit> cells;
    for (size_t i = 0; i < h.size(); ++i)
      cells.push_back(cb.bin(s.witness[i], h[i]));
    terms.push_back(cb.band(std::move(cells)));
  }
  return cb.bor(std::move(terms));
}

std::vector<std::vector<int>> adjacency(const GeneralizedHexInstance& g) {
  std::vector<std::set<int>> nb(static_cast<size_t>(g.num_nodes));
  for (auto [u, v] : g.edges) {
    nb[static_cast<size_t>(u)].insert(v);
    nb[static_cast<size_t>(v)].insert(u);
  }
  std::vector<std::vector<int>> out;
  for (auto& s : nb) out.emplace_back(s.begin(), s.end());
  return out;
}

// border constraints on the first and last witness slot
Lit border_goal(CircuitBuilder& cb, const MoveSkeleton& s, const GeneralizedHexInstance& g,
                std::vector<Lit>& top) {
  std::vector<Lit> src, trg;
  for (int v : g.border_s) src.push_back(cb.bin(s.witness.front(), v));
  for (int v : g.border_e) trg.push_back(cb.bin(s.witness.back(), v));
  top.push_back(cb.bor(std::move(src)));
  return cb.bor(std::move(trg));
}

void warn_missing_self_loops(const GeneralizedHexInstance& g,
                             const std::vector<std::vector<int>>& nb,
                             std::vector<std::string>& warnings) {
  for (int v : g.border_e) {
    const auto& row = nb[static_cast<size_t>(v)];
    if (!std::binary_search(row.begin(), row.end(), v))
      warnings.push_back("target node " + std::to_string(v) +
                         " has no self-loop; witness paths shorter than the "
                         "budget cannot idle on it");
  }
}

// the symbolic per-step state: two bits per step tracked for the single
// universally chosen challenge position
struct StateParts {
  std::vector<Var> challenge;
  std::vector<Var> occupied, white;  // [t-1], t = 1..d+1
};

StateParts state_vars(MoveSkeleton& s, int n, int depth) {
  StateParts st;
  st.challenge = s.alloc.take(bits_for(n));
  s.blocks.push_back({Quant::Forall, st.challenge});
  std::vector<Var> inner;
  for (int t = 1; t <= depth + 1; ++t) {
    st.occupied.push_back(s.alloc.next);
    st.white.push_back(s.alloc.next + 1);
    auto pair = s.alloc.take(2);
    inner.insert(inner.end(), pair.begin(), pair.end());
  }
  s.blocks.push_back({Quant::Exists, inner});
  return st;
}

// transition and bound constraints shared by the stateful encodings
void state_conjuncts(CircuitBuilder& cb, const MoveSkeleton& s, const StateParts& st,
                     int n, int depth, std::vector<Lit>& top) {
  top.push_back(-static_cast<Lit>(st.occupied[0]));
  const bool need_bound = (1 << bits_for(n)) != n;
  for (int t = 1; t <= depth; ++t) {
    const Lit occ = static_cast<Lit>(st.occupied[t - 1]);
    const Lit occ2 = static_cast<Lit>(st.occupied[t]);
    const Lit wht2 = static_cast<Lit>(st.white[t]);
    const Lit hit = cb.eq(st.challenge, s.move[static_cast<size_t>(t - 1)]);
    const Lit keep = cb.band({cb.eq({st.white[t - 1]}, {st.white[t]}),
                              cb.eq({st.occupied[t - 1]}, {st.occupied[t]})});
    if (t % 2 == 1) {  // maker claims an empty position in the matching branch
      top.push_back(cb.implies(hit, cb.band({-occ, -wht2, occ2})));
      top.push_back(cb.bor({hit, keep}));
      if (need_bound) top.push_back(cb.lt_const(s.move[static_cast<size_t>(t - 1)], n));
    } else {  // breaker claims only an empty position; otherwise a wasted turn
      const Lit takes = cb.band({hit, -occ});
      top.push_back(cb.implies(takes, cb.band({wht2, occ2})));
      top.push_back(cb.bor({takes, keep}));
    }
  }
}

// the challenge position, if it is one of the witness slots, ends occupied
// and not by the breaker
void final_state_goal(CircuitBuilder& cb, const MoveSkeleton& s, const StateParts& st,
                      int depth, std::vector<Lit>& top) {
  std::vector<Lit> on_witness;
  for (const auto& w : s.witness) on_witness.push_back(cb.eq(st.challenge, w));
  top.push_back(cb.implies(cb.bor(std::move(on_witness)),
                           cb.band({-static_cast<Lit>(st.white[static_cast<size_t>(depth)]),
                                    static_cast<Lit>(st.occupied[static_cast<size_t>(depth)])})));
}

// distinctness of maker moves from all earlier moves, plus the move bound
void stateless_conjuncts(CircuitBuilder& cb, const MoveSkeleton& s, int n, int depth,
                         std::vector<Lit>& top) {
  const bool need_bound = (1 << bits_for(n)) != n;
  for (int t = 1; t <= depth; t += 2) {
    for (int i = 1; i < t; ++i)
      top.push_back(-cb.eq(s.move[static_cast<size_t>(t - 1)], s.move[static_cast<size_t>(i - 1)]));
    if (need_bound) top.push_back(cb.lt_const(s.move[static_cast<size_t>(t - 1)], n));
  }
}

// every witness slot repeats one of the maker's moves
void witness_from_moves(CircuitBuilder& cb, const MoveSkeleton& s, int depth,
                        std::vector<Lit>& top) {
  for (const auto& w : s.witness) {
    std::vector<Lit> any;
    for (int t = 1; t <= depth; t += 2)
      any.push_back(cb.eq(w, s.move[static_cast<size_t>(t - 1)]));
    top.push_back(cb.bor(std::move(any)));
  }
}

LiftedEncoding finish(CircuitBuilder& cb, MoveSkeleton& s, std::vector<Lit> top,
                      LiftedEncoding enc) {
  enc.circuit = cb.finish(std::move(s.blocks), cb.band(std::move(top)));
  enc.move = std::move(s.move);
  enc.witness = std::move(s.witness);
  return enc;
}

}  // namespace

Lit CircuitBuilder::gate(GateKind kind, std::vector<Lit> inputs) {
  const Lit absorbing = kind == GateKind::And ? lit_false : lit_true;
  std::vector<Lit> keep;
  for (Lit l : inputs) {
    if (l == -absorbing) continue;
    if (l == absorbing) return absorbing;
    keep.push_back(l);
  }
  std::sort(keep.begin(), keep.end(), [](Lit a, Lit b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
  });
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (size_t i = 0; i + 1 < keep.size(); ++i)
    if (keep[i] == -keep[i + 1]) return absorbing;
  if (keep.empty()) return -absorbing;
  if (keep.size() == 1) return keep.front();
  const auto key = std::make_pair(kind, keep);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const Lit id = num_vars_ + static_cast<int>(gates_.size()) + 1;
  gates_.push_back({id, kind, std::move(keep)});
  cache_.emplace(key, id);
  return id;
}

Lit CircuitBuilder::bin(const std::vector<Var>& x, int v) {
  if (v < 0 || (v >> x.size()) != 0)
    throw QbfError("value " + std::to_string(v) + " does not fit in " +
                   std::to_string(x.size()) + " bits");
  std::vector<Lit> ins;
  for (size_t j = 0; j < x.size(); ++j)
    ins.push_back((v >> j) & 1 ? static_cast<Lit>(x[j]) : -static_cast<Lit>(x[j]));
  return band(std::move(ins));
}

Lit CircuitBuilder::eq(const std::vector<Var>& x, const std::vector<Var>& y) {
  if (x.size() != y.size()) throw QbfError("equality of bit vectors of different widths");
  std::vector<Lit> bits;
  for (size_t j = 0; j < x.size(); ++j) {
    const Lit a = static_cast<Lit>(x[j]), b = static_cast<Lit>(y[j]);
    bits.push_back(bor({band({a, b}), band({-a, -b})}));
  }
  return band(std::move(bits));
}

Lit CircuitBuilder::lt_const(const std::vector<Var>& x, int c) {
  if (c <= 0) return lit_false;
  if ((static_cast<long long>(c) >> x.size()) != 0) return lit_true;
  std::vector<Lit> terms;
  for (int j = static_cast<int>(x.size()) - 1; j >= 0; --j) {
    if (((c >> j) & 1) == 0) continue;
    std::vector<Lit> t{-static_cast<Lit>(x[static_cast<size_t>(j)])};
    for (size_t k = static_cast<size_t>(j) + 1; k < x.size(); ++k)
      t.push_back((c >> k) & 1 ? static_cast<Lit>(x[k]) : -static_cast<Lit>(x[k]));
    terms.push_back(band(std::move(t)));
  }
  return bor(std::move(terms));
}

QbfCircuit CircuitBuilder::finish(std::vector<QuantBlock> prefix, Lit output) {
  QbfCircuit c;
  c.num_vars = num_vars_;
  c.gates = std::move(gates_);
  if (output == lit_true || output == lit_false) {
    const Lit id = c.num_vars + static_cast<int>(c.gates.size()) + 1;
    c.gates.push_back({id, output == lit_true ? GateKind::And : GateKind::Or, {}});
    output = id;
  }
  c.output = output;
  normalize_prefix(prefix);
  c.prefix = std::move(prefix);
  check(c);
  return c;
}

LiftedEncoding encode_la(const GameInstance& game, int depth) {
  check_depth(game.num_positions, depth);
  check_empty_start(game);
  auto s = move_skeleton(game.num_positions, depth);
  auto st = state_vars(s, game.num_positions, depth);
  CircuitBuilder cb(s.alloc.next - 1);
  LiftedEncoding enc;
  std::vector<Lit> top;
  top.push_back(explicit_goal(cb, s, game, enc.warnings));
  final_state_goal(cb, s, st, depth, top);
  state_conjuncts(cb, s, st, game.num_positions, depth, top);
  enc.challenge = st.challenge;
  enc.occupied = std::move(st.occupied);
  enc.white = std::move(st.white);
  return finish(cb, s, std::move(top), std::move(enc));
}

LiftedEncoding encode_sa(const GameInstance& game, int depth) {
  check_depth(game.num_positions, depth);
  check_empty_start(game);
  auto s = move_skeleton(game.num_positions, depth);
  CircuitBuilder cb(s.alloc.next - 1);
  LiftedEncoding enc;
  std::vector<Lit> top;
  top.push_back(explicit_goal(cb, s, game, enc.warnings));
  witness_from_moves(cb, s, depth, top);
  stateless_conjuncts(cb, s, game.num_positions, depth, top);
  return finish(cb, s, std::move(top), std::move(enc));
}

LiftedEncoding encode_ln(const GeneralizedHexInstance& g, int depth) {
  check_depth(g.num_nodes, depth);
  auto s = move_skeleton(g.num_nodes, depth);
  auto st = state_vars(s, g.num_nodes, depth);
  std::vector<Var> nu;
  {  // the neighbor vector joins the innermost existential block
    Alloc& a = s.alloc;
    nu = a.take(bits_for(g.num_nodes));
    s.blocks.back().vars.insert(s.blocks.back().vars.end(), nu.begin(), nu.end());
  }
  CircuitBuilder cb(s.alloc.next - 1);
  LiftedEncoding enc;
  const auto nb = adjacency(g);
  warn_missing_self_loops(g, nb, enc.warnings);
  std::vector<Lit> top;
  top.push_back(border_goal(cb, s, g, top));
  for (int v = 0; v < g.num_nodes; ++v) {
    const Lit here = cb.bin(st.challenge, v);
    const auto& row = nb[static_cast<size_t>(v)];
    if (row.empty()) {
      // a dead-end node can never sit on the witness; without this, the
      // neighbor constraint below would falsify the whole branch even when
      // the witness avoids the node
      std::vector<Lit> off;
      for (const auto& w : s.witness) off.push_back(-cb.eq(st.challenge, w));
      top.push_back(cb.implies(here, cb.band(std::move(off))));
      continue;
    }
    std::vector<Lit> next;
    for (int w : row) next.push_back(cb.bin(nu, w));
    top.push_back(cb.implies(here, cb.bor(std::move(next))));
  }
  for (size_t i = 0; i + 1 < s.witness.size(); ++i)
    top.push_back(cb.implies(cb.eq(s.witness[i], st.challenge), cb.eq(s.witness[i + 1], nu)));
  final_state_goal(cb, s, st, depth, top);
  state_conjuncts(cb, s, st, g.num_nodes, depth, top);
  enc.challenge = st.challenge;
  enc.neighbor = std::move(nu);
  enc.occupied = std::move(st.occupied);
  enc.white = std::move(st.white);
  return finish(cb, s, std::move(top), std::move(enc));
}

LiftedEncoding encode_sn(const GeneralizedHexInstance& g, int depth) {
  check_depth(g.num_nodes, depth);
  auto s = move_skeleton(g.num_nodes, depth);
  CircuitBuilder cb(s.alloc.next - 1);
  LiftedEncoding enc;
  const auto nb = adjacency(g);
  warn_missing_self_loops(g, nb, enc.warnings);
  std::vector<Lit> top;
  top.push_back(border_goal(cb, s, g, top));
  for (size_t i = 0; i + 1 < s.witness.size(); ++i)
    for (int v = 0; v < g.num_nodes; ++v) {
      std::vector<Lit> next;
      for (int w : nb[static_cast<size_t>(v)]) next.push_back(cb.bin(s.witness[i + 1], w));
      top.push_back(cb.implies(cb.bin(s.witness[i], v), cb.bor(std::move(next))));
    }
  witness_from_moves(cb, s, depth, top);
  stateless_conjuncts(cb, s, g.num_nodes, depth, top);
  return finish(cb, s, std::move(top), std::move(enc));
}

}  // namespace posqbf
