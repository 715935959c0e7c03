#include "posqbf/encode_lifted.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "posqbf/encode_explicit.hpp"
#include "posqbf/evaluate.hpp"
#include "posqbf/oracle.hpp"
#include "posqbf/preprocess.hpp"
#include "posqbf/qbf_io.hpp"

using namespace posqbf;

namespace {

const EvalOptions kEval{.var_limit = 100000, .use_memo = true};

GeneralizedHexInstance make_ghex(int n, std::vector<std::pair<int, int>> edges,
                                 std::vector<int> s, std::vector<int> e) {
  GeneralizedHexInstance g;
  g.num_nodes = n;
  g.edges = std::move(edges);
  g.border_s = std::move(s);
  g.border_e = std::move(e);
  g.canonicalize();
  return g;
}

GeneralizedHexInstance random_ghex(std::mt19937& rng, int min_nodes, int max_nodes) {
  std::uniform_int_distribution<int> nd(min_nodes, max_nodes);
  const int n = nd(rng);
  GeneralizedHexInstance g;
  g.num_nodes = n;
  std::uniform_int_distribution<int> vd(0, n - 1);
  std::uniform_int_distribution<int> md(1, 2 * n);
  for (int i = md(rng); i > 0; --i) {
    int u = vd(rng), v = vd(rng);
    if (u != v) g.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::uniform_int_distribution<int> coin(0, 3);
  for (int v = 0; v < n; ++v) {
    if (coin(rng) == 0) g.border_s.push_back(v);
    if (coin(rng) == 0) g.border_e.push_back(v);
  }
  if (g.border_s.empty()) g.border_s.push_back(vd(rng));
  if (g.border_e.empty()) g.border_e.push_back(vd(rng));
  g.canonicalize();
  return g;
}

bool truth(const LiftedEncoding& enc) { return evaluate(tseitin(enc.circuit), kEval); }

}  // namespace

TEST_SUITE("encode_lifted") {

TEST_CASE("gate factory folds constants and cones") {
  CircuitBuilder cb(4);
  const Lit T = CircuitBuilder::lit_true, F = CircuitBuilder::lit_false;
  CHECK(-T == F);
  CHECK(cb.band({}) == T);
  CHECK(cb.bor({}) == F);
  CHECK(cb.band({T, 2}) == 2);
  CHECK(cb.band({F, 2}) == F);
  CHECK(cb.bor({T, 2}) == T);
  CHECK(cb.bor({2, -2}) == T);
  CHECK(cb.band({3, -3}) == F);
  CHECK(cb.band({2, 2}) == 2);
  CHECK(cb.band({1, 2}) == cb.band({2, 1, 1}));  // consing after sorting
  CHECK(cb.band({1, 2}) != cb.bor({1, 2}));
  CHECK(cb.eq({1, 2}, {1, 2}) == T);
  CHECK(cb.implies(F, 3) == T);
}

TEST_CASE("value selection and comparison gadgets") {
  // every width-3 comparison against every constant, by exhaustive expansion
  for (int c = 0; c <= 8; ++c) {
    for (int v = 0; v < 8; ++v) {
      CAPTURE(c);
      CAPTURE(v);
      CircuitBuilder cb(3);
      const std::vector<Var> x{1, 2, 3};
      const Lit probe = cb.band({cb.bin(x, v), cb.lt_const(x, c)});
      QbfCircuit circ = cb.finish({{Quant::Exists, {1, 2, 3}}}, probe);
      CHECK(evaluate_circuit(circ) == (v < c));
    }
  }
  CircuitBuilder cb(4);
  CHECK_THROWS_AS(cb.bin({1, 2}, 4), QbfError);
  CHECK_THROWS_AS(cb.eq({1, 2}, {3}), QbfError);
}

TEST_CASE("one-position games") {
  GameInstance g;
  g.num_positions = 1;
  g.win_sets = {{0}};
  CHECK(truth(encode_la(g, 1)) == true);
  CHECK(truth(encode_sa(g, 1)) == true);
  g.win_sets = {};
  CHECK(truth(encode_la(g, 1)) == false);
  CHECK(truth(encode_sa(g, 1)) == false);

  auto loop = make_ghex(1, {{0, 0}}, {0}, {0});
  CHECK(truth(encode_ln(loop, 1)) == true);
  CHECK(truth(encode_sn(loop, 1)) == true);
  CHECK(encode_ln(loop, 1).warnings.empty());
}

TEST_CASE("prefix block shapes") {
  GameInstance g;
  g.num_positions = 4;
  g.win_sets = {{0, 1}};
  auto ghex = make_ghex(4, {{0, 1}, {1, 2}, {2, 3}, {3, 3}}, {0}, {3});
  for (int d : {1, 3}) {
    CHECK(static_cast<int>(encode_la(g, d).circuit.prefix.size()) == d + 2);
    CHECK(static_cast<int>(encode_ln(ghex, d).circuit.prefix.size()) == d + 2);
    CHECK(static_cast<int>(encode_sa(g, d).circuit.prefix.size()) == d);
    CHECK(static_cast<int>(encode_sn(ghex, d).circuit.prefix.size()) == d);
  }
  auto la = encode_la(g, 3);
  CHECK(la.circuit.prefix[0].q == Quant::Exists);
  CHECK(la.circuit.prefix[1].q == Quant::Forall);
  CHECK(la.circuit.prefix[2].q == Quant::Exists);   // last move + witness
  CHECK(la.circuit.prefix[3].q == Quant::Forall);   // challenge
  CHECK(la.circuit.prefix[4].q == Quant::Exists);   // states
  CHECK(la.circuit.prefix[2].vars.size() == 2 + 2 * 2);
  auto ln = encode_ln(ghex, 3);
  CHECK(ln.circuit.prefix[4].vars.size() == 2 * 4 + 2);  // states + neighbor
}

TEST_CASE("maker moves must hit empty positions; breaker waste is harmless") {
  // two positions, maker needs both: one maker move is not enough, and at
  // depth 3 the board fills before the maker's second move lands
  GameInstance g;
  g.num_positions = 2;
  g.win_sets = {{0, 1}};
  for (auto* enc : {&encode_la, &encode_sa}) {
    CHECK(truth(enc(g, 1)) == false);
    CHECK(truth(enc(g, 3)) == false);
  }
  // forked goal on three positions: the maker wins even in the universal
  // branches where the breaker replays an occupied cell or moves off-board
  GameInstance fork;
  fork.num_positions = 3;
  fork.win_sets = {{0, 1}, {0, 2}};
  CHECK(solve_game(fork, 3).black_wins == true);
  for (auto* enc : {&encode_la, &encode_sa}) {
    CHECK(truth(enc(fork, 1)) == false);
    CHECK(truth(enc(fork, 3)) == true);
  }
}

TEST_CASE("oversize winning sets are skipped with a warning") {
  GameInstance g;
  g.num_positions = 4;
  g.win_sets = {{0, 1, 2}, {3}};
  for (auto* enc : {&encode_la, &encode_sa}) {
    auto e = enc(g, 3);  // budget 2: the triple cannot be completed
    CHECK(e.warnings.size() == 1);
    CHECK(truth(e) == solve_game(g, 3).black_wins);
  }
}

TEST_CASE("claimed boards are rejected") {
  GameInstance g;
  g.num_positions = 2;
  g.initial_black = {0};
  g.win_sets = {{0, 1}};
  CHECK_THROWS_AS(encode_la(g, 1), GameError);
  CHECK_THROWS_AS(encode_sa(g, 1), GameError);
}

TEST_CASE("missing self-loops warn") {
  auto open = make_ghex(2, {{0, 1}}, {0}, {1});
  CHECK(encode_ln(open, 3).warnings.size() == 1);
  CHECK(encode_sn(open, 3).warnings.size() == 1);
  CHECK(encode_ln(stutter_closure(open), 3).warnings.empty());
}

TEST_CASE("stutter closure makes short connections representable") {
  // Two routes into the target, so the breaker cannot cut both.  The winning
  // connection has two nodes but the depth-5 witness has three slots: without
  // self-loops the witness cannot idle on the target, so the raw graph
  // under-approximates; the stuttered graph restores the verdict.  Five
  // positions keep the board from filling up before the last maker move.
  auto g = make_ghex(5, {{0, 2}, {1, 2}}, {0, 1}, {2});
  CHECK(solve_ghex(g, {}, {}, 5).black_wins == true);
  CHECK(truth(encode_ln(g, 5)) == false);
  CHECK(truth(encode_sn(g, 5)) == false);
  CHECK(truth(encode_ln(stutter_closure(g), 5)) == true);
  CHECK(truth(encode_sn(stutter_closure(g), 5)) == true);
}

TEST_CASE("dead-end nodes do not poison the lifted connection goal") {
  // Node 3 is isolated; the two-slot witness fits the two-node connection
  // exactly, and the maker claims the target first, then whichever source
  // the breaker left open.
  auto g = make_ghex(4, {{0, 2}, {1, 2}}, {0, 1}, {2});
  CHECK(solve_ghex(g, {}, {}, 3).black_wins == true);
  CHECK(truth(encode_ln(g, 3)) == true);
  CHECK(truth(encode_sn(g, 3)) == true);
}

TEST_CASE("lifted verdicts match the oracle and the clause encodings") {
  std::mt19937 rng(907);
  int disagreements = 0;
  for (int round = 0; round < 30; ++round) {
    const int d = 2 * (round % 3) + 1;
    auto g = random_ghex(rng, std::max(2, d), 6);
    CAPTURE(round);
    const bool expect = solve_ghex(g, {}, {}, d).black_wins;
    const auto game = game_from_ghex(g, (d + 1) / 2);
    const auto closed = stutter_closure(g);
    if (truth(encode_la(game, d)) != expect) ++disagreements;
    if (truth(encode_sa(game, d)) != expect) ++disagreements;
    if (truth(encode_ln(closed, d)) != expect) ++disagreements;
    if (truth(encode_sn(closed, d)) != expect) ++disagreements;
    if (evaluate(encode_ea(game, d).cnf, kEval) != expect) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("depth clamp keeps small boards encodable") {
  // more moves than positions: encode at the clamped depth and check the
  // oracle agrees across the clamp, on one losing and one winning instance
  auto lose = make_ghex(3, {{0, 2}, {2, 1}, {1, 1}}, {0}, {1});
  auto win = make_ghex(3, {{0, 1}, {1, 2}}, {0, 2}, {1});
  for (const auto& g : {lose, win}) {
    const int d = 7;
    const int d_eff = std::min(d, 2 * ((g.num_nodes + 1) / 2) - 1);
    CHECK(d_eff == 3);
    CHECK(solve_ghex(g, {}, {}, d).black_wins == solve_ghex(g, {}, {}, d_eff).black_wins);
    const bool expect = solve_ghex(g, {}, {}, d_eff).black_wins;
    CHECK(truth(encode_ln(stutter_closure(g), d_eff)) == expect);
    CHECK(truth(encode_sn(stutter_closure(g), d_eff)) == expect);
    CHECK(truth(encode_la(game_from_ghex(g, (d_eff + 1) / 2), d_eff)) == expect);
    CHECK(truth(encode_sa(game_from_ghex(g, (d_eff + 1) / 2), d_eff)) == expect);
  }
  CHECK(solve_ghex(win, {}, {}, 3).black_wins == true);
}

TEST_CASE("deterministic qcir bytes") {
  auto g = make_ghex(3, {{0, 1}, {1, 2}, {2, 2}}, {0}, {2});
  const std::string once = qcir_to_string(encode_ln(g, 3).circuit);
  CHECK(once == qcir_to_string(encode_ln(g, 3).circuit));
  CHECK(once.find("forall") != std::string::npos);
  std::istringstream in(once);
  CHECK(read_qcir(in) == encode_ln(g, 3).circuit);
}

}  // TEST_SUITE
