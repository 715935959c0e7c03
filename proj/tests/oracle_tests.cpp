#include <algorithm>
#include <random>

#include "doctest.h"
#include "posqbf/hex.hpp"
#include "posqbf/oracle.hpp"

using namespace posqbf;

namespace {

// Independent reference: full minimax over complete plays, deciding the
// winner only at the leaves via play_winner.
bool ref_black_wins(const GameInstance& game, std::vector<int>& moves, int depth,
                    std::vector<char>& taken) {
  bool any_open = false;
  if (static_cast<int>(moves.size()) < depth)
    for (int v = 0; v < game.num_positions; ++v) any_open |= !taken[v];
  if (static_cast<int>(moves.size()) == depth || !any_open)
    return play_winner(game, Play{moves}) == Winner::Black;
  bool black_to_move = moves.size() % 2 == 0;
  for (int v = 0; v < game.num_positions; ++v) {
    if (taken[v]) continue;
    taken[v] = 1;
    moves.push_back(v);
    bool r = ref_black_wins(game, moves, depth, taken);
    moves.pop_back();
    taken[v] = 0;
    if (r == black_to_move) return r;
  }
  return !black_to_move;
}

bool ref_black_wins(const GameInstance& game, int depth) {
  std::vector<int> moves;
  std::vector<char> taken(static_cast<size_t>(game.num_positions), 0);
  for (int v : game.initial_black) taken[v] = 1;
  for (int v : game.initial_white) taken[v] = 1;
  return ref_black_wins(game, moves, depth, taken);
}

GameInstance random_game(std::mt19937& rng) {
  GameInstance g;
  g.num_positions = static_cast<int>(rng() % 5 + 3);
  int sets = static_cast<int>(rng() % 3 + 1);
  for (int i = 0; i < sets; ++i) {
    std::vector<int> ws;
    for (int v = 0; v < g.num_positions; ++v)
      if (rng() % 3 == 0) ws.push_back(v);
    if (ws.size() > 3) ws.resize(3);
    g.win_sets.push_back(ws);
  }
  for (int v = 0; v < g.num_positions; ++v) {
    unsigned r = rng() % 8;
    if (r == 0) g.initial_black.push_back(v);
    if (r == 1) g.initial_white.push_back(v);
  }
  g.canonicalize();
  return g;
}

GeneralizedHexInstance random_ghex(std::mt19937& rng, int max_nodes) {
  GeneralizedHexInstance g;
  g.num_nodes = static_cast<int>(rng() % max_nodes + 2);
  for (int u = 0; u < g.num_nodes; ++u)
    for (int v = u + 1; v < g.num_nodes; ++v)
      if (rng() % 3 == 0) g.edges.push_back({u, v});
  for (int v = 0; v < g.num_nodes; ++v) {
    if (rng() % 3 == 0) g.border_s.push_back(v);
    if (rng() % 3 == 0) g.border_e.push_back(v);
  }
  g.canonicalize();
  return g;
}

HexBoard random_board(std::mt19937& rng) {
  HexBoard b(static_cast<int>(rng() % 2 + 2));
  int stones = static_cast<int>(rng() % 4);
  for (int i = 0; i < stones; ++i) {
    int id = static_cast<int>(rng() % b.num_cells());
    if (b.at(id) == Stone::Empty)
      b.cells[id] = rng() % 2 ? Stone::Black : Stone::White;
  }
  return b;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("solve_game matches exhaustive minimax") {
  std::mt19937 rng(31);
  for (int round = 0; round < 150; ++round) {
    GameInstance g = random_game(rng);
    int depth = static_cast<int>(rng() % 6);  // includes even depths
    Verdict v = solve_game(g, depth);
    CHECK(v.black_wins == ref_black_wins(g, depth));
  }
}

TEST_CASE("solve_game hand cases and variations") {
  GameInstance g;
  g.num_positions = 3;
  g.win_sets = {{0, 1}, {1, 2}};
  // Black takes 1 then either side: wins at depth 3.
  Verdict v3 = solve_game(g, 3);
  CHECK(v3.black_wins);
  CHECK(!solve_game(g, 1).black_wins);
  // The variation is a valid play ending in a black win.
  CHECK(play_winner(g, Play{v3.variation}) == Winner::Black);
  CHECK(v3.variation.size() == 3);
  CHECK(v3.variation[0] == 1);  // lexicographically least winning move

  // Already-won position: empty variation.
  GameInstance w;
  w.num_positions = 2;
  w.initial_black = {0};
  w.win_sets = {{0}};
  Verdict vw = solve_game(w, 1);
  CHECK(vw.black_wins);
  CHECK(vw.variation.empty());

  // Board fills before depth runs out.
  GameInstance f;
  f.num_positions = 2;
  f.win_sets = {{0, 1}};
  CHECK(!solve_game(f, 5).black_wins);

  // Losing variation is still a complete legal play.
  Verdict vf = solve_game(f, 5);
  CHECK(vf.variation.size() == 2);
  CHECK(play_winner(f, Play{vf.variation}) == Winner::White);
}

TEST_CASE("solve_ghex agrees with solve_game over min_connecting_sets") {
  std::mt19937 rng(47);
  for (int round = 0; round < 120; ++round) {
    GeneralizedHexInstance g = random_ghex(rng, 6);
    int depth = 2 * static_cast<int>(rng() % 3) + 1;  // 1, 3, 5
    GameInstance game = game_from_ghex(g, (depth + 1) / 2);
    Verdict direct = solve_ghex(g, {}, {}, depth);
    Verdict via_sets = solve_game(game, depth);
    CHECK(direct.black_wins == via_sets.black_wins);
  }
}

TEST_CASE("solve_ghex respects claims") {
  GeneralizedHexInstance path;
  path.num_nodes = 3;
  path.edges = {{0, 1}, {1, 2}};
  path.border_s = {0};
  path.border_e = {2};
  // Short pre-owns the middle, but cut still blocks one endpoint.
  CHECK(!solve_ghex(path, {1}, {}, 3).black_wins);
  // With an endpoint pre-owned too, one move finishes the path.
  CHECK(solve_ghex(path, {0, 1}, {}, 1).black_wins);
  CHECK(!solve_ghex(path, {}, {}, 3).black_wins);  // cut takes node 1 or an end
  // Pre-connected: instant win, any depth.
  CHECK(solve_ghex(path, {0, 1, 2}, {}, 1).black_wins);
  CHECK(solve_ghex(path, {0, 1, 2}, {}, 0).black_wins);
  // Cut pre-owns the middle: hopeless.
  CHECK(!solve_ghex(path, {}, {1}, 5).black_wins);
}

TEST_CASE("solve_ghex_transversal hand cases") {
  GeneralizedHexInstance path;
  path.num_nodes = 3;
  path.edges = {{0, 1}, {1, 2}};
  path.border_s = {0};
  path.border_e = {2};
  // Cut moves first and shoots the middle node.
  CHECK(solve_ghex_transversal(path, {}, {}, 1).black_wins);
  // Short protected the middle; cutting an endpoint still disconnects.
  CHECK(solve_ghex_transversal(path, {1}, {}, 1).black_wins);
  // Already disconnected: trivial win.
  GeneralizedHexInstance disc;
  disc.num_nodes = 2;
  disc.border_s = {0};
  disc.border_e = {1};
  CHECK(solve_ghex_transversal(disc, {}, {}, 0).black_wins);
  // Two disjoint paths, one move: cannot cut both.
  GeneralizedHexInstance twin;
  twin.num_nodes = 4;
  twin.edges = {{0, 1}, {2, 3}};
  twin.border_s = {0, 2};
  twin.border_e = {1, 3};
  CHECK(!solve_ghex_transversal(twin, {}, {}, 1).black_wins);
  CHECK(solve_ghex_transversal(twin, {}, {}, 3).black_wins);
}

TEST_CASE("hex board duality: black view and white transversal view agree") {
  std::mt19937 rng(93);
  int rounds = 0;
  for (int round = 0; round < 60; ++round) {
    HexBoard b = random_board(rng);
    int depth = 2 * static_cast<int>(rng() % 3) + 1;
    auto bv = board_to_ghex(b, Side::Black);
    auto wv = board_to_ghex(b, Side::White);
    Verdict direct = solve_ghex(bv.graph, bv.short_claimed, bv.cut_claimed, depth);
    Verdict dual = solve_ghex_transversal(wv.graph, wv.short_claimed, wv.cut_claimed, depth);
    CHECK(direct.black_wins == dual.black_wins);
    CHECK(direct.variation == dual.variation);
    ++rounds;
  }
  CHECK(rounds == 60);
}

TEST_CASE("hex board verdicts on tiny boards") {
  HexBoard one(1);
  auto v1 = board_to_ghex(one, Side::Black);
  CHECK(solve_ghex(v1.graph, v1.short_claimed, v1.cut_claimed, 1).black_wins);
  HexBoard two(2);
  auto v2 = board_to_ghex(two, Side::Black);
  CHECK(!solve_ghex(v2.graph, v2.short_claimed, v2.cut_claimed, 1).black_wins);
  CHECK(solve_ghex(v2.graph, v2.short_claimed, v2.cut_claimed, 3).black_wins);
}

TEST_CASE("oracle refuses oversized positions") {
  HexBoard b(5);  // 25 open cells > default 20
  auto v = board_to_ghex(b, Side::Black);
  CHECK_THROWS_AS(solve_ghex(v.graph, v.short_claimed, v.cut_claimed, 3), OracleLimitError);
  // The raise-able limit is hard-capped at 30 open cells.
  HexBoard big(6);
  auto vb = board_to_ghex(big, Side::Black);
  CHECK_THROWS_AS(solve_ghex(vb.graph, vb.short_claimed, vb.cut_claimed, 3, {.open_limit = 40}),
                  OracleLimitError);
  GameInstance g;
  g.num_positions = 22;
  g.win_sets = {{0}};
  CHECK(solve_game(g, 1, {.open_limit = 25}).black_wins);
  CHECK_THROWS_AS(solve_game(g, 1), OracleLimitError);
}

}  // TEST_SUITE
