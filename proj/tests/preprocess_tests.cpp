#include "posqbf/preprocess.hpp"

#include <algorithm>
#include <random>

#include "doctest.h"
#include "posqbf/oracle.hpp"

using namespace posqbf;

namespace {

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

GeneralizedHexInstance random_ghex(std::mt19937& rng, int max_nodes) {
  std::uniform_int_distribution<int> nd(2, max_nodes);
  const int n = nd(rng);
  GeneralizedHexInstance g;
  g.num_nodes = n;
  std::uniform_int_distribution<int> vd(0, n - 1);
  std::uniform_int_distribution<int> md(1, 2 * n);
  const int m = md(rng);
  for (int i = 0; i < m; ++i) {
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

HexBoard random_board(std::mt19937& rng, int size, int max_stones) {
  HexBoard b(size);
  std::uniform_int_distribution<int> cd(0, size * size - 1);
  std::uniform_int_distribution<int> kd(0, max_stones);
  for (int pass = 0; pass < 2; ++pass) {
    const Stone s = pass == 0 ? Stone::Black : Stone::White;
    for (int k = kd(rng); k > 0; --k) {
      const int c = cd(rng);
      if (b.cells[c] == Stone::Empty) b.cells[c] = s;
    }
  }
  return b;
}

}  // namespace

TEST_SUITE("preprocess") {

TEST_CASE("contract basics") {
  // path 0-1-2, middle node claimed each way
  auto g = make_ghex(3, {{0, 1}, {1, 2}}, {0}, {2});

  auto cs = contract(g, {1}, {});
  CHECK(cs.instance == make_ghex(2, {{0, 1}}, {0}, {1}));
  CHECK(cs.old_to_new == std::vector<int>{0, -1, 1});
  CHECK_FALSE(cs.already_connected);

  auto cc = contract(g, {}, {1});
  CHECK(cc.instance == make_ghex(2, {}, {0}, {1}));
  CHECK_FALSE(cc.already_connected);

  // border membership passes through a contracted border node
  auto cb = contract(g, {0}, {});
  CHECK(cb.instance == make_ghex(2, {{0, 1}}, {0}, {1}));

  // claims must be disjoint and in range
  CHECK_THROWS_AS(contract(g, {1}, {1}), GameError);
  CHECK_THROWS_AS(contract(g, {3}, {}), GameError);
}

TEST_CASE("contract detects a finished connection") {
  // single node on both borders
  auto g1 = make_ghex(1, {}, {0}, {0});
  CHECK(contract(g1, {0}, {}).already_connected);

  // chain of two claimed nodes bridging the borders
  auto g2 = make_ghex(2, {{0, 1}}, {0}, {1});
  CHECK(contract(g2, {0, 1}, {}).already_connected);
  CHECK_FALSE(contract(g2, {0}, {}).already_connected);
}

TEST_CASE("contract drops edges inside one border") {
  auto g = make_ghex(3, {{0, 1}, {0, 2}, {1, 2}}, {0, 1}, {2});
  auto c = contract(g, {}, {});
  CHECK(c.instance == make_ghex(3, {{0, 2}, {1, 2}}, {0, 1}, {2}));

  // self-loops survive untouched
  auto gl = make_ghex(2, {{0, 0}, {0, 1}}, {0}, {1});
  CHECK(contract(gl, {}, {}).instance == gl);
}

TEST_CASE("contract preserves oracle verdicts") {
  std::mt19937 rng(411);
  int connected_seen = 0;
  for (int round = 0; round < 150; ++round) {
    auto g = random_ghex(rng, 9);
    std::vector<int> sc, cc;
    std::uniform_int_distribution<int> coin(0, 3);
    for (int v = 0; v < g.num_nodes; ++v) {
      const int r = coin(rng);
      if (r == 0) sc.push_back(v);
      else if (r == 1) cc.push_back(v);
    }
    std::uniform_int_distribution<int> dd(0, 2);
    const int depth = 2 * dd(rng) + 1;
    auto before = solve_ghex(g, sc, cc, depth);
    auto c = contract(g, sc, cc);
    if (c.already_connected) {
      ++connected_seen;
      CHECK(before.black_wins);
      continue;
    }
    auto after = solve_ghex(c.instance, {}, {}, depth);
    CAPTURE(round);
    CHECK(before.black_wins == after.black_wins);
  }
  CHECK(connected_seen > 0);
}

TEST_CASE("prune_win_sets filters and minimizes") {
  GameInstance g;
  g.num_positions = 6;
  g.initial_black = {0};
  g.initial_white = {5};
  g.win_sets = {{0, 1}, {0, 1, 2}, {2, 3, 4}, {4, 5}, {1, 2, 3, 4}};
  g.canonicalize();

  // depth 3: maker budget 2 new claims
  auto p = prune_win_sets(g, 3);
  // {0,1} needs 1; {0,1,2} superset; {2,3,4} needs 3 > 2; {4,5} blocked;
  // {1,2,3,4} needs 4
  CHECK(p.win_sets == std::vector<std::vector<int>>{{0, 1}});
  CHECK(p.initial_black == g.initial_black);
  CHECK(p.initial_white == g.initial_white);
}

TEST_CASE("prune and fill preserve oracle verdicts") {
  std::mt19937 rng(412);
  for (int round = 0; round < 120; ++round) {
    std::uniform_int_distribution<int> nd(2, 9);
    GameInstance g;
    g.num_positions = nd(rng);
    std::uniform_int_distribution<int> vd(0, g.num_positions - 1);
    std::uniform_int_distribution<int> wd(0, 4);
    const int nw = wd(rng);
    for (int i = 0; i < nw; ++i) {
      std::vector<int> ws;
      std::uniform_int_distribution<int> sd(1, 3);
      for (int k = sd(rng); k > 0; --k) ws.push_back(vd(rng));
      std::sort(ws.begin(), ws.end());
      ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
      g.win_sets.push_back(std::move(ws));
    }
    std::uniform_int_distribution<int> coin(0, 4);
    for (int v = 0; v < g.num_positions; ++v) {
      const int r = coin(rng);
      if (r == 0) g.initial_black.push_back(v);
      else if (r == 1) g.initial_white.push_back(v);
    }
    g.canonicalize();
    std::uniform_int_distribution<int> dd(0, 2);
    const int depth = 2 * dd(rng) + 1;

    const bool expect = solve_game(g, depth).black_wins;
    auto pruned = prune_win_sets(g, depth);
    auto filled = fill_breaker(pruned);
    CAPTURE(round);
    CHECK(solve_game(pruned, depth).black_wins == expect);
    CHECK(solve_game(filled, depth).black_wins == expect);
    CHECK(fill_breaker(filled) == filled);
  }
}

TEST_CASE("stutter closure only adds target self-loops") {
  auto g = make_ghex(3, {{0, 1}, {1, 2}}, {0}, {1, 2});
  auto st = stutter_closure(g);
  CHECK(st == make_ghex(3, {{0, 1}, {1, 1}, {1, 2}, {2, 2}}, {0}, {1, 2}));
  CHECK(stutter_closure(st) == st);

  std::mt19937 rng(413);
  for (int round = 0; round < 40; ++round) {
    auto h = random_ghex(rng, 8);
    auto hs = stutter_closure(h);
    CHECK(min_connecting_sets(hs, 4) == min_connecting_sets(h, 4));
    CHECK(solve_ghex(hs, {}, {}, 3).black_wins == solve_ghex(h, {}, {}, 3).black_wins);
  }
}

TEST_CASE("board reduction of the size-4 puzzle") {
  HexBoard b = read_hex_board_file(std::string(POSQBF_TEST_DATA_DIR) + "/hein9.hex");
  REQUIRE(b.size == 4);

  auto br = reduce_board(b, Side::Black, 5);
  CHECK_FALSE(br.already_won);
  CHECK(br.node_to_cell == std::vector<int>{4, 5, 9, 13});  // a2 b2 b3 b4
  CHECK(br.instance == make_ghex(4, {{0, 2}, {1, 2}, {2, 3}}, {0, 1}, {3}));
  CHECK(br.game.num_positions == 4);
  CHECK(br.game.initial_black.empty());
  CHECK(br.game.initial_white.empty());
  CHECK(br.game.win_sets == std::vector<std::vector<int>>{{0, 2, 3}, {1, 2, 3}});

  auto t = transversal_of_board(b, Side::Black, 5);
  CHECK_FALSE(t.mover_hopeless);
  CHECK(t.node_to_cell == std::vector<int>{4, 5, 9, 13});
  CHECK(t.instance == make_ghex(4, {{0, 1}}, {1, 2, 3}, {0, 2, 3}));
}

TEST_CASE("size-4 puzzle verdicts line up across reductions") {
  HexBoard b = read_hex_board_file(std::string(POSQBF_TEST_DATA_DIR) + "/hein9.hex");
  auto view = board_to_ghex(b, Side::Black);
  for (int depth : {1, 3, 5, 7}) {
    CAPTURE(depth);
    const bool expect = solve_ghex(view.graph, view.short_claimed, view.cut_claimed, depth)
                            .black_wins;
    auto br = reduce_board(b, Side::Black, depth);
    if (br.already_won) {
      CHECK(expect);
    } else {
      CHECK(solve_game(br.game, depth).black_wins == expect);
    }
    auto t = transversal_of_board(b, Side::Black, depth);
    if (t.mover_hopeless) {
      CHECK_FALSE(expect);
    } else {
      CHECK(solve_ghex_transversal(t.instance, {}, {}, depth).black_wins == expect);
    }
  }
  // the decisive depth: three maker moves are not enough, four are
  CHECK_FALSE(solve_ghex(view.graph, view.short_claimed, view.cut_claimed, 5).black_wins);
  CHECK(solve_ghex(view.graph, view.short_claimed, view.cut_claimed, 7).black_wins);
}

TEST_CASE("board reductions preserve oracle verdicts") {
  std::mt19937 rng(414);
  int hopeless_seen = 0, won_seen = 0;
  for (int round = 0; round < 80; ++round) {
    std::uniform_int_distribution<int> sd(2, 4);
    const int size = sd(rng);
    HexBoard b = random_board(rng, size, size);
    std::uniform_int_distribution<int> dd(0, 2);
    const int depth = 2 * dd(rng) + 1;
    const Side side = round % 2 == 0 ? Side::Black : Side::White;

    auto view = board_to_ghex(b, side);
    const bool expect =
        solve_ghex(view.graph, view.short_claimed, view.cut_claimed, depth).black_wins;
    CAPTURE(round);

    auto br = reduce_board(b, side, depth);
    if (br.already_won) {
      ++won_seen;
      CHECK(expect);
    } else {
      CHECK(solve_game(br.game, depth).black_wins == expect);
    }

    auto t = transversal_of_board(b, side, depth);
    if (t.mover_hopeless) {
      ++hopeless_seen;
      CHECK_FALSE(expect);
    } else {
      CHECK(solve_ghex_transversal(t.instance, {}, {}, depth).black_wins == expect);
    }
  }
  CHECK(won_seen > 0);
  CHECK(hopeless_seen > 0);
}

}  // TEST_SUITE
