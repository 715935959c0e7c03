#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "posqbf/game.hpp"
#include "posqbf/ghex.hpp"

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

bool connects(const GeneralizedHexInstance& g, const std::vector<int>& nodes) {
  // BFS inside `nodes` from border_s members to a border_e member.
  std::vector<char> in(static_cast<size_t>(g.num_nodes), 0);
  for (int v : nodes) in[v] = 1;
  auto adj = g.adjacency();
  std::vector<char> in_e(static_cast<size_t>(g.num_nodes), 0);
  for (int v : g.border_e) in_e[v] = 1;
  std::vector<int> queue;
  std::vector<char> seen(static_cast<size_t>(g.num_nodes), 0);
  for (int v : g.border_s)
    if (in[v] && !seen[v]) {
      seen[v] = 1;
      queue.push_back(v);
    }
  for (size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    if (in_e[v]) return true;
    for (int w : adj[v])
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  }
  return false;
}

}  // namespace

TEST_SUITE("game") {

TEST_CASE("validate_play rejects bad plays") {
  GameInstance g;
  g.num_positions = 4;
  g.initial_white = {2};
  CHECK_NOTHROW(validate_play(g, Play{{0, 1, 3}}));
  CHECK_THROWS_AS(validate_play(g, Play{{0, 0}}), GameError);
  CHECK_THROWS_AS(validate_play(g, Play{{2}}), GameError);
  CHECK_THROWS_AS(validate_play(g, Play{{4}}), GameError);
  CHECK_THROWS_AS(validate_play(g, Play{{-1}}), GameError);
}

TEST_CASE("play_winner basic outcomes") {
  GameInstance g;
  g.num_positions = 4;
  g.win_sets = {{0, 1}};
  // Black takes 0 and 1 with moves 1 and 3.
  CHECK(play_winner(g, Play{{0, 2, 1}}) == Winner::Black);
  // White blocks position 1.
  CHECK(play_winner(g, Play{{0, 1, 2}}) == Winner::White);
  // Initial claims count.
  g.initial_black = {1};
  CHECK(play_winner(g, Play{{0}}) == Winner::Black);
  // The empty win set is always complete.
  GameInstance h;
  h.num_positions = 2;
  h.win_sets = {{}};
  CHECK(play_winner(h, Play{{}}) == Winner::Black);
  // No win sets: White wins any play.
  GameInstance w;
  w.num_positions = 2;
  CHECK(play_winner(w, Play{{0, 1}}) == Winner::White);
}

TEST_CASE("black verdicts are monotone in black claims") {
  std::mt19937 rng(7);
  for (int round = 0; round < 200; ++round) {
    GameInstance g;
    g.num_positions = 8;
    int k = static_cast<int>(rng() % 4 + 1);
    for (int i = 0; i < k; ++i) {
      std::vector<int> ws;
      for (int p = 0; p < 8; ++p)
        if (rng() % 3 == 0) ws.push_back(p);
      g.win_sets.push_back(ws);
    }
    g.canonicalize();
    std::vector<int> perm(8);
    for (int i = 0; i < 8; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Play play{std::vector<int>(perm.begin(), perm.begin() + 6)};
    if (play_winner(g, play) == Winner::Black) {
      GameInstance g2 = g;
      g2.initial_black = {perm[7]};  // unused position becomes black
      CHECK(play_winner(g2, play) == Winner::Black);
    }
  }
}

TEST_CASE("min_connecting_sets on hand graphs") {
  // Path 0-1-2-3.
  auto path4 = make_ghex(4, {{0, 1}, {1, 2}, {2, 3}}, {0}, {3});
  CHECK(min_connecting_sets(path4, 4) == std::vector<std::vector<int>>{{0, 1, 2, 3}});
  CHECK(min_connecting_sets(path4, 3).empty());
  // Diamond: two parallel routes.
  auto diamond = make_ghex(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}}, {0}, {3});
  CHECK(min_connecting_sets(diamond, 3) ==
        std::vector<std::vector<int>>{{0, 1, 3}, {0, 2, 3}});
  // Direct edge dominates the detour.
  auto chord = make_ghex(3, {{0, 1}, {1, 2}, {0, 2}}, {0}, {2});
  CHECK(min_connecting_sets(chord, 3) == std::vector<std::vector<int>>{{0, 2}});
  // A node on both borders is a one-node connection.
  auto both = make_ghex(2, {{0, 1}}, {0}, {0, 1});
  CHECK(min_connecting_sets(both, 2) == std::vector<std::vector<int>>{{0}});
  // Disconnected.
  auto disc = make_ghex(4, {{0, 1}, {2, 3}}, {0}, {3});
  CHECK(min_connecting_sets(disc, 4).empty());
  // Self-loops change nothing.
  auto looped = make_ghex(3, {{0, 0}, {0, 1}, {1, 2}, {2, 2}}, {0}, {2});
  CHECK(min_connecting_sets(looped, 3) == std::vector<std::vector<int>>{{0, 1, 2}});
}

TEST_CASE("min_connecting_sets results connect and are minimal") {
  std::mt19937 rng(11);
  for (int round = 0; round < 100; ++round) {
    int n = static_cast<int>(rng() % 7 + 2);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 3 == 0) edges.push_back({u, v});
    std::vector<int> s, e;
    for (int v = 0; v < n; ++v) {
      if (rng() % 3 == 0) s.push_back(v);
      if (rng() % 3 == 0) e.push_back(v);
    }
    auto g = make_ghex(n, edges, s, e);
    int max_len = static_cast<int>(rng() % n + 1);
    auto sets = min_connecting_sets(g, max_len);
    for (size_t i = 0; i < sets.size(); ++i) {
      const auto& ws = sets[i];
      CHECK(static_cast<int>(ws.size()) <= max_len);
      CHECK(connects(g, ws));
      // Dropping any single node must disconnect (subset-minimality).
      for (size_t drop = 0; drop < ws.size(); ++drop) {
        std::vector<int> sub;
        for (size_t j = 0; j < ws.size(); ++j)
          if (j != drop) sub.push_back(ws[j]);
        CHECK(!connects(g, sub));
      }
      // Canonical order and no duplicates.
      if (i > 0) CHECK(sets[i - 1] < sets[i]);
    }
    // Antichain: no set contains another.
    for (const auto& a : sets)
      for (const auto& b : sets)
        if (a != b)
          CHECK(!std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST_CASE("game_from_ghex carries nodes and win sets") {
  auto diamond = make_ghex(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}}, {0}, {3});
  GameInstance g = game_from_ghex(diamond, 3);
  CHECK(g.num_positions == 4);
  CHECK(g.initial_black.empty());
  CHECK(g.initial_white.empty());
  CHECK(g.win_sets == std::vector<std::vector<int>>{{0, 1, 3}, {0, 2, 3}});
}

TEST_CASE("ghex text round-trip") {
  auto g = make_ghex(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 4}}, {0, 2}, {4});
  std::string text = ghex_to_string(g);
  std::istringstream in(text);
  auto g2 = read_ghex(in);
  CHECK(g2 == g);
  CHECK(ghex_to_string(g2) == text);
}

TEST_CASE("ghex parser accepts comments and blank lines") {
  std::istringstream in(
      "c a comment\n"
      "\n"
      "p ghex 3 2\n"
      "s 0\n"
      "c another\n"
      "e 2\n"
      "a 0 1\n"
      "a 1 2\n");
  auto g = read_ghex(in);
  CHECK(g.num_nodes == 3);
  CHECK(g.edges.size() == 2);
  CHECK(g.border_s == std::vector<int>{0});
  CHECK(g.border_e == std::vector<int>{2});
}

TEST_CASE("ghex parser reports line numbers") {
  auto expect_line = [](const std::string& text, int line) {
    std::istringstream in(text);
    try {
      read_ghex(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == line);
    }
  };
  expect_line("p ghex 2 0\ns 0\ne 9\n", 3);                  // node out of range
  expect_line("p nope 2 0\n", 1);                            // bad header
  expect_line("p ghex 2 1\ns 0\ne 1\na 0 1\na 0 1\n", 5);    // duplicate edge (also count)
  expect_line("p ghex 2 0\ns 0\ns 1\ne 1\n", 3);             // duplicate s line
  expect_line("p ghex 2 0\ns 0 0\ne 1\n", 2);                // duplicate border node
  expect_line("p ghex 2 2\ns 0\ne 1\na 0 1\n", 4);           // edge count mismatch
  expect_line("p ghex 2 0\ns 0\ne 1\nq\n", 4);               // unknown line kind
}

TEST_CASE("empty borders and empty instances parse") {
  std::istringstream in("p ghex 0 0\ns\ne\n");
  auto g = read_ghex(in);
  CHECK(g.num_nodes == 0);
  CHECK(min_connecting_sets(g, 5).empty());
}

}  // TEST_SUITE
