// Exhaustive bounded-depth game search: ground truth for every encoder.
//
// All three solvers share the same move rules: the first player ("Black",
// the maker side) moves on odd steps, the opponent on even steps, `depth`
// moves happen in total unless the position fills up first, and Black's win
// condition is tested on entry and after each of Black's moves. They differ
// only in the win test:
//   solve_game              some win set is entirely black
//   solve_ghex              claimed nodes contain a border_s..border_e path
//   solve_ghex_transversal  mover is the CUT side; wins when the non-cut
//                           nodes no longer connect border_s to border_e
#pragma once

#include "posqbf/game.hpp"
#include "posqbf/ghex.hpp"

namespace posqbf {

struct OracleLimitError : GameError {
  explicit OracleLimitError(const std::string& msg) : GameError(msg) {}
};

struct OracleOptions {
  int open_limit = 20;   // refuse positions with more open cells (hard cap 30)
  int forced_first = -1; // fix the maker's first move to this position id;
                         // the verdict then says whether that move still wins
};

struct Verdict {
  bool black_wins = false;
  // Lexicographically least optimal line of play, as position ids; ends as
  // soon as the outcome is settled (win reached, depth or board exhausted).
  std::vector<int> variation;
};

Verdict solve_game(const GameInstance& game, int depth, const OracleOptions& opts = {});

Verdict solve_ghex(const GeneralizedHexInstance& g, const std::vector<int>& short_claimed,
                   const std::vector<int>& cut_claimed, int depth,
                   const OracleOptions& opts = {});

Verdict solve_ghex_transversal(const GeneralizedHexInstance& g,
                               const std::vector<int>& short_claimed,
                               const std::vector<int>& cut_claimed, int depth,
                               const OracleOptions& opts = {});

}  // namespace posqbf
