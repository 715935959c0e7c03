// Core positional-game types: maker-breaker instances, plays, winner evaluation.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace posqbf {

struct GameError : std::runtime_error {
  explicit GameError(const std::string& msg) : std::runtime_error(msg) {}
};

// Maker-breaker positional game over positions 0..num_positions-1.
// Black (the maker) owns the odd-numbered moves of a play and wins iff some
// win set is entirely black when the play ends; White (the breaker) wins
// otherwise. Initial claims are positions owned before the play starts.
struct GameInstance {
  int num_positions = 0;
  std::vector<int> initial_black;          // sorted, distinct
  std::vector<int> initial_white;          // sorted, distinct, disjoint from black
  std::vector<std::vector<int>> win_sets;  // each sorted+distinct; list lex-sorted, deduped

  // Sort and dedupe all members into the canonical form described above.
  void canonicalize();

  bool operator==(const GameInstance&) const = default;
};

// A (possibly partial) sequence of moves; moves[0] is move 1, which is Black's.
struct Play {
  std::vector<int> moves;
};

enum class Winner { Black, White };

// Throws GameError if the play leaves the position range, repeats a position,
// or claims an initially-claimed position.
void validate_play(const GameInstance& game, const Play& play);

// Winner once the play is over. Validates first.
Winner play_winner(const GameInstance& game, const Play& play);

}  // namespace posqbf
