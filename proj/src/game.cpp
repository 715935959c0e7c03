#include "posqbf/game.hpp"

#include <algorithm>

namespace posqbf {

namespace {

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

void GameInstance::canonicalize() {
  sort_unique(initial_black);
  sort_unique(initial_white);
  for (auto& w : win_sets) sort_unique(w);
  std::sort(win_sets.begin(), win_sets.end());
  win_sets.erase(std::unique(win_sets.begin(), win_sets.end()), win_sets.end());
}

void validate_play(const GameInstance& game, const Play& play) {
  std::vector<char> taken(static_cast<size_t>(game.num_positions), 0);
  for (int p : game.initial_black) taken[p] = 1;
  for (int p : game.initial_white) taken[p] = 1;
  for (size_t i = 0; i < play.moves.size(); ++i) {
    int m = play.moves[i];
    if (m < 0 || m >= game.num_positions)
      throw GameError("move " + std::to_string(i + 1) + " out of range: " + std::to_string(m));
    if (taken[m])
      throw GameError("move " + std::to_string(i + 1) + " hits an occupied position: " +
                      std::to_string(m));
    taken[m] = 1;
  }
}

Winner play_winner(const GameInstance& game, const Play& play) {
  validate_play(game, play);
  std::vector<char> black(static_cast<size_t>(game.num_positions), 0);
  for (int p : game.initial_black) black[p] = 1;
  for (size_t i = 0; i < play.moves.size(); i += 2) black[play.moves[i]] = 1;
  for (const auto& w : game.win_sets) {
    bool all = true;
    for (int p : w) {
      if (!black[p]) {
        all = false;
        break;
      }
    }
    if (all) return Winner::Black;
  }
  return Winner::White;
}

}  // namespace posqbf
