// Instance reduction for bounded-depth play: claim substitution on graphs,
// win-set pruning, breaker fill, board-level pipelines, stutter closure.
#pragma once

#include "posqbf/game.hpp"
#include "posqbf/ghex.hpp"
#include "posqbf/hex.hpp"

namespace posqbf {

// Claim substitution. Cut-claimed nodes are deleted outright; short-claimed
// nodes are then contracted in ascending id order: the node disappears, its
// surviving neighborhood becomes a clique, and its border memberships pass to
// those neighbors. Afterwards, edges joining two border_s nodes or two
// border_e nodes are dropped (a subset-minimal connection never needs a
// second contact with either border, so such edges are dead weight).
// Surviving ids are compacted in ascending order.
struct ContractResult {
  GeneralizedHexInstance instance;
  std::vector<int> old_to_new;     // -1 for deleted nodes
  bool already_connected = false;  // short's claims alone bridge the borders
};
ContractResult contract(const GeneralizedHexInstance& g, const std::vector<int>& short_claimed,
                        const std::vector<int>& cut_claimed);

// Drops win sets that are unreachable within ceil(depth/2) maker moves or
// that touch a breaker claim, then keeps only subset-minimal ones.
GameInstance prune_win_sets(const GameInstance& game, int depth);

// Positions in no win set and not yet claimed go to the breaker. Idempotent.
GameInstance fill_breaker(const GameInstance& game);

// Self-loops on border_e nodes, so fixed-length witnesses can idle at the
// target once they arrive.
GeneralizedHexInstance stutter_closure(const GeneralizedHexInstance& g);

// Full maker-side board reduction at a given depth: contract the side's view,
// enumerate minimal connecting sets within the move budget, and keep only the
// nodes those sets use. The result is claim-free.
struct BoardReduction {
  GeneralizedHexInstance instance;
  GameInstance game;               // positions = instance nodes, win sets = minimal sets
  std::vector<int> node_to_cell;   // instance node id -> board cell id
  bool already_won = false;        // side's stones already connect; game.win_sets = {{}}
};
BoardReduction reduce_board(const HexBoard& b, Side side, int depth);

// The breaker-view companion instance: cells useless to the maker are filled
// for the breaker, the breaker's view of the filled board is contracted, and
// the mover on the result is the CUT side (the original maker).
struct TransversalInstance {
  GeneralizedHexInstance instance;
  std::vector<int> node_to_cell;
  bool mover_hopeless = false;  // breaker's claims already bridge its borders
};
TransversalInstance transversal_of_board(const HexBoard& b, Side maker, int depth);

}  // namespace posqbf
