// Prenex-CNF encoders asking "does the maker win within d moves?".
//
// All three share an explicit board core: moves are chosen by alternating
// logarithmic move variables (maker on odd steps), and the board state is
// tracked by black_v/white_v variables after each maker move. A move whose
// bit pattern names a claimed cell or no cell at all is a harmless pass.
// They differ in how the win condition is detected on the final board:
//   encode_ea  one selector per winning set, selected set all black
//   encode_en  indexed witness path over the graph, all black, border to border
//   encode_et  breaker-view reachability must fail (mover is the cut side)
#pragma once

#include <string>
#include <vector>

#include "posqbf/game.hpp"
#include "posqbf/ghex.hpp"
#include "posqbf/qbf.hpp"

namespace posqbf {

// Variable ids per family, all present in the prefix; 0 never used.
struct ExplicitVarMap {
  int bits = 0;                                 // ceil(lg n), 0 when n == 1
  std::vector<std::vector<Var>> move;           // [t-1][j], t = 1..d, bit j
  std::vector<std::vector<Var>> black, white;   // [(t-1)/2][v], odd t only
  std::vector<Var> hedge;                       // per winning set
  std::vector<std::vector<Var>> path;           // [i][v], 0 <= i <= (d-1)/2
  std::vector<Var> reach;                       // [v]
};

// Emitted clauses bucketed by family (unit clauses always count as units):
//   binary: white persistence, white excludes black, first-step move
//           mismatch, selected-set membership, border reachability seeds
//   ternary: later-step move mismatch, reachability propagation
//   longer: white set-by-move, goal disjunctions, witness-path successors
struct ClauseTally {
  long long units = 0, binary = 0, ternary = 0, longer = 0;

  long long total() const { return units + binary + ternary + longer; }
  bool operator==(const ClauseTally&) const = default;
};

struct ExplicitEncoding {
  QbfCnf cnf;
  ExplicitVarMap vars;
  ClauseTally tally;
  std::vector<std::string> warnings;
};

// d must be odd and positive; n >= 1. Initial claims are compiled into the
// first-step clauses, so claimed cells never show up as extra clauses later.
ExplicitEncoding encode_ea(const GameInstance& game, int d);
ExplicitEncoding encode_en(const GeneralizedHexInstance& g, int d);  // claim-free
ExplicitEncoding encode_et(const GeneralizedHexInstance& g, int d);  // breaker view

}  // namespace posqbf
