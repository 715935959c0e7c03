// Circuit-level bounded-depth encodings of maker-breaker play.
//
// All four encoders share the logarithmic move representation: one bit
// vector of ceil(lg n) variables per time step, existential on odd steps
// (the maker) and universal on even steps (the breaker), plus an
// existential bit vector per witness slot naming the positions the maker
// claims to complete.
//
// encode_la / encode_ln keep a per-step board state, but only for a single
// symbolic position: a universally quantified challenge vector whose
// branches range over all positions, with two state bits per time step in
// the innermost existential block. Transition constraints update the state
// exactly in the branch matching the move played and propagate it
// elsewhere; the breaker's move updates only an empty position, so an
// occupied or out-of-range breaker move is a wasted turn.
//
// encode_sa / encode_sn drop the state entirely: the maker's moves must be
// pairwise distinct from all earlier moves, and every witness slot must
// equal one of the maker's moves.
//
// The goal side comes in two flavors: encode_la / encode_sa enumerate the
// winning sets explicitly over the witness slots, while encode_ln /
// encode_sn accept a connection instance and constrain consecutive witness
// slots to be graph neighbors, starting on one border and ending on the
// other. encode_ln checks adjacency once per universal branch through an
// existential neighbor vector chosen inside that branch.
//
// All encoders assume an empty starting board; preprocessing folds claimed
// cells away first. Winning sets larger than the witness budget cannot be
// completed and are skipped with a warning. The connection encoders expect
// targets to carry self-loops so that short witness paths can idle on the
// target; encode_ln warns when they do not.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "posqbf/game.hpp"
#include "posqbf/ghex.hpp"
#include "posqbf/qbf.hpp"

namespace posqbf {

// And/or gate factory with structural hash-consing and constant folding.
// Inputs are sorted and deduplicated; a gate absorbing its neutral element,
// containing complementary literals, or left with a single input never
// materializes. Boolean constants are the sentinel literals lit_true /
// lit_false (closed under negation) and are only turned into a zero-arity
// gate if they survive to the output.
class CircuitBuilder {
 public:
  static constexpr Lit lit_true = 1 << 30;
  static constexpr Lit lit_false = -(1 << 30);

  explicit CircuitBuilder(int num_vars) : num_vars_(num_vars) {}

  Lit band(std::vector<Lit> inputs) { return gate(GateKind::And, std::move(inputs)); }
  Lit bor(std::vector<Lit> inputs) { return gate(GateKind::Or, std::move(inputs)); }
  Lit implies(Lit a, Lit b) { return bor({-a, b}); }

  // x takes the value v (conjunction of bit literals); v >= 2^width errors
  Lit bin(const std::vector<Var>& x, int v);
  // bitwise equality of two vectors of the same width
  Lit eq(const std::vector<Var>& x, const std::vector<Var>& y);
  // unsigned x < c
  Lit lt_const(const std::vector<Var>& x, int c);

  // materializes a constant output if needed, normalizes the prefix, checks
  QbfCircuit finish(std::vector<QuantBlock> prefix, Lit output);

 private:
  Lit gate(GateKind kind, std::vector<Lit> inputs);

  int num_vars_;
  std::vector<Gate> gates_;
  std::map<std::pair<GateKind, std::vector<Lit>>, Lit> cache_;
};

struct LiftedEncoding {
  QbfCircuit circuit;
  // variable map (empty vectors when a block does not exist at this size)
  std::vector<std::vector<Var>> move;     // [t-1], t = 1..d
  std::vector<std::vector<Var>> witness;  // [i],   i = 0..(d-1)/2
  std::vector<Var> challenge;             // universal position (la/ln)
  std::vector<Var> neighbor;              // per-branch successor (ln)
  std::vector<Var> occupied, white;       // [t-1], t = 1..d+1 (la/ln)
  std::vector<std::string> warnings;
};

// explicit winning sets, per-step symbolic state
LiftedEncoding encode_la(const GameInstance& game, int depth);
// explicit winning sets, stateless distinct-move form
LiftedEncoding encode_sa(const GameInstance& game, int depth);
// border-to-border connection goal, per-step symbolic state
LiftedEncoding encode_ln(const GeneralizedHexInstance& g, int depth);
// border-to-border connection goal, stateless distinct-move form
LiftedEncoding encode_sn(const GeneralizedHexInstance& g, int depth);

}  // namespace posqbf
