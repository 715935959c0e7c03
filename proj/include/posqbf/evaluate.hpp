// Ground-truth QBF evaluation.
//
// evaluate() computes the truth value of a prenex CNF by branching on the
// outermost remaining variable (exists = or over branches, forall = and over
// branches) with standard value-preserving shortcuts: unit propagation
// (existential unit -> assign, universal unit -> branch false), early
// termination, and a transposition table keyed by an incrementally maintained
// 128-bit fingerprint of the residual matrix (two independent per-literal
// hash tables; collisions are astronomically unlikely). evaluate_circuit()
// is a deliberately independent naive expansion over all assignments.
//
// Both refuse formulas larger than the configured variable limit.
#pragma once

#include "posqbf/qbf.hpp"

namespace posqbf {

struct EvalLimitError : QbfError {
  explicit EvalLimitError(const std::string& msg) : QbfError(msg) {}
};

struct EvalStats {
  long long nodes = 0;        // solve() invocations
  long long assignments = 0;  // variable assignments including propagation
  long long memo_hits = 0;
  long long memo_entries = 0;
};

struct EvalOptions {
  int var_limit = 24;
  bool use_memo = true;
  // Upper bound on memory spent caching residual matrices.  Once reached,
  // lookups continue but no new entries are stored.
  long long memo_budget_bytes = 1LL << 30;
  // Optional counters, filled in by evaluate() when non-null.
  EvalStats* stats = nullptr;
};

bool evaluate(const QbfCnf& f, const EvalOptions& opts = {});
bool evaluate_circuit(const QbfCircuit& c, const EvalOptions& opts = {});

}  // namespace posqbf
