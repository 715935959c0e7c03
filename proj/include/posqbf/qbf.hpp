// Prenex QBF representations: CNF matrices and and/or circuits with
// quantifier prefixes, plus size statistics and Tseitin conversion.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace posqbf {

struct QbfError : std::runtime_error {
  explicit QbfError(const std::string& msg) : std::runtime_error(msg) {}
};

using Var = int;  // 1-based
using Lit = int;  // signed variable or gate reference, never 0

enum class Quant { Exists, Forall };

struct QuantBlock {
  Quant q;
  std::vector<Var> vars;  // declaration order

  bool operator==(const QuantBlock&) const = default;
};

struct QbfCnf {
  std::vector<QuantBlock> prefix;  // alternating, no empty blocks
  int num_vars = 0;                // variables are 1..num_vars
  std::vector<std::vector<Lit>> clauses;

  bool operator==(const QbfCnf&) const = default;
};

enum class GateKind { And, Or };

struct Gate {
  int id;  // gate ids continue after the variables: num_vars+1, num_vars+2, ...
  GateKind kind;
  std::vector<Lit> inputs;  // signed references to variables or earlier gates

  bool operator==(const Gate&) const = default;
};

struct QbfCircuit {
  std::vector<QuantBlock> prefix;
  int num_vars = 0;
  std::vector<Gate> gates;  // topologically ordered, ids consecutive
  Lit output = 0;

  bool operator==(const QbfCircuit&) const = default;
};

// Throws QbfError when structural invariants fail: every variable quantified
// exactly once, non-empty alternating blocks, literals in range, gate ids
// consecutive after the variables, gate inputs defined before use.
void check(const QbfCnf& f);
void check(const QbfCircuit& c);

// Drops empty blocks and merges adjacent blocks with the same quantifier.
void normalize_prefix(std::vector<QuantBlock>& prefix);

struct FormulaStats {
  int alternation_depth = 0;              // number of quantifier blocks
  std::vector<int> block_sizes;           // variables per block, outermost first
  long num_clauses = 0;                   // CNF only
  std::map<int, long> clauses_by_width;   // CNF only
  long num_gates = 0;                     // circuit only
  long num_and = 0;                       // circuit only
  long num_or = 0;                        // circuit only
  int num_vars = 0;
};

FormulaStats stats(const QbfCnf& f);
FormulaStats stats(const QbfCircuit& c);

// Plaisted-free textbook Tseitin: one fresh variable per gate (the gate's own
// id), k+1 clauses per k-ary gate, a unit clause for the output. Gate
// variables join the innermost existential block (a new one if needed).
QbfCnf tseitin(const QbfCircuit& c);

// The designated trivially-false formula: exists x1 . (x1) and (-x1).
QbfCnf trivial_false_cnf();

// The same formula as a circuit: every clause of two or more literals becomes
// an or gate, the matrix becomes an and gate over clauses (elided when a lone
// unit clause or gate can serve as the output directly). Same prefix, same
// variable ids; deterministic.
QbfCircuit circuit_from_cnf(const QbfCnf& f);

}  // namespace posqbf
