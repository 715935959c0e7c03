#include "posqbf/qbf.hpp"

#include <algorithm>
#include <cstdlib>

namespace posqbf {

namespace {

void check_prefix(const std::vector<QuantBlock>& prefix, int num_vars) {
  std::vector<char> seen(static_cast<size_t>(num_vars) + 1, 0);
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i].vars.empty()) throw QbfError("empty quantifier block");
    if (i > 0 && prefix[i].q == prefix[i - 1].q)
      throw QbfError("adjacent blocks with the same quantifier");
    for (Var v : prefix[i].vars) {
      if (v < 1 || v > num_vars) throw QbfError("quantified variable out of range: " + std::to_string(v));
      if (seen[v]) throw QbfError("variable quantified twice: " + std::to_string(v));
      seen[v] = 1;
    }
  }
  for (Var v = 1; v <= num_vars; ++v)
    if (!seen[v]) throw QbfError("variable not quantified: " + std::to_string(v));
}

}  // namespace

void check(const QbfCnf& f) {
  if (f.num_vars < 0) throw QbfError("negative variable count");
  check_prefix(f.prefix, f.num_vars);
  for (const auto& cl : f.clauses)
    for (Lit l : cl) {
      if (l == 0) throw QbfError("zero literal in clause");
      if (std::abs(l) > f.num_vars)
        throw QbfError("literal out of range: " + std::to_string(l));
    }
}

void check(const QbfCircuit& c) {
  if (c.num_vars < 0) throw QbfError("negative variable count");
  check_prefix(c.prefix, c.num_vars);
  int next_id = c.num_vars + 1;
  for (const auto& g : c.gates) {
    if (g.id != next_id)
      throw QbfError("gate ids must be consecutive after the variables; got " +
                     std::to_string(g.id) + ", expected " + std::to_string(next_id));
    for (Lit l : g.inputs) {
      if (l == 0) throw QbfError("zero literal in gate input");
      if (std::abs(l) >= g.id)
        throw QbfError("gate input not defined before use: " + std::to_string(l));
    }
    ++next_id;
  }
  if (c.output == 0) throw QbfError("missing circuit output");
  if (std::abs(c.output) >= next_id)
    throw QbfError("circuit output out of range: " + std::to_string(c.output));
}

void normalize_prefix(std::vector<QuantBlock>& prefix) {
  std::vector<QuantBlock> out;
  for (auto& b : prefix) {
    if (b.vars.empty()) continue;
    if (!out.empty() && out.back().q == b.q)
      out.back().vars.insert(out.back().vars.end(), b.vars.begin(), b.vars.end());
    else
      out.push_back(std::move(b));
  }
  prefix = std::move(out);
}

FormulaStats stats(const QbfCnf& f) {
  FormulaStats s;
  s.alternation_depth = static_cast<int>(f.prefix.size());
  for (const auto& b : f.prefix) s.block_sizes.push_back(static_cast<int>(b.vars.size()));
  s.num_clauses = static_cast<long>(f.clauses.size());
  for (const auto& cl : f.clauses) s.clauses_by_width[static_cast<int>(cl.size())]++;
  s.num_vars = f.num_vars;
  return s;
}

FormulaStats stats(const QbfCircuit& c) {
  FormulaStats s;
  s.alternation_depth = static_cast<int>(c.prefix.size());
  for (const auto& b : c.prefix) s.block_sizes.push_back(static_cast<int>(b.vars.size()));
  s.num_gates = static_cast<long>(c.gates.size());
  for (const auto& g : c.gates)
    (g.kind == GateKind::And ? s.num_and : s.num_or)++;
  s.num_vars = c.num_vars;
  return s;
}

QbfCnf tseitin(const QbfCircuit& c) {
  check(c);
  QbfCnf f;
  f.num_vars = c.num_vars + static_cast<int>(c.gates.size());
  f.prefix = c.prefix;
  if (!c.gates.empty()) {
    std::vector<Var> gate_vars;
    for (const auto& g : c.gates) gate_vars.push_back(g.id);
    if (!f.prefix.empty() && f.prefix.back().q == Quant::Exists)
      f.prefix.back().vars.insert(f.prefix.back().vars.end(), gate_vars.begin(), gate_vars.end());
    else
      f.prefix.push_back({Quant::Exists, std::move(gate_vars)});
  }
  for (const auto& g : c.gates) {
    if (g.kind == GateKind::And) {
      for (Lit l : g.inputs) f.clauses.push_back({-g.id, l});
      std::vector<Lit> big{g.id};
      for (Lit l : g.inputs) big.push_back(-l);
      f.clauses.push_back(std::move(big));
    } else {
      for (Lit l : g.inputs) f.clauses.push_back({g.id, -l});
      std::vector<Lit> big{-g.id};
      for (Lit l : g.inputs) big.push_back(l);
      f.clauses.push_back(std::move(big));
    }
  }
  f.clauses.push_back({c.output});
  return f;
}

QbfCnf trivial_false_cnf() {
  QbfCnf f;
  f.num_vars = 1;
  f.prefix = {{Quant::Exists, {1}}};
  f.clauses = {{1}, {-1}};
  return f;
}

QbfCircuit circuit_from_cnf(const QbfCnf& f) {
  check(f);
  QbfCircuit c;
  c.prefix = f.prefix;
  c.num_vars = f.num_vars;
  int next = f.num_vars + 1;
  std::vector<Lit> conjuncts;
  for (const auto& clause : f.clauses) {
    if (clause.size() == 1) {
      conjuncts.push_back(clause.front());
    } else {  // an empty clause becomes the 0-arity (false) or gate
      c.gates.push_back({next, GateKind::Or, clause});
      conjuncts.push_back(next++);
    }
  }
  if (conjuncts.size() == 1) {
    c.output = conjuncts.front();
  } else {  // an empty matrix becomes the 0-arity (true) and gate
    c.gates.push_back({next, GateKind::And, std::move(conjuncts)});
    c.output = next;
  }
  check(c);
  return c;
}

}  // namespace posqbf
