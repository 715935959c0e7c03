#include "posqbf/evaluate.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <unordered_map>

namespace posqbf {

namespace {

// murmur3 finalizer: a cheap bijective mixer
uint64_t mix64(uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ull;
  x ^= x >> 33;
  return x;
}

struct MemoKey {
  uint64_t a = 0, b = 0;
  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  size_t operator()(const MemoKey& k) const { return k.a ^ (k.b * 0x9e3779b97f4a7c15ull); }
};

class CnfEvaluator {
 public:
  CnfEvaluator(const QbfCnf& f, const EvalOptions& opts) : opts_(opts) {
    const int n = f.num_vars;
    val_.assign(static_cast<size_t>(n) + 1, 0);
    quant_.assign(static_cast<size_t>(n) + 1, Quant::Exists);
    for (const auto& b : f.prefix) {
      for (Var v : b.vars) {
        quant_[v] = b.q;
        order_.push_back(v);
      }
    }
    // Per-literal hash tables for the two independent residual fingerprints.
    lh1_.resize(2 * (static_cast<size_t>(n) + 1));
    lh2_.resize(2 * (static_cast<size_t>(n) + 1));
    for (size_t i = 0; i < lh1_.size(); ++i) {
      lh1_[i] = mix64(0x243f6a8885a308d3ull + i);
      lh2_[i] = mix64(0x13198a2e03707344ull + i * 0x9e3779b97f4a7c15ull);
    }
    // Clauses are copied with duplicate literals removed so that the XOR
    // accumulators track reduced clauses as sets.
    clauses_.reserve(f.clauses.size());
    for (const auto& cl : f.clauses) {
      std::vector<Lit> c(cl);
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      clauses_.push_back(std::move(c));
    }
    occ_pos_.resize(static_cast<size_t>(n) + 1);
    occ_neg_.resize(static_cast<size_t>(n) + 1);
    sat_count_.assign(clauses_.size(), 0);
    free_count_.assign(clauses_.size(), 0);
    acc1_.assign(clauses_.size(), 0);
    acc2_.assign(clauses_.size(), 0);
    num_unsat_ = static_cast<long long>(clauses_.size());
    for (size_t ci = 0; ci < clauses_.size(); ++ci) {
      free_count_[ci] = static_cast<int>(clauses_[ci].size());
      for (Lit l : clauses_[ci]) {
        (l > 0 ? occ_pos_[l] : occ_neg_[-l]).push_back(static_cast<int>(ci));
        acc1_[ci] ^= lhash(lh1_, l);
        acc2_[ci] ^= lhash(lh2_, l);
      }
      fp1_ += contrib(acc1_[ci], free_count_[ci]);
      fp2_ += contrib(acc2_[ci], free_count_[ci]);
    }
  }

  bool run() {
    bool result = run_inner();
    if (opts_.stats != nullptr) {
      opts_.stats->nodes += nodes_;
      opts_.stats->assignments += assignments_;
      opts_.stats->memo_hits += memo_hits_;
      opts_.stats->memo_entries += static_cast<long long>(memo_.size());
    }
    return result;
  }

 private:
  EvalOptions opts_;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<signed char> val_;  // 0 unassigned, +1 true, -1 false
  std::vector<Quant> quant_;
  std::vector<Var> order_;  // prefix declaration order
  std::vector<std::vector<int>> occ_pos_, occ_neg_;
  std::vector<int> sat_count_, free_count_;
  std::vector<uint64_t> lh1_, lh2_;    // literal hash tables
  std::vector<uint64_t> acc1_, acc2_;  // per-clause XOR of free-literal hashes
  uint64_t fp1_ = 0, fp2_ = 0;         // residual fingerprint over unsatisfied clauses
  long long num_unsat_ = 0;
  std::vector<Lit> trail_;
  std::unordered_map<MemoKey, bool, MemoKeyHash> memo_;
  long long memo_bytes_ = 0;
  long long nodes_ = 0, assignments_ = 0, memo_hits_ = 0;

  static size_t lindex(Lit l) {
    return 2 * static_cast<size_t>(std::abs(l)) + (l > 0 ? 1 : 0);
  }
  static uint64_t lhash(const std::vector<uint64_t>& t, Lit l) { return t[lindex(l)]; }
  static uint64_t contrib(uint64_t acc, int free_count) {
    return mix64(acc + 0x9e3779b97f4a7c15ull * static_cast<uint64_t>(free_count));
  }

  const std::vector<int>& occ(Lit l) const { return l > 0 ? occ_pos_[l] : occ_neg_[-l]; }

  void drop_clause_fp(int ci) {
    fp1_ -= contrib(acc1_[ci], free_count_[ci]);
    fp2_ -= contrib(acc2_[ci], free_count_[ci]);
  }

  void add_clause_fp(int ci) {
    fp1_ += contrib(acc1_[ci], free_count_[ci]);
    fp2_ += contrib(acc2_[ci], free_count_[ci]);
  }

  bool run_inner() {
    for (const auto& cl : clauses_)
      if (cl.empty()) return false;
    // Settle input units before the search starts.
    for (size_t ci = 0; ci < clauses_.size(); ++ci) {
      if (sat_count_[ci] > 0 || free_count_[ci] != 1) continue;
      Lit u = sole_free_lit(static_cast<int>(ci));
      if (quant_[std::abs(u)] == Quant::Forall) return false;
      if (!assign_and_propagate(u)) return false;
    }
    return solve(0);
  }

  Lit sole_free_lit(int ci) const {
    for (Lit l : clauses_[ci])
      if (val_[std::abs(l)] == 0) return l;
    return 0;  // unreachable on a clause with free_count == 1
  }

  bool assign_and_propagate(Lit first) {
    std::vector<Lit> queue{first};
    while (!queue.empty()) {
      Lit l = queue.back();
      queue.pop_back();
      int v = std::abs(l);
      signed char want = l > 0 ? 1 : -1;
      if (val_[v] == want) continue;
      if (val_[v] == -want) return false;
      val_[v] = want;
      ++assignments_;
      trail_.push_back(l);
      for (int ci : occ(l)) {
        if (sat_count_[ci]++ == 0) {
          drop_clause_fp(ci);
          --num_unsat_;
        }
      }
      // On conflict, keep updating the counts: undo() reverses whole lists,
      // so a mid-loop return would leave stale state behind.
      bool failed = false;
      for (int ci : occ(-l)) {
        const bool unsat = sat_count_[ci] == 0;
        if (unsat) drop_clause_fp(ci);
        --free_count_[ci];
        acc1_[ci] ^= lhash(lh1_, -l);
        acc2_[ci] ^= lhash(lh2_, -l);
        if (!unsat) continue;
        add_clause_fp(ci);
        if (failed) continue;
        if (free_count_[ci] == 0) {
          failed = true;
        } else if (free_count_[ci] == 1) {
          Lit u = sole_free_lit(ci);
          if (quant_[std::abs(u)] == Quant::Forall)
            failed = true;
          else
            queue.push_back(u);
        }
      }
      if (failed) return false;
    }
    return true;
  }

  void undo(size_t mark) {
    while (trail_.size() > mark) {
      Lit l = trail_.back();
      trail_.pop_back();
      for (int ci : occ(-l)) {
        const bool unsat = sat_count_[ci] == 0;
        if (unsat) drop_clause_fp(ci);
        ++free_count_[ci];
        acc1_[ci] ^= lhash(lh1_, -l);
        acc2_[ci] ^= lhash(lh2_, -l);
        if (unsat) add_clause_fp(ci);
      }
      for (int ci : occ(l)) {
        if (--sat_count_[ci] == 0) {
          add_clause_fp(ci);
          ++num_unsat_;
        }
      }
      val_[std::abs(l)] = 0;
    }
  }

  bool occurs_in_unsat(Var v) const {
    for (int ci : occ_pos_[v])
      if (sat_count_[ci] == 0) return true;
    for (int ci : occ_neg_[v])
      if (sat_count_[ci] == 0) return true;
    return false;
  }

  // Outermost unassigned variable still occurring in an unsatisfied clause.
  // Variables before `hint` in declaration order are known to be settled.
  size_t pick_branch_var(size_t hint) const {
    for (size_t i = hint; i < order_.size(); ++i) {
      const Var v = order_[i];
      if (val_[v] == 0 && occurs_in_unsat(v)) return i;
    }
    return order_.size();
  }

  bool branch(size_t var_index, bool positive) {
    const Var v = order_[var_index];
    size_t mark = trail_.size();
    bool res = assign_and_propagate(positive ? v : -v) && solve(var_index + 1);
    undo(mark);
    return res;
  }

  bool solve(size_t hint) {
    if (num_unsat_ == 0) return true;
    ++nodes_;
    const MemoKey key{fp1_, fp2_};
    if (opts_.use_memo) {
      if (auto it = memo_.find(key); it != memo_.end()) {
        ++memo_hits_;
        return it->second;
      }
    }
    const size_t vi = pick_branch_var(hint);
    // Every unsatisfied clause has a free literal, so vi is in range here.
    const Quant q = quant_[order_[vi]];
    bool result;
    bool first = branch(vi, true);
    if (q == Quant::Exists ? first : !first)
      result = first;
    else
      result = branch(vi, false);
    if (opts_.use_memo && memo_bytes_ + 64 <= opts_.memo_budget_bytes) {
      memo_bytes_ += 64;
      memo_.emplace(key, result);
    }
    return result;
  }
};

}  // namespace

bool evaluate(const QbfCnf& f, const EvalOptions& opts) {
  if (f.num_vars > opts.var_limit)
    throw EvalLimitError("formula has " + std::to_string(f.num_vars) +
                         " variables, limit is " + std::to_string(opts.var_limit));
  check(f);
  CnfEvaluator ev(f, opts);
  return ev.run();
}

namespace {

class CircuitEvaluator {
 public:
  explicit CircuitEvaluator(const QbfCircuit& c) : circuit_(c) {
    for (const auto& b : c.prefix)
      for (Var v : b.vars) order_.push_back({v, b.q});
    val_.assign(static_cast<size_t>(c.num_vars) + c.gates.size() + 1, false);
  }

  bool run() { return expand(0); }

 private:
  const QbfCircuit& circuit_;
  std::vector<std::pair<Var, Quant>> order_;
  std::vector<char> val_;

  bool lit_val(Lit l) const { return l > 0 ? val_[l] : !val_[-l]; }

  bool matrix_value() {
    for (const auto& g : circuit_.gates) {
      bool v = g.kind == GateKind::And;
      for (Lit l : g.inputs) {
        if (g.kind == GateKind::And)
          v = v && lit_val(l);
        else
          v = v || lit_val(l);
      }
      val_[g.id] = v;
    }
    return lit_val(circuit_.output);
  }

  bool expand(size_t i) {
    if (i == order_.size()) return matrix_value();
    auto [v, q] = order_[i];
    val_[v] = true;
    bool pos = expand(i + 1);
    if (q == Quant::Exists && pos) return true;
    if (q == Quant::Forall && !pos) return false;
    val_[v] = false;
    return expand(i + 1);
  }
};

}  // namespace

bool evaluate_circuit(const QbfCircuit& c, const EvalOptions& opts) {
  if (c.num_vars > opts.var_limit)
    throw EvalLimitError("circuit has " + std::to_string(c.num_vars) +
                         " variables, limit is " + std::to_string(opts.var_limit));
  check(c);
  CircuitEvaluator ev(c);
  return ev.run();
}

}  // namespace posqbf
