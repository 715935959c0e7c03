#include "posqbf/qbf_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace posqbf {

void write_qdimacs(std::ostream& out, const QbfCnf& f) {
  check(f);
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& b : f.prefix) {
    out << (b.q == Quant::Exists ? 'e' : 'a');
    for (Var v : b.vars) out << ' ' << v;
    out << " 0\n";
  }
  for (const auto& cl : f.clauses) {
    for (Lit l : cl) out << l << ' ';
    out << "0\n";
  }
}

std::string qdimacs_to_string(const QbfCnf& f) {
  std::ostringstream oss;
  write_qdimacs(oss, f);
  return oss.str();
}

void write_qdimacs_file(const std::string& path, const QbfCnf& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing", 0);
  write_qdimacs(out, f);
  if (!out) throw ParseError("write failed: " + path, 0);
}

namespace {

long long parse_ll(const std::string& tok, int line) {
  size_t pos = 0;
  long long val = 0;
  try {
    val = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected integer, got '" + tok + "'", line);
  }
  if (pos != tok.size()) throw ParseError("expected integer, got '" + tok + "'", line);
  return val;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream iss(line);
  std::vector<std::string> toks;
  std::string t;
  while (iss >> t) toks.push_back(t);
  return toks;
}

}  // namespace

QbfCnf read_qdimacs(std::istream& in) {
  QbfCnf f;
  bool saw_header = false, in_matrix = false;
  long want_clauses = 0;
  std::vector<Lit> pending;
  std::vector<char> quantified;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokens_of(line);
    if (toks.empty() || toks[0] == "c") continue;
    if (!saw_header) {
      if (toks.size() != 4 || toks[0] != "p" || toks[1] != "cnf")
        throw ParseError("expected header 'p cnf <vars> <clauses>'", lineno);
      long long nv = parse_ll(toks[2], lineno), nc = parse_ll(toks[3], lineno);
      if (nv < 0 || nc < 0 || nv > 50'000'000) throw ParseError("bad header counts", lineno);
      f.num_vars = static_cast<int>(nv);
      want_clauses = static_cast<long>(nc);
      quantified.assign(static_cast<size_t>(f.num_vars) + 1, 0);
      saw_header = true;
      continue;
    }
    if (toks[0] == "e" || toks[0] == "a") {
      if (in_matrix) throw ParseError("quantifier line after clauses", lineno);
      QuantBlock b{toks[0] == "e" ? Quant::Exists : Quant::Forall, {}};
      if (toks.size() < 2 || toks.back() != "0")
        throw ParseError("quantifier line must end with 0", lineno);
      for (size_t i = 1; i + 1 < toks.size(); ++i) {
        long long v = parse_ll(toks[i], lineno);
        if (v < 1 || v > f.num_vars) throw ParseError("variable out of range: " + toks[i], lineno);
        if (quantified[v]) throw ParseError("variable quantified twice: " + toks[i], lineno);
        quantified[v] = 1;
        b.vars.push_back(static_cast<Var>(v));
      }
      if (!b.vars.empty()) f.prefix.push_back(std::move(b));
      continue;
    }
    in_matrix = true;
    for (const auto& tok : toks) {
      long long l = parse_ll(tok, lineno);
      if (l == 0) {
        f.clauses.push_back(pending);
        pending.clear();
      } else {
        if (std::llabs(l) > f.num_vars)
          throw ParseError("literal out of range: " + tok, lineno);
        pending.push_back(static_cast<Lit>(l));
      }
    }
  }
  if (!saw_header) throw ParseError("missing 'p cnf' header", lineno);
  if (!pending.empty()) throw ParseError("last clause not terminated by 0", lineno);
  if (static_cast<long>(f.clauses.size()) != want_clauses)
    throw ParseError("header promised " + std::to_string(want_clauses) + " clauses, got " +
                         std::to_string(f.clauses.size()),
                     lineno);
  // Free variables become an outermost existential block.
  std::vector<char> used(static_cast<size_t>(f.num_vars) + 1, 0);
  for (const auto& cl : f.clauses)
    for (Lit l : cl) used[std::abs(l)] = 1;
  QuantBlock free_block{Quant::Exists, {}};
  for (Var v = 1; v <= f.num_vars; ++v)
    if (used[v] && !quantified[v]) free_block.vars.push_back(v);
  if (!free_block.vars.empty()) f.prefix.insert(f.prefix.begin(), std::move(free_block));
  // Unused, unquantified variables still need a home for the invariants.
  QuantBlock rest{Quant::Exists, {}};
  for (Var v = 1; v <= f.num_vars; ++v)
    if (!used[v] && !quantified[v]) rest.vars.push_back(v);
  if (!rest.vars.empty()) f.prefix.push_back(std::move(rest));
  normalize_prefix(f.prefix);
  check(f);
  return f;
}

QbfCnf read_qdimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return read_qdimacs(in);
}

void write_qcir(std::ostream& out, const QbfCircuit& c) {
  check(c);
  out << "#QCIR-G14\n";
  for (const auto& b : c.prefix) {
    out << (b.q == Quant::Exists ? "exists(" : "forall(");
    for (size_t i = 0; i < b.vars.size(); ++i) {
      if (i) out << ", ";
      out << b.vars[i];
    }
    out << ")\n";
  }
  out << "output(" << c.output << ")\n";
  for (const auto& g : c.gates) {
    out << g.id << " = " << (g.kind == GateKind::And ? "and(" : "or(");
    for (size_t i = 0; i < g.inputs.size(); ++i) {
      if (i) out << ", ";
      out << g.inputs[i];
    }
    out << ")\n";
  }
}

std::string qcir_to_string(const QbfCircuit& c) {
  std::ostringstream oss;
  write_qcir(oss, c);
  return oss.str();
}

void write_qcir_file(const std::string& path, const QbfCircuit& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing", 0);
  write_qcir(out, c);
  if (!out) throw ParseError("write failed: " + path, 0);
}

namespace {

// "exists(1, 2)" -> kind="exists", args={"1","2"}; "5 = and(-1)" -> lhs="5".
struct QcirLine {
  std::string lhs;   // empty unless a gate definition
  std::string kind;  // exists/forall/free/output/and/or/...
  std::vector<std::string> args;
};

bool parse_qcir_line(const std::string& raw, QcirLine& out, int lineno) {
  std::string s = raw;
  if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  size_t i = 0, j = s.size();
  while (i < j && is_space(s[i])) ++i;
  while (j > i && is_space(s[j - 1])) --j;
  s = s.substr(i, j - i);
  if (s.empty()) return false;

  auto lparen = s.find('(');
  auto rparen = s.rfind(')');
  if (lparen == std::string::npos || rparen == std::string::npos || rparen < lparen)
    throw ParseError("malformed line: '" + s + "'", lineno);
  std::string head = s.substr(0, lparen);
  if (rparen + 1 != s.size()) throw ParseError("trailing text after ')'", lineno);
  std::string inner = s.substr(lparen + 1, rparen - lparen - 1);

  // head is either "kind" or "id = kind"
  std::string lhs, kind;
  if (auto eq = head.find('='); eq != std::string::npos) {
    lhs = head.substr(0, eq);
    kind = head.substr(eq + 1);
  } else {
    kind = head;
  }
  auto strip = [&](std::string& t) {
    size_t a = 0, b = t.size();
    while (a < b && is_space(t[a])) ++a;
    while (b > a && is_space(t[b - 1])) --b;
    t = t.substr(a, b - a);
  };
  strip(lhs);
  strip(kind);
  out.lhs = lhs;
  out.kind = kind;
  out.args.clear();
  std::string cur;
  for (char ch : inner + ",") {
    if (ch == ',') {
      strip(cur);
      if (!cur.empty()) out.args.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return true;
}

}  // namespace

QbfCircuit read_qcir(std::istream& in) {
  QbfCircuit c;
  std::map<long long, Lit> remap;  // old id -> new signed-positive id
  bool saw_output = false, in_gates = false;
  long long output_old = 0;
  int output_sign = 1;
  int output_line = 0;
  std::string line;
  int lineno = 0;

  auto lookup = [&](const std::string& tok, int ln) -> Lit {
    long long v = parse_ll(tok, ln);
    int sign = v < 0 ? -1 : 1;
    auto it = remap.find(v * sign);
    if (it == remap.end())
      throw ParseError("reference to undefined id: " + tok, ln);
    return sign * it->second;
  };

  while (std::getline(in, line)) {
    ++lineno;
    QcirLine parsed;
    if (!parse_qcir_line(line, parsed, lineno)) continue;
    if (parsed.kind == "exists" || parsed.kind == "forall" || parsed.kind == "free") {
      if (in_gates || saw_output)
        throw ParseError("quantifier line after output/gates", lineno);
      if (!parsed.lhs.empty()) throw ParseError("quantifier line cannot define a gate", lineno);
      Quant q = parsed.kind == "forall" ? Quant::Forall : Quant::Exists;
      QuantBlock b{q, {}};
      for (const auto& tok : parsed.args) {
        long long v = parse_ll(tok, lineno);
        if (v <= 0) throw ParseError("variable ids must be positive: " + tok, lineno);
        if (remap.count(v)) throw ParseError("id declared twice: " + tok, lineno);
        remap[v] = ++c.num_vars;
        b.vars.push_back(c.num_vars);
      }
      if (parsed.kind == "free")
        c.prefix.insert(c.prefix.begin(), std::move(b));
      else
        c.prefix.push_back(std::move(b));
    } else if (parsed.kind == "output") {
      if (saw_output) throw ParseError("duplicate output line", lineno);
      if (parsed.args.size() != 1) throw ParseError("output takes one literal", lineno);
      long long v = parse_ll(parsed.args[0], lineno);
      output_sign = v < 0 ? -1 : 1;
      output_old = v * output_sign;
      output_line = lineno;
      saw_output = true;
    } else if (parsed.kind == "and" || parsed.kind == "or") {
      if (parsed.lhs.empty()) throw ParseError("gate definition needs an id", lineno);
      in_gates = true;
      long long id = parse_ll(parsed.lhs, lineno);
      if (id <= 0) throw ParseError("gate ids must be positive: " + parsed.lhs, lineno);
      if (remap.count(id)) throw ParseError("id declared twice: " + parsed.lhs, lineno);
      Gate g;
      g.kind = parsed.kind == "and" ? GateKind::And : GateKind::Or;
      for (const auto& tok : parsed.args) g.inputs.push_back(lookup(tok, lineno));
      remap[id] = c.num_vars + static_cast<int>(c.gates.size()) + 1;
      g.id = remap[id];
      c.gates.push_back(std::move(g));
    } else {
      throw ParseError("unsupported line kind '" + parsed.kind + "'", lineno);
    }
  }
  if (!saw_output) throw ParseError("missing output line", lineno);
  auto it = remap.find(output_old);
  if (it == remap.end())
    throw ParseError("output references undefined id: " + std::to_string(output_old), output_line);
  c.output = output_sign * it->second;
  normalize_prefix(c.prefix);
  check(c);
  return c;
}

QbfCircuit read_qcir_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return read_qcir(in);
}

}  // namespace posqbf
