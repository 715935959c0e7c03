#include "posqbf/ghex.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace posqbf {

namespace {

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

void GeneralizedHexInstance::canonicalize() {
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  sort_unique(border_s);
  sort_unique(border_e);
}

std::vector<std::vector<int>> GeneralizedHexInstance::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<size_t>(num_nodes));
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    if (u != v) adj[v].push_back(u);
  }
  for (auto& a : adj) sort_unique(a);
  return adj;
}

namespace {

struct PathSearch {
  const std::vector<std::vector<int>>& adj;
  const std::vector<char>& in_s;
  const std::vector<char>& in_e;
  size_t max_len;
  std::vector<char> visited;
  std::vector<int> path;
  std::set<std::vector<int>> found;

  // Only paths touching border_s at the start and border_e at the end are
  // explored: a subset-minimal connecting set never needs a second contact
  // with either border, so the pruning loses no minimal set.
  void dfs(int v) {
    visited[v] = 1;
    path.push_back(v);
    if (in_e[v]) {
      std::vector<int> s = path;
      std::sort(s.begin(), s.end());
      found.insert(std::move(s));
    } else if (path.size() < max_len) {
      for (int w : adj[v])
        if (!visited[w] && !in_s[w]) dfs(w);
    }
    path.pop_back();
    visited[v] = 0;
  }
};

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::vector<std::vector<int>> min_connecting_sets(const GeneralizedHexInstance& g, int max_len) {
  if (max_len <= 0 || g.num_nodes == 0) return {};
  auto adj = g.adjacency();
  std::vector<char> in_s(static_cast<size_t>(g.num_nodes), 0);
  std::vector<char> in_e(static_cast<size_t>(g.num_nodes), 0);
  for (int v : g.border_s) in_s[v] = 1;
  for (int v : g.border_e) in_e[v] = 1;

  PathSearch search{adj, in_s, in_e, static_cast<size_t>(max_len),
                    std::vector<char>(static_cast<size_t>(g.num_nodes), 0), {}, {}};
  for (int s : g.border_s) search.dfs(s);

  // Antichain filter: order by size so a superset can only come later.
  std::vector<std::vector<int>> sets(search.found.begin(), search.found.end());
  std::stable_sort(sets.begin(), sets.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<std::vector<int>> kept;
  for (const auto& s : sets) {
    bool dominated = false;
    for (const auto& k : kept) {
      if (subset_of(k, s)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(s);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

GameInstance game_from_ghex(const GeneralizedHexInstance& g, int max_len) {
  GameInstance game;
  game.num_positions = g.num_nodes;
  game.win_sets = min_connecting_sets(g, max_len);
  return game;
}

namespace {

int parse_int(const std::string& tok, int line) {
  size_t pos = 0;
  int val = 0;
  try {
    val = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected integer, got '" + tok + "'", line);
  }
  if (pos != tok.size()) throw ParseError("expected integer, got '" + tok + "'", line);
  return val;
}

int parse_node(const std::string& tok, int n, int line) {
  int v = parse_int(tok, line);
  if (v < 0 || v >= n) throw ParseError("node id out of range: " + tok, line);
  return v;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream iss(line);
  std::vector<std::string> toks;
  std::string t;
  while (iss >> t) toks.push_back(t);
  return toks;
}

}  // namespace

GeneralizedHexInstance read_ghex(std::istream& in) {
  GeneralizedHexInstance g;
  bool saw_header = false, saw_s = false, saw_e = false;
  int want_edges = 0;
  std::set<std::pair<int, int>> edge_seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokens_of(line);
    if (toks.empty() || toks[0] == "c") continue;
    if (!saw_header) {
      if (toks.size() != 4 || toks[0] != "p" || toks[1] != "ghex")
        throw ParseError("expected header 'p ghex <nodes> <edges>'", lineno);
      g.num_nodes = parse_int(toks[2], lineno);
      want_edges = parse_int(toks[3], lineno);
      if (g.num_nodes < 0 || want_edges < 0) throw ParseError("negative count in header", lineno);
      saw_header = true;
      continue;
    }
    if (toks[0] == "s" || toks[0] == "e") {
      bool is_s = toks[0] == "s";
      if ((is_s && saw_s) || (!is_s && saw_e))
        throw ParseError("duplicate '" + toks[0] + "' line", lineno);
      std::set<int> seen;
      auto& border = is_s ? g.border_s : g.border_e;
      for (size_t i = 1; i < toks.size(); ++i) {
        int v = parse_node(toks[i], g.num_nodes, lineno);
        if (!seen.insert(v).second)
          throw ParseError("duplicate border node: " + toks[i], lineno);
        border.push_back(v);
      }
      (is_s ? saw_s : saw_e) = true;
    } else if (toks[0] == "a") {
      if (toks.size() != 3) throw ParseError("expected 'a <u> <v>'", lineno);
      int u = parse_node(toks[1], g.num_nodes, lineno);
      int v = parse_node(toks[2], g.num_nodes, lineno);
      if (u > v) std::swap(u, v);
      if (!edge_seen.insert({u, v}).second)
        throw ParseError("duplicate edge " + std::to_string(u) + " " + std::to_string(v), lineno);
      g.edges.push_back({u, v});
    } else {
      throw ParseError("unexpected line kind '" + toks[0] + "'", lineno);
    }
  }
  if (!saw_header) throw ParseError("missing 'p ghex' header", lineno);
  if (!saw_s) throw ParseError("missing 's' line", lineno);
  if (!saw_e) throw ParseError("missing 'e' line", lineno);
  if (static_cast<int>(g.edges.size()) != want_edges)
    throw ParseError("header promised " + std::to_string(want_edges) + " edges, got " +
                         std::to_string(g.edges.size()),
                     lineno);
  g.canonicalize();
  return g;
}

GeneralizedHexInstance read_ghex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return read_ghex(in);
}

void write_ghex(std::ostream& out, const GeneralizedHexInstance& g) {
  GeneralizedHexInstance c = g;
  c.canonicalize();
  out << "p ghex " << c.num_nodes << ' ' << c.edges.size() << '\n';
  out << 's';
  for (int v : c.border_s) out << ' ' << v;
  out << '\n';
  out << 'e';
  for (int v : c.border_e) out << ' ' << v;
  out << '\n';
  for (auto [u, v] : c.edges) out << "a " << u << ' ' << v << '\n';
}

std::string ghex_to_string(const GeneralizedHexInstance& g) {
  std::ostringstream oss;
  write_ghex(oss, g);
  return oss.str();
}

}  // namespace posqbf
