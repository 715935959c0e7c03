// Generalized Hex instances: an undirected graph with two designated border
// sets. Short (Black) tries to build a path of claimed nodes from a border_s
// node to a border_e node; Cut (White) claims nodes to prevent that.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "posqbf/game.hpp"

namespace posqbf {

struct ParseError : std::runtime_error {
  int line;  // 1-based line of the offending input, 0 when not line-specific
  ParseError(const std::string& msg, int line_)
      : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
        line(line_) {}
};

struct GeneralizedHexInstance {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;  // u <= v, sorted, unique; u == v is a self-loop
  std::vector<int> border_s;               // sorted, distinct
  std::vector<int> border_e;               // sorted, distinct (may overlap border_s)

  void canonicalize();
  // Per-node sorted neighbor lists; a self-loop puts a node in its own list once.
  std::vector<std::vector<int>> adjacency() const;

  bool operator==(const GeneralizedHexInstance&) const = default;
};

// Node sets of simple border_s -> border_e paths of at most max_len nodes,
// filtered to the subset-minimal ones, in canonical (lexicographic) order.
// Exponential in the worst case; intended for small max_len.
std::vector<std::vector<int>> min_connecting_sets(const GeneralizedHexInstance& g, int max_len);

// The claim-free maker-breaker game whose win sets are min_connecting_sets(g, max_len).
GameInstance game_from_ghex(const GeneralizedHexInstance& g, int max_len);

// Text format:
//   c <comment>
//   p ghex <num_nodes> <num_edges>
//   s <ids...>
//   e <ids...>
//   a <u> <v>        (one line per edge)
// Exactly one s line and one e line; exactly num_edges a lines.
GeneralizedHexInstance read_ghex(std::istream& in);
GeneralizedHexInstance read_ghex_file(const std::string& path);
void write_ghex(std::ostream& out, const GeneralizedHexInstance& g);
std::string ghex_to_string(const GeneralizedHexInstance& g);

}  // namespace posqbf
