#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "clique/errors.hpp"

namespace clique {

using Edge = std::pair<NodeId, NodeId>;
using NodeSet = boost::dynamic_bitset<>;  // bit i <-> node i + 1

// Number of unordered pairs {u, v} on n nodes.
constexpr std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

// Position of {u, v} in the upper-triangle order (1,2), (1,3), ..., (n-1,n).
constexpr std::size_t pair_index(std::size_t n, NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  const std::size_t a = u - 1;
  return a * (2 * n - a - 1) / 2 + (v - u - 1);
}

inline Edge pair_at(std::size_t n, std::size_t index) {
  NodeId u = 1;
  while (index >= n - u) {
    index -= n - u;
    ++u;
  }
  return {u, static_cast<NodeId>(u + 1 + index)};
}

// Undirected simple graph on nodes 1..n.
class Graph {
public:
  Graph() = default;
  explicit Graph(std::size_t n) : rows_(n, NodeSet(n)) {}

  std::size_t n() const { return rows_.size(); }

  bool adjacent(NodeId u, NodeId v) const { return u != v && rows_.at(u - 1).test(v - 1); }

  // Open neighbourhood of v.
  const NodeSet& row(NodeId v) const { return rows_.at(v - 1); }

  std::size_t degree(NodeId v) const { return row(v).count(); }

  std::vector<NodeId> neighbours(NodeId v) const {
    std::vector<NodeId> out;
    const auto& r = row(v);
    for (auto i = r.find_first(); i != NodeSet::npos; i = r.find_next(i)) out.push_back(static_cast<NodeId>(i + 1));
    return out;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (NodeId u = 1; u <= n(); ++u)
      for (NodeId v : neighbours(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& r : rows_) twice += r.count();
    return twice / 2;
  }

  void add_edge(NodeId u, NodeId v) {
    check_pair(u, v);
    rows_[u - 1].set(v - 1);
    rows_[v - 1].set(u - 1);
  }

  void remove_edge(NodeId u, NodeId v) {
    check_pair(u, v);
    rows_[u - 1].reset(v - 1);
    rows_[v - 1].reset(u - 1);
  }

  Graph complement() const {
    Graph g(n());
    for (NodeId u = 1; u <= n(); ++u)
      for (NodeId v = u + 1; v <= n(); ++v)
        if (!adjacent(u, v)) g.add_edge(u, v);
    return g;
  }

  Graph induced_without(const NodeSet& removed) const {
    Graph g(n());
    for (auto [u, v] : edges())
      if (!removed.test(u - 1) && !removed.test(v - 1)) g.add_edge(u, v);
    return g;
  }

  bool operator==(const Graph& other) const { return rows_ == other.rows_; }

private:
  void check_pair(NodeId u, NodeId v) const {
    if (u < 1 || v < 1 || u > n() || v > n())
      throw GraphError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} has endpoint outside 1.." +
                       std::to_string(n()));
    if (u == v) throw GraphError("self-loop {" + std::to_string(u) + "," + std::to_string(v) + "}");
  }

  std::vector<NodeSet> rows_;
};

// Duplicates (in either orientation) collapse; invalid pairs are rejected.
inline Graph build_graph(std::size_t n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline NodeSet make_node_set(std::size_t n, const std::vector<NodeId>& members) {
  NodeSet s(n);
  for (NodeId v : members) s.set(v - 1);
  return s;
}

// Text format: "n m", then m lines "u v"; blank lines and '#' comments skipped.
inline Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& why) {
    throw GraphError("line " + std::to_string(line_no) + ": " + why);
  };

  if (!next_line()) throw GraphError("empty graph file");
  std::istringstream header(line);
  long long n = -1, m = -1;
  if (!(header >> n >> m) || n < 0 || m < 0) fail("expected header \"n m\"");

  std::vector<Edge> edges;
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) throw GraphError("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    std::istringstream row(line);
    long long u = 0, v = 0;
    if (!(row >> u >> v)) fail("expected \"u v\"");
    if (u < 1 || v < 1 || u > n || v > n || u == v)
      fail("invalid edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return build_graph(static_cast<std::size_t>(n), edges);
}

inline Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file " + path);
  return parse_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  const auto es = g.edges();
  out << g.n() << ' ' << es.size() << '\n';
  for (auto [u, v] : es) out << u << ' ' << v << '\n';
}

inline std::string to_graph_text(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

}  // namespace clique
