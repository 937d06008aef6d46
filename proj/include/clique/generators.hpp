#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "clique/graph.hpp"
#include "clique/guard.hpp"

namespace clique {

// SplitMix64 (Steele, Lea, Flood 2014). Written out so seeds mean the same
// thing on every platform and standard library:
//   state += 0x9e3779b97f4a7c15
//   z = state
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

private:
  std::uint64_t state_;
};

enum class GraphKind { erdos_renyi, path, cycle, star, complete, empty };

struct GeneratorSpec {
  GraphKind kind = GraphKind::empty;
  std::size_t n = 0;
  double p = 0.5;        // erdos_renyi only
  std::uint64_t seed = 0;
};

inline GraphKind parse_graph_kind(const std::string& s) {
  if (s == "er" || s == "erdos_renyi" || s == "gnp") return GraphKind::erdos_renyi;
  if (s == "path") return GraphKind::path;
  if (s == "cycle") return GraphKind::cycle;
  if (s == "star") return GraphKind::star;
  if (s == "complete") return GraphKind::complete;
  if (s == "empty") return GraphKind::empty;
  throw GraphError("unknown graph kind '" + s + "'");
}

inline std::string to_string(GraphKind k) {
  switch (k) {
    case GraphKind::erdos_renyi: return "erdos_renyi";
    case GraphKind::path: return "path";
    case GraphKind::cycle: return "cycle";
    case GraphKind::star: return "star";
    case GraphKind::complete: return "complete";
    case GraphKind::empty: return "empty";
  }
  return "?";
}

// G(n, p): pairs visited in upper-triangle order, one draw each.
inline Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  Graph g(n);
  SplitMix64 rng(seed);
  for (NodeId u = 1; u <= n; ++u)
    for (NodeId v = u + 1; v <= n; ++v)
      if (rng.uniform() < p) g.add_edge(u, v);
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (NodeId v = 1; v < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(static_cast<NodeId>(n), 1);
  return g;
}

// Centre is node 1.
inline Graph star_graph(std::size_t n) {
  Graph g(n);
  for (NodeId v = 2; v <= n; ++v) g.add_edge(1, v);
  return g;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (NodeId u = 1; u <= n; ++u)
    for (NodeId v = u + 1; v <= n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GraphKind::erdos_renyi: return erdos_renyi(spec.n, spec.p, spec.seed);
    case GraphKind::path: return path_graph(spec.n);
    case GraphKind::cycle: return cycle_graph(spec.n);
    case GraphKind::star: return star_graph(spec.n);
    case GraphKind::complete: return complete_graph(spec.n);
    case GraphKind::empty: return Graph(spec.n);
  }
  return Graph(spec.n);
}

inline constexpr std::size_t all_graphs_max_nodes = 6;

// Graph number `mask` on n nodes: bit i of mask is the pair at pair_at(n, i).
inline Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  Graph g(n);
  for (std::size_t i = 0; i < pair_count(n); ++i)
    if ((mask >> i) & 1U) {
      auto [u, v] = pair_at(n, i);
      g.add_edge(u, v);
    }
  return g;
}

inline std::uint64_t all_graphs_count(std::size_t n) {
  if (n > all_graphs_max_nodes)
    throw GuardExceeded("all_graphs enumeration", static_cast<double>(pair_count(n)),
                        static_cast<double>(pair_count(all_graphs_max_nodes)));
  return std::uint64_t{1} << pair_count(n);
}

// Streams every labelled graph on n nodes exactly once, in mask order.
inline void for_each_graph(std::size_t n, const std::function<void(const Graph&)>& fn) {
  const auto count = all_graphs_count(n);
  for (std::uint64_t mask = 0; mask < count; ++mask) fn(graph_from_mask(n, mask));
}

}  // namespace clique
