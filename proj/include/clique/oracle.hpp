#pragma once

// Centralised ground truth for the distributed algorithms. Everything here is
// plain enumeration so that it shares no code path with the node programs.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "clique/graph.hpp"
#include "clique/guard.hpp"
#include "clique/vertex_set.hpp"

namespace clique::oracle {

inline bool is_dominating(const Graph& g, const std::vector<NodeId>& s) {
  NodeSet covered(g.n());
  for (NodeId v : s) {
    covered |= g.row(v);
    covered.set(v - 1);
  }
  return covered.all();
}

inline bool is_independent(const Graph& g, const std::vector<NodeId>& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] == s[j] || g.adjacent(s[i], s[j])) return false;
  return true;
}

// Every node outside s has all its neighbours inside s.
inline bool is_cover(const Graph& g, const std::vector<NodeId>& s) {
  const NodeSet in = make_node_set(g.n(), s);
  for (NodeId u = 1; u <= g.n(); ++u)
    if (!in.test(u - 1) && !g.row(u).is_subset_of(in)) return false;
  return true;
}

inline bool is_valid(const Graph& g, const VertexSet& s) {
  switch (s.kind) {
    case SetKind::dominating: return is_dominating(g, s.members);
    case SetKind::independent: return is_independent(g, s.members);
    case SetKind::cover: return is_cover(g, s.members);
  }
  return false;
}

// Visits size-`size` subsets of 1..n in lexicographic order until fn returns true.
inline bool for_each_subset(std::size_t n, std::size_t size, const std::function<bool(const std::vector<NodeId>&)>& fn) {
  if (size > n) return false;
  std::vector<NodeId> pick(size);
  for (std::size_t i = 0; i < size; ++i) pick[i] = static_cast<NodeId>(i + 1);
  while (true) {
    if (fn(pick)) return true;
    std::size_t i = size;
    while (i > 0 && pick[i - 1] == n - size + i) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
}

namespace detail {

inline std::optional<VertexSet> smallest_witness(const Graph& g, std::size_t min_size, std::size_t k, SetKind kind,
                                                 const std::function<bool(const std::vector<NodeId>&)>& valid) {
  check_guard("oracle subset enumeration", log2_subsets_up_to(g.n(), k));
  for (std::size_t size = min_size; size <= k && size <= g.n(); ++size) {
    std::optional<VertexSet> found;
    for_each_subset(g.n(), size, [&](const std::vector<NodeId>& s) {
      if (!valid(s)) return false;
      found = VertexSet{s, kind};
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace detail

// Witnesses are canonical: smallest size first, then lexicographically first.
inline std::optional<VertexSet> has_dominating_set(const Graph& g, std::size_t k) {
  return detail::smallest_witness(g, g.n() == 0 ? 0 : 1, k, SetKind::dominating,
                                  [&](const auto& s) { return is_dominating(g, s); });
}

inline std::optional<VertexSet> has_vertex_cover(const Graph& g, std::size_t k) {
  return detail::smallest_witness(g, 0, k, SetKind::cover, [&](const auto& s) { return is_cover(g, s); });
}

// Independent sets are searched at size exactly k.
inline std::optional<VertexSet> has_independent_set(const Graph& g, std::size_t k) {
  if (k > g.n()) return std::nullopt;
  check_guard("oracle subset enumeration", log2_subsets_up_to(g.n(), k));
  std::optional<VertexSet> found;
  for_each_subset(g.n(), k, [&](const std::vector<NodeId>& s) {
    if (!is_independent(g, s)) return false;
    found = VertexSet{s, SetKind::independent};
    return true;
  });
  return found;
}

inline std::size_t max_independent_set_size(const Graph& g) {
  std::size_t best = 0;
  for (std::size_t k = 1; k <= g.n(); ++k) {
    if (!has_independent_set(g, k)) break;
    best = k;
  }
  return best;
}

inline constexpr std::size_t chromatic_max_nodes = 16;

// Backtracking k-colouring in node order.
inline bool chromatic_number_at_most(const Graph& g, std::size_t k) {
  const std::size_t n = g.n();
  if (n > chromatic_max_nodes)
    throw GuardExceeded("chromatic number oracle", static_cast<double>(n), static_cast<double>(chromatic_max_nodes));
  if (n == 0) return true;
  if (k == 0) return false;
  std::vector<std::size_t> colour(n, 0);  // 0 = unassigned
  std::function<bool(NodeId)> place = [&](NodeId v) -> bool {
    if (v > n) return true;
    std::size_t used_max = 0;
    for (NodeId u = 1; u < v; ++u) used_max = std::max(used_max, colour[u - 1]);
    // symmetry: a new colour is only ever the next unused one
    for (std::size_t c = 1; c <= std::min(k, used_max + 1); ++c) {
      bool ok = true;
      for (NodeId u : g.neighbours(v))
        if (u < v && colour[u - 1] == c) {
          ok = false;
          break;
        }
      if (!ok) continue;
      colour[v - 1] = c;
      if (place(v + 1)) return true;
    }
    colour[v - 1] = 0;
    return false;
  };
  return place(1);
}

}  // namespace clique::oracle
