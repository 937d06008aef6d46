#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clique/graph.hpp"
#include "clique/vertex_set.hpp"

namespace clique::algo {

enum class RoleKind { clique_copy, gadget_copy, special_x, special_y };

struct Role {
  RoleKind kind;
  NodeId base = 0;  // original node; 0 for specials
  std::size_t i = 0;
  std::size_t j = 0;  // gadget only

  bool operator==(const Role&) const = default;
};

inline std::string to_string(const Role& r) {
  switch (r.kind) {
    case RoleKind::clique_copy: return std::to_string(r.base) + "^" + std::to_string(r.i);
    case RoleKind::gadget_copy:
      return std::to_string(r.base) + "^{" + std::to_string(r.i) + "," + std::to_string(r.j) + "}";
    case RoleKind::special_x: return "x^" + std::to_string(r.i);
    case RoleKind::special_y: return "y^" + std::to_string(r.i);
  }
  return "?";
}

// Id layout of the independent-set to dominating-set graph G' for (n, k):
//
//   v^i      (i - 1) n + v                          i in 1..k
//   v^{i,j}  k n + q n + v                          q = rank of (i, j), i < j
//   x^i      k n + C(k,2) n + 2 (i - 1) + 1
//   y^i      x^i + 1
//
// Node v hosts every v^i and v^{i,j}; node 1 hosts the x^i, node 2 (node 1
// when n = 1) the y^i.
class ReductionLayout {
public:
  ReductionLayout(std::size_t n, std::size_t k) : n_(n), k_(k) {
    if (k < 1) throw Error("reduction needs k >= 1");
    if (n < 1) throw GraphError("reduction needs n >= 1");
    for (std::size_t i = 1; i <= k; ++i)
      for (std::size_t j = i + 1; j <= k; ++j) pairs_.push_back({i, j});
    hosted_.resize(n);
    for (NodeId d = 1; d <= size(); ++d) hosted_[host(d) - 1].push_back(d);
  }

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t pair_total() const { return pairs_.size(); }
  std::size_t size() const { return k_ * n_ + pairs_.size() * n_ + 2 * k_; }

  NodeId clique_copy(NodeId v, std::size_t i) const { return static_cast<NodeId>((i - 1) * n_ + v); }

  NodeId gadget_copy(NodeId v, std::size_t i, std::size_t j) const {
    return static_cast<NodeId>(k_ * n_ + pair_rank(i, j) * n_ + v);
  }

  NodeId special_x(std::size_t i) const { return static_cast<NodeId>(k_ * n_ + pairs_.size() * n_ + 2 * (i - 1) + 1); }
  NodeId special_y(std::size_t i) const { return special_x(i) + 1; }

  Role role(NodeId d) const {
    if (d < 1 || d > size()) throw GraphError("derived node " + std::to_string(d) + " out of range");
    const std::size_t z = d - 1;
    if (z < k_ * n_) return {RoleKind::clique_copy, static_cast<NodeId>(z % n_ + 1), z / n_ + 1, 0};
    const std::size_t g = z - k_ * n_;
    if (g < pairs_.size() * n_) {
      const auto [i, j] = pairs_[g / n_];
      return {RoleKind::gadget_copy, static_cast<NodeId>(g % n_ + 1), i, j};
    }
    const std::size_t s = g - pairs_.size() * n_;
    return {s % 2 == 0 ? RoleKind::special_x : RoleKind::special_y, 0, s / 2 + 1, 0};
  }

  NodeId host(NodeId d) const {
    const Role r = role(d);
    if (r.kind == RoleKind::special_x) return 1;
    if (r.kind == RoleKind::special_y) return n_ >= 2 ? 2 : 1;
    return r.base;
  }

  // Derived nodes simulated by host v, ascending.
  const std::vector<NodeId>& hosted(NodeId v) const { return hosted_.at(v - 1); }

  std::size_t max_hosted() const {
    std::size_t best = 0;
    for (const auto& h : hosted_) best = std::max(best, h.size());
    return best;
  }

  // Adjacency in G'. `base_adjacent(u, v)` is queried only with u the base
  // node of a or b, so a host can answer from its own row.
  bool adjacent(NodeId a, NodeId b, const std::function<bool(NodeId, NodeId)>& base_adjacent) const {
    if (a == b) return false;
    Role ra = role(a), rb = role(b);
    if (rank(ra.kind) > rank(rb.kind)) std::swap(ra, rb);
    switch (ra.kind) {
      case RoleKind::clique_copy:
        switch (rb.kind) {
          case RoleKind::clique_copy: return ra.i == rb.i;
          case RoleKind::gadget_copy:
            if (ra.i == rb.i) return ra.base != rb.base;
            if (ra.i == rb.j) return ra.base != rb.base && !base_adjacent(ra.base, rb.base);
            return false;
          case RoleKind::special_x:
          case RoleKind::special_y: return ra.i == rb.i;
        }
        return false;
      default: return false;  // gadgets are independent, specials see only their clique
    }
  }

private:
  static int rank(RoleKind k) {
    switch (k) {
      case RoleKind::clique_copy: return 0;
      case RoleKind::gadget_copy: return 1;
      case RoleKind::special_x: return 2;
      case RoleKind::special_y: return 3;
    }
    return 4;
  }

  std::size_t pair_rank(std::size_t i, std::size_t j) const {
    if (!(1 <= i && i < j && j <= k_)) throw GraphError("gadget index (i, j) needs 1 <= i < j <= k");
    // pairs (1,2),(1,3),..,(1,k),(2,3),..
    return (i - 1) * k_ - (i - 1) * i / 2 + (j - i - 1);
  }

  std::size_t n_, k_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::vector<NodeId>> hosted_;
};

struct ReductionGraph {
  Graph base;
  ReductionLayout layout;
  Graph derived;

  Role role(NodeId d) const { return layout.role(d); }
  NodeId host(NodeId d) const { return layout.host(d); }
};

inline ReductionGraph build_is_to_ds_reduction(const Graph& g, std::size_t k) {
  ReductionLayout layout(g.n(), k);
  Graph derived(layout.size());
  const auto base_adj = [&](NodeId u, NodeId v) { return g.adjacent(u, v); };
  for (NodeId a = 1; a <= layout.size(); ++a)
    for (NodeId b = a + 1; b <= layout.size(); ++b)
      if (layout.adjacent(a, b, base_adj)) derived.add_edge(a, b);
  return {g, std::move(layout), std::move(derived)};
}

// Reads a k-dominating set of G' back as a k-independent set of G. A set
// without exactly one member in every clique K^i cannot dominate G'.
inline VertexSet independent_set_from_dominating(const ReductionLayout& layout, const std::vector<NodeId>& ds) {
  std::vector<NodeId> picked(layout.k(), 0);
  for (NodeId d : ds) {
    const Role r = layout.role(d);
    if (r.kind != RoleKind::clique_copy || picked[r.i - 1] != 0)
      throw InternalError("dominating set of G' is not one node per clique");
    picked[r.i - 1] = r.base;
  }
  for (NodeId v : picked)
    if (v == 0) throw InternalError("dominating set of G' misses a clique");
  VertexSet out = make_vertex_set(picked, SetKind::independent);
  if (out.size() != layout.k()) throw InternalError("dominating set of G' repeats an original node");
  return out;
}

// Colouring to independent set: copies v_1..v_k of v form a clique, and
// v_i ~ u_i whenever {u, v} is an edge. Copy v_i has id (v - 1) k + i.
inline NodeId colour_copy(std::size_t k, NodeId v, std::size_t i) { return static_cast<NodeId>((v - 1) * k + i); }

inline Graph build_col_to_is_reduction(const Graph& g, std::size_t k) {
  if (k < 1) throw Error("colouring reduction needs k >= 1");
  Graph out(g.n() * k);
  for (NodeId v = 1; v <= g.n(); ++v)
    for (std::size_t i = 1; i <= k; ++i)
      for (std::size_t j = i + 1; j <= k; ++j) out.add_edge(colour_copy(k, v, i), colour_copy(k, v, j));
  for (auto [u, v] : g.edges())
    for (std::size_t i = 1; i <= k; ++i) out.add_edge(colour_copy(k, u, i), colour_copy(k, v, i));
  return out;
}

}  // namespace clique::algo
