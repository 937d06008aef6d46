#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "clique/graph.hpp"

namespace clique {

// One private input bit: presence of the pair {owner, partner}.
struct OwnedBit {
  NodeId partner;
  bool present;

  bool operator==(const OwnedBit&) const = default;
};

// Round-robin tournament orientation of the n(n-1)/2 pair bits. Node u owns
// {u, v} iff (v - u) mod n lies in 1..floor((n-1)/2); for even n the pair at
// offset exactly n/2 goes to min(u, v).
inline NodeId input_owner(std::size_t n, NodeId u, NodeId v) {
  const std::size_t half = (n - 1) / 2;
  const std::size_t offset = (v + n - u) % n;
  if (offset >= 1 && offset <= half) return u;
  if (n % 2 == 0 && offset == n / 2) return std::min(u, v);
  return v;
}

inline bool owns(std::size_t n, NodeId self, NodeId other) { return input_owner(n, self, other) == self; }

// Partners of v's owned pairs, ascending.
inline std::vector<NodeId> owned_partners(std::size_t n, NodeId v) {
  std::vector<NodeId> out;
  for (NodeId u = 1; u <= n; ++u)
    if (u != v && owns(n, v, u)) out.push_back(u);
  return out;
}

// Owned bits of v given any view of v's adjacency.
inline std::vector<OwnedBit> owned_bits_from_row(std::size_t n, NodeId v, const NodeSet& row) {
  std::vector<OwnedBit> out;
  for (NodeId u : owned_partners(n, v)) out.push_back({u, row.test(u - 1)});
  return out;
}

class InputAssignment {
public:
  explicit InputAssignment(const Graph& g) : n_(g.n()), bits_(g.n()) {
    for (NodeId v = 1; v <= n_; ++v) bits_[v - 1] = owned_bits_from_row(n_, v, g.row(v));
  }

  std::size_t n() const { return n_; }
  NodeId owner(NodeId u, NodeId v) const { return input_owner(n_, u, v); }

  // Ordered by partner id.
  const std::vector<OwnedBit>& bits(NodeId v) const { return bits_.at(v - 1); }

  static std::size_t minimum_per_node(std::size_t n) { return n < 1 ? 0 : (n - 1) / 2; }

private:
  std::size_t n_;
  std::vector<std::vector<OwnedBit>> bits_;
};

inline InputAssignment assign_inputs(const Graph& g) { return InputAssignment(g); }

}  // namespace clique
