#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "clique/graph.hpp"

namespace clique {

// Largest p with p^k <= n.
inline std::size_t integer_root(std::size_t n, std::size_t k) {
  if (k == 0) return n;
  auto pow_le = [&](std::size_t p) {
    unsigned __int128 acc = 1;
    for (std::size_t i = 0; i < k; ++i) {
      acc *= p;
      if (acc > n) return false;
    }
    return true;
  };
  std::size_t p = 1;
  while (pow_le(p + 1)) ++p;
  return p;
}

// Globally consistent split of 1..n into p = floor(n^(1/k)) contiguous blocks
// and labels l(v) in [p]^k covering every tuple. Every node can rebuild this
// from (n, k) alone.
class PartitionLabels {
public:
  PartitionLabels(std::size_t n, std::size_t k) : n_(n), k_(k), p_(integer_root(n, k)) {
    const std::size_t base = n_ / p_, extra = n_ % p_;
    NodeId next = 1;
    for (std::size_t i = 0; i < p_; ++i) {
      const std::size_t size = base + (i < extra ? 1 : 0);
      std::vector<NodeId> part;
      for (std::size_t j = 0; j < size; ++j) part.push_back(next++);
      parts_.push_back(std::move(part));
    }
    part_of_.resize(n_);
    for (std::size_t i = 0; i < p_; ++i)
      for (NodeId v : parts_[i]) part_of_[v - 1] = i + 1;

    std::size_t tuples = 1;
    for (std::size_t i = 0; i < k_; ++i) tuples *= p_;
    labels_.resize(n_);
    region_.assign(n_, NodeSet(n_));
    for (NodeId v = 1; v <= n_; ++v) {
      std::vector<std::size_t> label(k_, 1);
      std::size_t rank = v - 1;
      if (rank < tuples)
        for (std::size_t i = k_; i-- > 0;) {
          label[i] = rank % p_ + 1;
          rank /= p_;
        }
      for (std::size_t part : label)
        for (NodeId u : parts_[part - 1]) region_[v - 1].set(u - 1);
      labels_[v - 1] = std::move(label);
    }
  }

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t part_count() const { return p_; }
  const std::vector<std::vector<NodeId>>& parts() const { return parts_; }
  std::size_t part_of(NodeId v) const { return part_of_.at(v - 1); }

  // l(v), 1-based part indices, most significant digit first.
  const std::vector<std::size_t>& label(NodeId v) const { return labels_.at(v - 1); }

  // S_v: union of the parts named by l(v).
  const NodeSet& region(NodeId v) const { return region_.at(v - 1); }

  // Worst per-link load when every w != v reports to v about pairs {w, s}, s in S_v \ {w}.
  std::size_t max_incident_load() const {
    std::size_t best = 0;
    for (NodeId v = 1; v <= n_; ++v) {
      const auto& s = region(v);
      const std::size_t size = s.count();
      const std::size_t outside = n_ - size - (s.test(v - 1) ? 0 : 1);
      best = std::max(best, outside > 0 ? size : size - 1);
    }
    return best;
  }

  // Same when only members w of S_v report, about pairs inside S_v.
  std::size_t max_internal_load() const {
    std::size_t best = 0;
    for (NodeId v = 1; v <= n_; ++v) {
      const auto& s = region(v);
      const std::size_t others = s.count() - (s.test(v - 1) ? 1 : 0);
      if (others > 0) best = std::max(best, s.count() - 1);
    }
    return best;
  }

private:
  std::size_t n_, k_, p_;
  std::vector<std::vector<NodeId>> parts_;
  std::vector<std::size_t> part_of_;
  std::vector<std::vector<std::size_t>> labels_;
  std::vector<NodeSet> region_;
};

}  // namespace clique
