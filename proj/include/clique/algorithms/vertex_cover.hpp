#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "clique/engine.hpp"
#include "clique/vertex_set.hpp"

namespace clique::algo {

// Minimum vertex cover of an edge list if one of size <= budget exists.
// Bounded search tree: branch on the first uncovered edge {u, v}, u first,
// iterative deepening so the first hit is minimum.
inline std::optional<std::vector<NodeId>> bounded_vertex_cover(const std::vector<Edge>& edges, std::size_t budget) {
  std::vector<NodeId> chosen;
  auto covered = [&](const Edge& e) {
    for (NodeId c : chosen)
      if (c == e.first || c == e.second) return true;
    return false;
  };
  auto search = [&](auto&& self, std::size_t left) -> bool {
    const Edge* open = nullptr;
    for (const auto& e : edges)
      if (!covered(e)) {
        open = &e;
        break;
      }
    if (!open) return true;
    if (left == 0) return false;
    for (NodeId pick : {open->first, open->second}) {
      chosen.push_back(pick);
      if (self(self, left - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (std::size_t b = 0; b <= budget; ++b) {
    chosen.clear();
    if (search(search, b)) return chosen;
  }
  return std::nullopt;
}

// k-vertex cover in at most k + 2 rounds:
//
//   round 1          owners share pair bits
//   round 2          nodes of degree >= k + 1 announce that they join C
//                    (if |C| > k every node outputs none and halts)
//   rounds 3..k+2    nodes outside C broadcast their neighbours outside C,
//                    one id per round; there are at most k of them
//   local            every node solves the residual graph and outputs
//                    C plus a minimum residual cover when it fits in k
class VertexCover {
public:
  explicit VertexCover(std::size_t k) : k_(k) {
    if (k < 1) throw Error("vertex cover needs k >= 1");
  }

  struct State {
    std::size_t n = 0;
    NodeId id = 0;
    std::vector<OwnedBit> owned;
    NodeSet row;
    NodeSet forced;                 // C
    std::vector<NodeId> uncovered;  // own neighbours outside C
    std::vector<Edge> residual;
    bool done = false;
    std::optional<std::vector<NodeId>> result;
  };

  std::size_t k() const { return k_; }

  std::size_t rounds(std::size_t) const { return k_ + 2; }

  State init(const NodeContext& ctx) const {
    State s;
    s.n = ctx.n;
    s.id = ctx.id;
    s.owned = ctx.owned;
    s.row = row_from_owned(ctx.n, ctx.owned);
    s.forced = NodeSet(ctx.n);
    return s;
  }

  std::vector<Draft> send(const State& s, std::size_t round) const {
    if (round == 1) return share_owned_bits(s.owned);
    if (round == 2) return s.row.count() >= k_ + 1 ? to_all(s.n, s.id, BitVector{true}) : std::vector<Draft>{};
    const std::size_t slot = round - 3;
    if (s.forced.test(s.id - 1) || slot >= s.uncovered.size()) return {};
    return to_all(s.n, s.id, encode_id(s.uncovered[slot], s.n));
  }

  void receive(State& s, std::size_t round, std::span<const Message> inbox) const {
    if (round == 1) {
      absorb_shared_bits(s.row, inbox);
    } else if (round == 2) {
      for (const auto& m : inbox) s.forced.set(m.src - 1);
      if (s.row.count() >= k_ + 1) s.forced.set(s.id - 1);
      if (s.forced.count() > k_) {
        s.done = true;
        return;
      }
      for (auto i = s.row.find_first(); i != NodeSet::npos; i = s.row.find_next(i))
        if (!s.forced.test(i)) s.uncovered.push_back(static_cast<NodeId>(i + 1));
      if (!s.forced.test(s.id - 1))
        for (NodeId u : s.uncovered) add_residual(s, s.id, u);
    } else {
      for (const auto& m : inbox) add_residual(s, m.src, decode_id(m.payload, s.n));
    }
    if (round == k_ + 2) settle(s);
  }

  bool halted(const State& s) const { return s.done; }

  BitVector output(const State& s) const { return encode_set_output(s.n, s.result); }

private:
  static void add_residual(State& s, NodeId a, NodeId b) {
    const Edge e{std::min(a, b), std::max(a, b)};
    // both endpoints report each residual edge
    if (a < b) s.residual.push_back(e);
  }

  void settle(State& s) const {
    s.done = true;
    const std::size_t fixed = s.forced.count();
    const std::size_t budget = k_ - fixed;
    std::sort(s.residual.begin(), s.residual.end());
    // Buss: each residual node has degree <= k, so a cover of size b meets at most k * b edges
    if (s.residual.size() > k_ * budget) return;
    auto cover = bounded_vertex_cover(s.residual, budget);
    if (!cover) return;
    std::vector<NodeId> members = members_of(s.forced);
    members.insert(members.end(), cover->begin(), cover->end());
    s.result = make_vertex_set(std::move(members), SetKind::cover).members;
  }

  std::size_t k_;
};

}  // namespace clique::algo
