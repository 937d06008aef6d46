#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "clique/engine.hpp"
#include "clique/partition.hpp"
#include "clique/vertex_set.hpp"

namespace clique::algo {

enum class SearchTarget { dominating, independent };

// k-subgraph search over the partition S_1..S_p with p = floor(n^(1/k)):
//
//   round 1            owners share pair bits, so every node knows its row
//   rounds 2..1+B      w reports to v every s in S_v adjacent to w, one
//                      endpoint id per message (for independent sets only
//                      w in S_v reports, and only about s in S_v)
//   local              v searches S_v for a witness of size <= k
//   rounds 2+B..1+B+k  finders broadcast their witness one id per round;
//                      the lowest-id finder's witness is the output
//
// B is the worst per-link load, computable by every node from (n, k).
class PartitionSearch {
public:
  PartitionSearch(std::size_t n, std::size_t k, SearchTarget target)
      : n_(n), k_(k), target_(target), labels_(std::make_shared<const PartitionLabels>(n, k)) {
    if (k < 1) throw Error("partition search needs k >= 1");
    if (target == SearchTarget::dominating && k > n) throw Error("dominating set search needs k <= n");
    report_rounds_ = target == SearchTarget::dominating ? labels_->max_incident_load() : labels_->max_internal_load();
  }

  struct State {
    std::size_t n = 0;
    NodeId id = 0;
    std::vector<OwnedBit> owned;
    NodeSet row;
    std::vector<NodeId> region;                // S_v ascending
    std::vector<NodeSet> region_rows;          // reported neighbourhoods of S_v members
    std::vector<std::vector<NodeId>> outgoing; // outgoing[u - 1]: ids to report to u
    std::optional<std::vector<NodeId>> found;  // own witness, padded to length k
    std::vector<std::vector<NodeId>> announced;
    std::optional<std::vector<NodeId>> result;
  };

  std::size_t k() const { return k_; }
  std::size_t report_rounds() const { return report_rounds_; }
  const PartitionLabels& labels() const { return *labels_; }

  std::size_t rounds(std::size_t n) const {
    check_n(n);
    return 1 + report_rounds_ + k_;
  }

  State init(const NodeContext& ctx) const {
    check_n(ctx.n);
    State s;
    s.n = ctx.n;
    s.id = ctx.id;
    s.owned = ctx.owned;
    s.row = row_from_owned(ctx.n, ctx.owned);
    s.region = members_of(labels_->region(ctx.id));
    s.region_rows.assign(s.region.size(), NodeSet(ctx.n));
    s.announced.assign(ctx.n, {});
    return s;
  }

  std::vector<Draft> send(const State& s, std::size_t round) const {
    if (round == 1) return share_owned_bits(s.owned);
    if (round <= 1 + report_rounds_) {
      std::vector<Draft> out;
      const std::size_t slot = round - 2;
      for (NodeId u = 1; u <= s.n; ++u) {
        const auto& list = s.outgoing[u - 1];
        if (slot < list.size()) out.push_back({u, encode_id(list[slot], s.n)});
      }
      return out;
    }
    if (!s.found) return {};
    const std::size_t slot = round - 2 - report_rounds_;
    return to_all(s.n, s.id, encode_id((*s.found)[slot], s.n));
  }

  void receive(State& s, std::size_t round, std::span<const Message> inbox) const {
    if (round == 1) {
      absorb_shared_bits(s.row, inbox);
      plan_reports(s);
    } else if (round <= 1 + report_rounds_) {
      for (const auto& m : inbox) {
        const NodeId member = decode_id(m.payload, s.n);
        const auto pos = position_in_region(s, member);
        if (!pos) throw InternalError("report about a node outside S_v");
        s.region_rows[*pos].set(m.src - 1);
      }
    } else {
      for (const auto& m : inbox) s.announced[m.src - 1].push_back(decode_id(m.payload, s.n));
    }
    if (round == 1 + report_rounds_) local_search(s);
    if (round == 1 + report_rounds_ + k_) settle(s);
  }

  bool halted(const State&) const { return false; }

  BitVector output(const State& s) const { return encode_set_output(s.n, s.result); }

private:
  void check_n(std::size_t n) const {
    if (n != n_) throw Error("partition search built for n=" + std::to_string(n_) + " run on n=" + std::to_string(n));
  }

  static std::optional<std::size_t> position_in_region(const State& s, NodeId v) {
    auto it = std::lower_bound(s.region.begin(), s.region.end(), v);
    if (it == s.region.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - s.region.begin());
  }

  void plan_reports(State& s) const {
    s.outgoing.assign(s.n, {});
    for (NodeId u = 1; u <= s.n; ++u) {
      if (u == s.id) continue;
      const auto& target = labels_->region(u);
      if (target_ == SearchTarget::independent && !target.test(s.id - 1)) continue;
      auto& list = s.outgoing[u - 1];
      for (auto i = target.find_first(); i != NodeSet::npos; i = target.find_next(i))
        if (i + 1 != s.id && s.row.test(i)) list.push_back(static_cast<NodeId>(i + 1));
    }
  }

  // Neighbourhood of S_v member `pos` as known to v.
  NodeSet known_row(const State& s, std::size_t pos) const {
    const NodeId member = s.region[pos];
    NodeSet r = s.region_rows[pos];
    if (member == s.id) r |= s.row;
    else if (s.row.test(member - 1)) r.set(s.id - 1);
    return r;
  }

  void local_search(State& s) const {
    const std::size_t m = s.region.size();
    std::vector<NodeSet> rows;
    rows.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      rows.push_back(known_row(s, i));
      if (target_ == SearchTarget::dominating) rows.back().set(s.region[i] - 1);
    }

    std::vector<std::size_t> pick;
    auto accept = [&](const std::vector<std::size_t>& idx) {
      if (target_ == SearchTarget::dominating) {
        NodeSet covered(s.n);
        for (auto i : idx) covered |= rows[i];
        return covered.all();
      }
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
          if (rows[idx[a]].test(s.region[idx[b]] - 1)) return false;
      return true;
    };

    const std::size_t first = target_ == SearchTarget::dominating ? 1 : k_;
    for (std::size_t size = first; size <= k_ && size <= m && !s.found; ++size) {
      pick.assign(size, 0);
      for (std::size_t i = 0; i < size; ++i) pick[i] = i;
      while (true) {
        if (accept(pick)) {
          std::vector<NodeId> w;
          for (auto i : pick) w.push_back(s.region[i]);
          w.resize(k_, w.back());
          s.found = std::move(w);
          break;
        }
        std::size_t i = size;
        while (i > 0 && pick[i - 1] == m - size + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }

  void settle(State& s) const {
    for (NodeId u = 1; u <= s.n; ++u) {
      if (u == s.id && s.found) {
        s.result = make_vertex_set(*s.found, SetKind::dominating).members;
        return;
      }
      if (s.announced[u - 1].size() == k_) {
        s.result = make_vertex_set(s.announced[u - 1], SetKind::dominating).members;
        return;
      }
    }
  }

  std::size_t n_, k_;
  SearchTarget target_;
  std::shared_ptr<const PartitionLabels> labels_;
  std::size_t report_rounds_ = 0;
};

}  // namespace clique::algo
