#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "clique/algorithms/reductions.hpp"
#include "clique/engine.hpp"

namespace clique::algo {

// Runs `Inner` on the derived graph G' of a ReductionLayout, each host node
// simulating the derived nodes it hosts.
//
// Host round 1 shares input bits; afterwards every host knows the G' rows of
// its hosted nodes. Each inner round then takes a block of h * h * m host
// rounds, h = most nodes on one host, m = ceil((b' + 1) / b): slot (a, c) of
// the block carries the framed message from the a-th node hosted at u to the
// c-th node hosted at w, in m chunks. Messages between nodes on the same host
// never touch a link.
template <NodeProgram Inner>
class HostedSimulation {
public:
  using OutputMap = std::function<BitVector(std::size_t n, const BitVector& inner_output)>;

  HostedSimulation(ReductionLayout layout, Inner inner, OutputMap map)
      : layout_(std::move(layout)), inner_(std::move(inner)), map_(std::move(map)) {
    const std::size_t n = layout_.n();
    inner_n_ = layout_.size();
    h_ = layout_.max_hosted();
    frame_bits_ = bandwidth(inner_n_) + 1;
    chunks_ = (frame_bits_ + bandwidth(n) - 1) / bandwidth(n);
    block_ = h_ * h_ * chunks_;
    inner_rounds_ = inner_.rounds(inner_n_);
    index_.assign(inner_n_, 0);
    for (NodeId v = 1; v <= n; ++v) {
      const auto& list = layout_.hosted(v);
      for (std::size_t a = 0; a < list.size(); ++a) index_[list[a] - 1] = a;
    }
  }

  struct State {
    std::size_t n = 0;
    NodeId id = 0;
    std::vector<OwnedBit> owned;
    NodeSet row;
    std::vector<typename Inner::State> inner;
    std::vector<BitVector> outgoing;  // [(w - 1) * h * h + a * h + c], framed or empty
    std::vector<BitVector> incoming;  // [(u - 1) * h * h + a * h + c], chunks appended
    std::vector<Message> local;
  };

  const ReductionLayout& layout() const { return layout_; }
  const Inner& inner() const { return inner_; }
  std::size_t block_rounds() const { return block_; }
  std::size_t inner_rounds() const { return inner_rounds_; }

  std::size_t rounds(std::size_t n) const {
    if (n != layout_.n()) throw Error("hosted simulation built for another n");
    return 1 + inner_rounds_ * block_;
  }

  State init(const NodeContext& ctx) const {
    State s;
    s.n = ctx.n;
    s.id = ctx.id;
    s.owned = ctx.owned;
    s.row = row_from_owned(ctx.n, ctx.owned);
    s.outgoing.assign(ctx.n * h_ * h_, {});
    s.incoming.assign(ctx.n * h_ * h_, {});
    return s;
  }

  std::vector<Draft> send(const State& s, std::size_t round) const {
    if (round == 1) return share_owned_bits(s.owned);
    const std::size_t t = (round - 2) % block_;
    const std::size_t slot = t / chunks_, piece = t % chunks_;
    const std::size_t b = bandwidth(s.n);
    std::vector<Draft> out;
    for (NodeId w = 1; w <= s.n; ++w) {
      const auto& framed = s.outgoing[(w - 1) * h_ * h_ + slot];
      if (framed.empty()) continue;
      const std::size_t off = piece * b;
      out.push_back({w, slice(framed, off, std::min(b, framed.size() - off))});
    }
    return out;
  }

  void receive(State& s, std::size_t round, std::span<const Message> inbox) const {
    if (round == 1) {
      absorb_shared_bits(s.row, inbox);
      start_inner(s);
      prepare(s, 1);
      return;
    }
    const std::size_t t = (round - 2) % block_;
    const std::size_t slot = t / chunks_;
    for (const auto& m : inbox) append(s.incoming[(m.src - 1) * h_ * h_ + slot], m.payload);
    if (t + 1 == block_) {
      const std::size_t r = (round - 2) / block_ + 1;
      deliver(s, r);
      if (r < inner_rounds_) prepare(s, r + 1);
    }
  }

  bool halted(const State&) const { return false; }

  BitVector output(const State& s) const { return map_(s.n, inner_.output(s.inner.front())); }

private:
  void start_inner(State& s) const {
    const auto base_adj = [&](NodeId u, NodeId v) {
      if (u == s.id) return s.row.test(v - 1);
      if (v == s.id) return s.row.test(u - 1);
      throw InternalError("host asked about a pair it does not see");
    };
    for (NodeId d : layout_.hosted(s.id)) {
      std::vector<OwnedBit> owned;
      for (NodeId partner : owned_partners(inner_n_, d))
        owned.push_back({partner, layout_.adjacent(d, partner, base_adj)});
      s.inner.push_back(inner_.init(NodeContext{inner_n_, d, std::move(owned), {}}));
    }
  }

  void prepare(State& s, std::size_t r) const {
    for (auto& f : s.outgoing) f.clear();
    s.local.clear();
    std::vector<std::size_t> seen(inner_n_, 0);
    const auto& mine = layout_.hosted(s.id);
    for (std::size_t a = 0; a < mine.size(); ++a) {
      auto drafts = inner_.send(s.inner[a], r);
      validate_drafts(inner_n_, mine[a], r, drafts, seen, a + 1);
      for (auto& d : drafts) {
        const NodeId w = layout_.host(d.dst);
        if (w == s.id) s.local.push_back(Message{mine[a], d.dst, std::move(d.payload)});
        else s.outgoing[(w - 1) * h_ * h_ + a * h_ + index_[d.dst - 1]] = frame(d.payload, frame_bits_);
      }
    }
  }

  void deliver(State& s, std::size_t r) const {
    const auto& mine = layout_.hosted(s.id);
    std::vector<std::vector<Message>> boxes(mine.size());
    for (auto& m : s.local) boxes[index_[m.dst - 1]].push_back(std::move(m));
    s.local.clear();
    for (NodeId u = 1; u <= s.n; ++u) {
      if (u == s.id) continue;
      const auto& theirs = layout_.hosted(u);
      for (std::size_t a = 0; a < theirs.size(); ++a)
        for (std::size_t c = 0; c < mine.size(); ++c) {
          auto& buf = s.incoming[(u - 1) * h_ * h_ + a * h_ + c];
          if (buf.empty()) continue;
          if (buf.size() != frame_bits_) throw InternalError("hosted message arrived incomplete");
          boxes[c].push_back(Message{theirs[a], mine[c], unframe(buf)});
          buf.clear();
        }
    }
    for (std::size_t c = 0; c < mine.size(); ++c) {
      std::sort(boxes[c].begin(), boxes[c].end(), [](const Message& x, const Message& y) { return x.src < y.src; });
      inner_.receive(s.inner[c], r, std::span<const Message>(boxes[c]));
    }
  }

  ReductionLayout layout_;
  Inner inner_;
  OutputMap map_;
  std::size_t inner_n_ = 0, h_ = 0, frame_bits_ = 0, chunks_ = 0, block_ = 0, inner_rounds_ = 0;
  std::vector<std::size_t> index_;  // position of a derived node in its host's list
};

}  // namespace clique::algo
