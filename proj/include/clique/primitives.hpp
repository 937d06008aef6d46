#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "clique/engine.hpp"

namespace clique {

// Rounds needed for every node to broadcast a B-bit string.
constexpr std::size_t broadcast_rounds(std::size_t n, std::size_t bits) {
  const std::size_t b = bandwidth(n);
  return b == 0 ? 0 : (bits + b - 1) / b;
}

// Every node broadcasts its auxiliary input (exactly `bits` bits), one
// ceil(log2 n)-bit chunk per round to every other node.
class BroadcastBits {
public:
  explicit BroadcastBits(std::size_t bits) : bits_(bits) {}

  struct State {
    std::size_t n = 0;
    NodeId id = 0;
    std::vector<BitVector> known;  // known[u - 1]: u's bits received so far
  };

  std::size_t rounds(std::size_t n) const { return broadcast_rounds(n, bits_); }

  State init(const NodeContext& ctx) const {
    if (ctx.aux.size() != bits_) throw FormatError("broadcast input must have exactly " + std::to_string(bits_) + " bits");
    State s{ctx.n, ctx.id, std::vector<BitVector>(ctx.n)};
    s.known[ctx.id - 1] = ctx.aux;
    return s;
  }

  std::vector<Draft> send(const State& s, std::size_t round) const {
    const std::size_t b = bandwidth(s.n);
    const std::size_t off = (round - 1) * b;
    const auto& own = s.known[s.id - 1];
    return to_all(s.n, s.id, slice(own, off, std::min(b, own.size() - off)));
  }

  void receive(State& s, std::size_t, std::span<const Message> inbox) const {
    for (const auto& m : inbox) append(s.known[m.src - 1], m.payload);
  }

  bool halted(const State&) const { return false; }

  // All n strings concatenated in id order.
  BitVector output(const State& s) const {
    BitVector out;
    for (const auto& k : s.known) append(out, k);
    return out;
  }

private:
  std::size_t bits_;
};

struct Demand {
  NodeId src;
  NodeId dst;
  BitVector payload;
};

struct RouteResult {
  ExecutionReport report;
  std::vector<Message> delivered;  // delivery order: round, then src, then dst
};

// Direct-link FIFO delivery: demand (u -> v) waits for a free slot on link
// (u, v); no relaying, so rounds = max demands on one ordered pair.
class DirectRoute {
public:
  explicit DirectRoute(std::vector<Demand> demands) : demands_(std::move(demands)) {
    std::map<std::pair<NodeId, NodeId>, std::size_t> load;
    for (const auto& d : demands_) rounds_ = std::max(rounds_, ++load[{d.src, d.dst}]);
  }

  struct State {
    NodeId id = 0;
    std::map<NodeId, std::vector<BitVector>> queues;  // per destination, FIFO
    std::vector<std::pair<std::size_t, Message>> received;
  };

  std::size_t rounds(std::size_t) const { return rounds_; }

  State init(const NodeContext& ctx) const {
    State s;
    s.id = ctx.id;
    for (const auto& d : demands_)
      if (d.src == ctx.id) s.queues[d.dst].push_back(d.payload);
    return s;
  }

  std::vector<Draft> send(const State& s, std::size_t round) const {
    std::vector<Draft> out;
    for (const auto& [dst, q] : s.queues)
      if (q.size() >= round) out.push_back({dst, q[round - 1]});
    return out;
  }

  void receive(State& s, std::size_t round, std::span<const Message> inbox) const {
    for (const auto& m : inbox) s.received.emplace_back(round, m);
  }

  bool halted(const State&) const { return false; }
  BitVector output(const State&) const { return {}; }

private:
  std::vector<Demand> demands_;
  std::size_t rounds_ = 0;
};

inline RouteResult route(const Graph& g, std::vector<Demand> demands, const RunOptions& opt = {}) {
  const DirectRoute program(std::move(demands));
  auto ex = execute(program, g, {}, opt);
  std::vector<std::pair<std::size_t, Message>> all;
  for (auto& s : ex.states) all.insert(all.end(), s.received.begin(), s.received.end());
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first, a.second.src, a.second.dst) < std::tie(b.first, b.second.src, b.second.dst);
  });
  RouteResult out{std::move(ex.report), {}};
  for (auto& [round, m] : all) out.delivered.push_back(std::move(m));
  return out;
}

}  // namespace clique
