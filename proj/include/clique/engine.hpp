#pragma once

#include <algorithm>
#include <atomic>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "clique/bits.hpp"
#include "clique/errors.hpp"
#include "clique/graph.hpp"
#include "clique/input.hpp"

namespace clique {

// An outgoing message as drafted by a node; the engine stamps the sender.
struct Draft {
  NodeId dst;
  BitVector payload;
};

struct Message {
  NodeId src;
  NodeId dst;
  BitVector payload;

  bool operator==(const Message&) const = default;
};

// Everything a node may depend on when it starts: n, its id, its private
// input bits and an optional auxiliary input (certificate label).
struct NodeContext {
  std::size_t n;
  NodeId id;
  std::vector<OwnedBit> owned;
  BitVector aux;
};

// A per-node state machine. rounds(n) is the globally known round budget; the
// engine stops earlier only if every node reports halted().
template <class P>
concept NodeProgram = requires(const P& p, const NodeContext& ctx, typename P::State& s,
                               const typename P::State& cs, std::size_t round, std::span<const Message> inbox) {
  typename P::State;
  { p.rounds(ctx.n) } -> std::convertible_to<std::size_t>;
  { p.init(ctx) } -> std::same_as<typename P::State>;
  { p.send(cs, round) } -> std::same_as<std::vector<Draft>>;
  p.receive(s, round, inbox);
  { p.halted(cs) } -> std::convertible_to<bool>;
  { p.output(cs) } -> std::same_as<BitVector>;
};

struct ExecutionReport {
  std::size_t n = 0;
  std::size_t rounds = 0;
  std::vector<BitVector> outputs;         // outputs[v - 1]
  std::vector<std::uint64_t> link_load;   // messages carried, index (u - 1) * n + (v - 1)
  std::uint64_t total_bits = 0;
  std::uint64_t messages = 0;
  std::size_t max_payload_bits = 0;
  std::size_t peak_round_link_load = 0;   // most messages on one directed link in one round

  std::uint64_t load(NodeId u, NodeId v) const { return link_load.at((u - 1) * n + (v - 1)); }

  std::uint64_t max_link_load() const {
    return link_load.empty() ? 0 : *std::max_element(link_load.begin(), link_load.end());
  }

  // All nodes output 1.
  bool accepted() const {
    return std::all_of(outputs.begin(), outputs.end(), [](const BitVector& o) { return o == BitVector{true}; });
  }

  bool operator==(const ExecutionReport&) const = default;
};

class RoundTimeout : public Error {
public:
  RoundTimeout(std::size_t max_rounds, ExecutionReport partial)
      : Error("round limit " + std::to_string(max_rounds) + " exhausted before termination"),
        partial_(std::move(partial)) {}
  const ExecutionReport& partial() const { return partial_; }

private:
  ExecutionReport partial_;
};

enum class ExecutionMode { sequential, parallel };

struct RunOptions {
  std::size_t max_rounds = std::numeric_limits<std::size_t>::max();
  ExecutionMode mode = ExecutionMode::sequential;
  std::size_t threads = 0;  // 0: hardware concurrency
};

// Process-wide count of communication-rule violations detected by run().
inline std::atomic<std::uint64_t>& engine_violation_count() {
  static std::atomic<std::uint64_t> count{0};
  return count;
}

namespace detail {

template <class Fn>
void for_each_node(std::size_t n, const RunOptions& opt, Fn&& fn) {
  if (opt.mode == ExecutionMode::sequential || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t workers = opt.threads ? opt.threads : std::max(2U, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
}

}  // namespace detail

// Checks one node's drafts against the link rules. Used by the engine and by
// anything that simulates nodes outside it.
inline void validate_drafts(std::size_t n, NodeId src, std::size_t round, const std::vector<Draft>& drafts,
                            std::vector<std::size_t>& seen_stamp, std::size_t stamp) {
  const std::size_t limit = bandwidth(n);
  for (const auto& d : drafts) {
    if (d.dst < 1 || d.dst > n || d.dst == src) {
      ++engine_violation_count();
      throw AddressingError("message to invalid destination", round, src, d.dst);
    }
    if (d.payload.size() > limit) {
      ++engine_violation_count();
      throw BandwidthViolation(round, src, d.dst, d.payload.size(), limit);
    }
    if (seen_stamp[d.dst - 1] == stamp) {
      ++engine_violation_count();
      throw MultiplexingViolation(round, src, d.dst);
    }
    seen_stamp[d.dst - 1] = stamp;
  }
}

template <NodeProgram P>
struct Execution {
  ExecutionReport report;
  std::vector<typename P::State> states;
};

template <NodeProgram P>
std::vector<typename P::State> initial_states(const P& program, const Graph& g, const std::vector<BitVector>& aux) {
  const std::size_t n = g.n();
  if (!aux.empty() && aux.size() != n) throw FormatError("auxiliary input must cover all nodes");
  const InputAssignment inputs(g);
  std::vector<typename P::State> states;
  states.reserve(n);
  for (NodeId v = 1; v <= n; ++v)
    states.push_back(program.init(NodeContext{n, v, inputs.bits(v), aux.empty() ? BitVector{} : aux[v - 1]}));
  return states;
}

// Runs program on g until the round budget is spent or every node halts.
template <NodeProgram P>
Execution<P> execute(const P& program, const Graph& g, const std::vector<BitVector>& aux = {},
                     const RunOptions& opt = {}) {
  const std::size_t n = g.n();
  if (n < 2) throw GraphError("the congested clique needs at least 2 nodes");

  Execution<P> ex{ExecutionReport{}, initial_states(program, g, aux)};
  auto& rep = ex.report;
  auto& states = ex.states;
  rep.n = n;
  rep.link_load.assign(n * n, 0);

  auto collect_outputs = [&] {
    rep.outputs.assign(n, BitVector{});
    for (std::size_t i = 0; i < n; ++i) rep.outputs[i] = program.output(states[i]);
  };

  const std::size_t budget = program.rounds(n);
  std::vector<std::vector<Draft>> drafts(n);
  std::vector<std::vector<Message>> inbox(n);
  std::vector<std::size_t> seen(n, 0);
  std::size_t stamp = 0;

  for (std::size_t round = 1;; ++round) {
    if (round > budget) break;
    if (std::all_of(states.begin(), states.end(), [&](const auto& s) { return program.halted(s); })) break;
    if (round > opt.max_rounds) {
      collect_outputs();
      throw RoundTimeout(opt.max_rounds, rep);
    }

    detail::for_each_node(n, opt, [&](std::size_t i) { drafts[i] = program.send(states[i], round); });

    for (auto& box : inbox) box.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const auto src = static_cast<NodeId>(i + 1);
      validate_drafts(n, src, round, drafts[i], seen, ++stamp);
      for (auto& d : drafts[i]) {
        rep.link_load[i * n + (d.dst - 1)] += 1;
        rep.total_bits += d.payload.size();
        rep.max_payload_bits = std::max(rep.max_payload_bits, d.payload.size());
        rep.messages += 1;
        inbox[d.dst - 1].push_back(Message{src, d.dst, std::move(d.payload)});
      }
      if (!drafts[i].empty()) rep.peak_round_link_load = 1;
    }

    detail::for_each_node(n, opt, [&](std::size_t i) {
      program.receive(states[i], round, std::span<const Message>(inbox[i]));
    });
    rep.rounds = round;
  }
  collect_outputs();
  return ex;
}

template <NodeProgram P>
ExecutionReport run(const P& program, const Graph& g, const std::vector<BitVector>& aux = {},
                    const RunOptions& opt = {}) {
  return execute(program, g, aux, opt).report;
}

// Helpers shared by node programs.

inline std::vector<Draft> to_all(std::size_t n, NodeId self, const BitVector& payload) {
  std::vector<Draft> out;
  out.reserve(n - 1);
  for (NodeId u = 1; u <= n; ++u)
    if (u != self) out.push_back({u, payload});
  return out;
}

// Full adjacency row known to a node after the input-sharing round.
inline NodeSet row_from_owned(std::size_t n, const std::vector<OwnedBit>& owned) {
  NodeSet row(n);
  for (const auto& b : owned)
    if (b.present) row.set(b.partner - 1);
  return row;
}

// Input-sharing round: each owner tells the other endpoint its pair bit.
inline std::vector<Draft> share_owned_bits(const std::vector<OwnedBit>& owned) {
  std::vector<Draft> out;
  out.reserve(owned.size());
  for (const auto& b : owned) out.push_back({b.partner, BitVector{b.present}});
  return out;
}

inline void absorb_shared_bits(NodeSet& row, std::span<const Message> inbox) {
  for (const auto& m : inbox)
    if (!m.payload.empty() && m.payload[0]) row.set(m.src - 1);
}

}  // namespace clique
