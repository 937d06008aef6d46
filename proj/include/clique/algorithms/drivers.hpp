#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>

#include "clique/algorithms/hosted.hpp"
#include "clique/algorithms/partition_search.hpp"
#include "clique/algorithms/reductions.hpp"
#include "clique/algorithms/vertex_cover.hpp"
#include "clique/engine.hpp"

namespace clique::algo {

struct AlgorithmRun {
  std::optional<VertexSet> set;
  ExecutionReport report;
};

// Every node must print the same set; anything else is a bug in the program.
inline std::optional<VertexSet> agreed_set(const ExecutionReport& rep, SetKind kind) {
  for (const auto& o : rep.outputs)
    if (o != rep.outputs.front()) throw InternalError("nodes disagree on the output set");
  auto members = decode_set_output(rep.n, rep.outputs.front());
  if (!members) return std::nullopt;
  return make_vertex_set(*members, kind);
}

// Implementation constant c of the round ceiling c * k * n^(1 - 1/k).
inline constexpr double kds_round_constant = 4.0;

inline AlgorithmRun k_dominating_set(const Graph& g, std::size_t k, const RunOptions& opt = {}) {
  if (k < 1) throw Error("k must be >= 1");
  const PartitionSearch program(g.n(), std::min(k, g.n()), SearchTarget::dominating);
  auto rep = run(program, g, {}, opt);
  auto set = agreed_set(rep, SetKind::dominating);
  return {std::move(set), std::move(rep)};
}

inline AlgorithmRun k_vertex_cover(const Graph& g, std::size_t k, const RunOptions& opt = {}) {
  if (k < 1) throw Error("k must be >= 1");
  const VertexCover program(std::min(k, g.n()));
  auto rep = run(program, g, {}, opt);
  auto set = agreed_set(rep, SetKind::cover);
  return {std::move(set), std::move(rep)};
}

inline AlgorithmRun k_independent_set_direct(const Graph& g, std::size_t k, const RunOptions& opt = {}) {
  if (k < 1) throw Error("k must be >= 1");
  const PartitionSearch program(g.n(), k, SearchTarget::independent);
  auto rep = run(program, g, {}, opt);
  auto set = agreed_set(rep, SetKind::independent);
  return {std::move(set), std::move(rep)};
}

using DominatingSetSimulation = HostedSimulation<PartitionSearch>;

inline DominatingSetSimulation make_is_via_ds_program(std::size_t n, std::size_t k) {
  ReductionLayout layout(n, k);
  PartitionSearch inner(layout.size(), k, SearchTarget::dominating);
  auto map = [layout](std::size_t host_n, const BitVector& inner_out) {
    auto ds = decode_set_output(layout.size(), inner_out);
    if (!ds) return encode_set_output(host_n, std::nullopt);
    return encode_set_output(host_n, independent_set_from_dominating(layout, *ds).members);
  };
  return DominatingSetSimulation(layout, std::move(inner), map);
}

inline AlgorithmRun k_independent_set_via_ds(const Graph& g, std::size_t k, const RunOptions& opt = {}) {
  if (k < 1) throw Error("k must be >= 1");
  const auto program = make_is_via_ds_program(g.n(), k);
  auto rep = run(program, g, {}, opt);
  auto set = agreed_set(rep, SetKind::independent);
  return {std::move(set), std::move(rep)};
}

}  // namespace clique::algo
