#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clique/guard.hpp"
#include "clique/nondet/normal_form.hpp"

namespace clique::nondet {

// Default constant in the O(log n) label width: labels have at most
// c_label * ceil(log2 n) bits.
inline constexpr std::size_t default_c_label = 4;

// What node u sees when judging the label of {u, v}: its row in G and the
// labels of all its incident clique edges (incident[w - 1], empty at u).
struct EdgeView {
  std::size_t n;
  NodeId u, v;
  const NodeSet& row;
  std::span<const BitVector> incident;
};

struct NeighbourhoodConstraint {
  std::string name;
  std::function<std::size_t(std::size_t n)> label_bits;
  std::function<bool(const EdgeView&, const BitVector& label)> allow;
};

// Labels of all clique edges, indexed by pair_index.
struct EdgeLabelling {
  std::size_t n = 0;
  std::vector<BitVector> labels;

  const BitVector& at(NodeId u, NodeId v) const { return labels.at(pair_index(n, u, v)); }
  BitVector& at(NodeId u, NodeId v) { return labels.at(pair_index(n, u, v)); }
};

inline void check_edge_labels(const NeighbourhoodConstraint& c, const EdgeLabelling& l, std::size_t n,
                              std::size_t c_label = default_c_label) {
  if (l.n != n || l.labels.size() != pair_count(n)) throw FormatError("edge labelling does not cover the clique");
  const std::size_t width = c.label_bits(n);
  if (width > c_label * bandwidth(n))
    throw FormatError("constraint " + c.name + " uses " + std::to_string(width) + "-bit labels, above " +
                      std::to_string(c_label) + " * ceil(log2 n)");
  for (std::size_t i = 0; i < l.labels.size(); ++i)
    if (l.labels[i].size() != width) {
      const auto [u, v] = pair_at(n, i);
      throw FormatError("label of {" + std::to_string(u) + "," + std::to_string(v) + "} has " +
                        std::to_string(l.labels[i].size()) + " bits, expected " + std::to_string(width));
    }
}

// Distributed check. The owner of each pair holds its label as aux input
// (labels of owned pairs, partner ascending). Round 1 shares input bits,
// then ceil(w / b) rounds hand every label to the other endpoint; each node
// evaluates the constraint on all its incident edges.
class EdgeLabelCheck {
public:
  explicit EdgeLabelCheck(std::shared_ptr<const NeighbourhoodConstraint> c) : c_(std::move(c)) {}

  struct State {
    std::size_t n = 0;
    NodeId id = 0;
    std::vector<OwnedBit> owned;
    NodeSet row;
    std::vector<BitVector> incident;
    bool verdict = false;
  };

  std::size_t width(std::size_t n) const { return c_->label_bits(n); }

  std::size_t rounds(std::size_t n) const { return 1 + (width(n) + bandwidth(n) - 1) / bandwidth(n); }

  State init(const NodeContext& ctx) const {
    const std::size_t w = width(ctx.n);
    if (ctx.aux.size() != ctx.owned.size() * w) throw FormatError("edge label input has wrong length");
    State s;
    s.n = ctx.n;
    s.id = ctx.id;
    s.owned = ctx.owned;
    s.row = row_from_owned(ctx.n, ctx.owned);
    s.incident.assign(ctx.n, {});
    for (std::size_t i = 0; i < ctx.owned.size(); ++i) s.incident[ctx.owned[i].partner - 1] = slice(ctx.aux, i * w, w);
    return s;
  }

  std::vector<Draft> send(const State& s, std::size_t round) const {
    if (round == 1) return share_owned_bits(s.owned);
    const std::size_t b = bandwidth(s.n), off = (round - 2) * b;
    std::vector<Draft> out;
    for (const auto& o : s.owned) {
      const auto& label = s.incident[o.partner - 1];
      out.push_back({o.partner, slice(label, off, std::min(b, label.size() - off))});
    }
    return out;
  }

  void receive(State& s, std::size_t round, std::span<const Message> inbox) const {
    if (round == 1) absorb_shared_bits(s.row, inbox);
    else
      for (const auto& m : inbox) append(s.incident[m.src - 1], m.payload);
    if (round == rounds(s.n)) {
      s.verdict = true;
      const std::span<const BitVector> view(s.incident);
      for (NodeId v = 1; v <= s.n && s.verdict; ++v)
        if (v != s.id) s.verdict = c_->allow(EdgeView{s.n, s.id, v, s.row, view}, s.incident[v - 1]);
    }
  }

  bool halted(const State&) const { return false; }

  BitVector output(const State& s) const { return BitVector{s.verdict}; }

private:
  std::shared_ptr<const NeighbourhoodConstraint> c_;
};

inline std::vector<BitVector> edge_label_inputs(const Graph& g, const EdgeLabelling& l) {
  const InputAssignment inputs(g);
  std::vector<BitVector> aux(g.n());
  for (NodeId v = 1; v <= g.n(); ++v)
    for (const auto& o : inputs.bits(v)) append(aux[v - 1], l.at(v, o.partner));
  return aux;
}

inline Verdict check_edge_labelling(const NeighbourhoodConstraint& c, const Graph& g, const EdgeLabelling& l,
                                    const RunOptions& opt = {}, std::size_t c_label = default_c_label) {
  check_edge_labels(c, l, g.n(), c_label);
  const EdgeLabelCheck program(std::make_shared<const NeighbourhoodConstraint>(c));
  auto rep = run(program, g, edge_label_inputs(g, l), opt);
  const bool ok = rep.accepted();
  return {ok, std::move(rep)};
}

// Brute force over all labellings of width c.label_bits(n), in mask order.
inline std::optional<EdgeLabelling> find_edge_labelling(const NeighbourhoodConstraint& c, const Graph& g) {
  const std::size_t n = g.n(), w = c.label_bits(n), pairs = pair_count(n);
  check_guard("edge labelling enumeration", static_cast<double>(w * pairs));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (w * pairs)); ++mask) {
    const BitVector all = to_bits(mask, w * pairs);
    EdgeLabelling l{n, std::vector<BitVector>(pairs)};
    for (std::size_t i = 0; i < pairs; ++i) l.labels[i] = slice(all, i * w, w);
    if (check_edge_labelling(c, g, l).accepted) return l;
  }
  return std::nullopt;
}

// Label = presence bit of the pair in G.
inline NeighbourhoodConstraint presence_constraint() {
  return {"presence", [](std::size_t) { return std::size_t{1}; },
          [](const EdgeView& e, const BitVector& label) { return label == BitVector{e.row.test(e.v - 1)}; }};
}

inline EdgeLabelling presence_labelling(const Graph& g) {
  EdgeLabelling l{g.n(), std::vector<BitVector>(pair_count(g.n()))};
  for (std::size_t i = 0; i < l.labels.size(); ++i) {
    const auto [u, v] = pair_at(g.n(), i);
    l.labels[i] = BitVector{g.adjacent(u, v)};
  }
  return l;
}

// Label of {u, v}, u < v: for every round of A, the word u sends v and then
// the word v sends u. Each endpoint rebuilds its whole transcript from its
// incident labels and asks the normal form whether it is locally valid.
template <Verifier A>
NeighbourhoodConstraint transcript_constraint(std::shared_ptr<const NormalForm<A>> nf) {
  auto width = [nf](std::size_t n) { return 2 * nf->rounds(n) * bandwidth(n); };
  auto allow = [nf](const EdgeView& e, const BitVector&) {
    const auto t = nf->shape(e.n);
    TranscriptWords w{std::vector<std::uint32_t>(t.rounds * e.n, 0), std::vector<std::uint32_t>(t.rounds * e.n, 0)};
    for (NodeId x = 1; x <= e.n; ++x) {
      if (x == e.u) continue;
      const auto& label = e.incident[x - 1];
      if (label.size() != 2 * t.rounds * t.b) return false;
      for (std::size_t r = 1; r <= t.rounds; ++r) {
        const auto lo_hi = static_cast<std::uint32_t>(from_bits(label, (r - 1) * 2 * t.b, t.b));
        const auto hi_lo = static_cast<std::uint32_t>(from_bits(label, (r - 1) * 2 * t.b + t.b, t.b));
        w.sent[(r - 1) * e.n + (x - 1)] = e.u < x ? lo_hi : hi_lo;
        w.received[(r - 1) * e.n + (x - 1)] = e.u < x ? hi_lo : lo_hi;
      }
    }
    const auto owned = owned_bits_from_row(e.n, e.u, e.row);
    return nf->locally_valid(e.n, e.u, owned, encode_transcript(t, e.u, w));
  };
  return {"transcript", width, allow};
}

// Edge labels carrying a B-certificate; node labels must be consistent.
template <Verifier A>
EdgeLabelling edge_labels_from_transcripts(const NormalForm<A>& nf, const Labelling& z) {
  const std::size_t n = z.labels.size();
  const auto t = nf.shape(n);
  EdgeLabelling l{n, std::vector<BitVector>(pair_count(n))};
  for (std::size_t i = 0; i < l.labels.size(); ++i) {
    const auto [u, v] = pair_at(n, i);
    const auto wu = decode_transcript(t, u, z.labels[u - 1]);
    for (std::size_t r = 1; r <= t.rounds; ++r) {
      append(l.labels[i], to_bits(wu.sent[(r - 1) * n + (v - 1)], t.b));
      append(l.labels[i], to_bits(wu.received[(r - 1) * n + (v - 1)], t.b));
    }
  }
  return l;
}

}  // namespace clique::nondet
