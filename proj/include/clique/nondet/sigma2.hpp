#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "clique/generators.hpp"
#include "clique/primitives.hpp"
#include "clique/nondet/alternation.hpp"

namespace clique::nondet {

struct GraphPredicate {
  std::string name;
  std::function<bool(const Graph&)> holds;
};

inline GraphPredicate has_edge_predicate() {
  return {"has-edge", [](const Graph& g) { return g.edge_count() > 0; }};
}

inline GraphPredicate connected_predicate() {
  return {"connected", [](const Graph& g) {
            if (g.n() == 0) return true;
            NodeSet seen(g.n());
            std::vector<NodeId> stack{1};
            seen.set(0);
            while (!stack.empty()) {
              const NodeId v = stack.back();
              stack.pop_back();
              for (NodeId u : g.neighbours(v))
                if (!seen.test(u - 1)) {
                  seen.set(u - 1);
                  stack.push_back(u);
                }
            }
            return seen.all();
          }};
}

inline GraphPredicate has_triangle_predicate() {
  return {"has-triangle", [](const Graph& g) {
            for (auto [u, v] : g.edges())
              if ((g.row(u) & g.row(v)).any()) return true;
            return false;
          }};
}

inline GraphPredicate universal_predicate() {
  return {"all", [](const Graph&) { return true; }};
}

inline GraphPredicate parse_predicate(const std::string& name) {
  for (auto p : {has_edge_predicate(), connected_predicate(), has_triangle_predicate(), universal_predicate()})
    if (p.name == name) return p;
  throw FormatError("unknown predicate '" + name + "'");
}

// Bits of the universal label: an index into the C(n,2) guessed pair bits,
// taken modulo C(n,2).
inline std::size_t sigma2_index_bits(std::size_t n) { return ceil_log2(pair_count(n)); }

// Verifier of the Sigma_2 protocol. z_1(v) is a guessed graph G'_v as C(n,2)
// upper-triangle bits; z_2(v) picks one of those bits.
//
//   round 1             owners share pair bits
//   rounds 2..1+R       v broadcasts (index, G'_v[index]), R = ceil((i + 1) / b)
//   local               v rejects if some broadcast bit differs from its own
//                       guess, or names a pair at v whose true bit differs;
//                       otherwise v accepts iff G'_v is in L
class Sigma2Verifier {
public:
  explicit Sigma2Verifier(GraphPredicate language) : language_(std::move(language)) {}

  struct State {
    std::size_t n = 0;
    NodeId id = 0;
    std::vector<OwnedBit> owned;
    NodeSet row;
    BitVector guess;
    BitVector probe;                  // index bits then the guessed bit
    std::vector<BitVector> heard;     // heard[u - 1]
    bool verdict = false;
  };

  std::size_t guess_bits(std::size_t n) const { return pair_count(n); }
  std::size_t index_bits(std::size_t n) const { return sigma2_index_bits(n); }

  std::size_t rounds(std::size_t n) const { return 1 + broadcast_rounds(n, index_bits(n) + 1); }

  State init(const NodeContext& ctx) const {
    const std::size_t n = ctx.n, gb = guess_bits(n), ib = index_bits(n);
    if (ctx.aux.size() != gb + ib) throw FormatError("sigma2 label must have C(n,2) + index bits");
    State s;
    s.n = n;
    s.id = ctx.id;
    s.owned = ctx.owned;
    s.row = row_from_owned(n, ctx.owned);
    s.guess = slice(ctx.aux, 0, gb);
    const std::size_t index = from_bits(ctx.aux, gb, ib) % gb;
    s.probe = to_bits(index, ib);
    s.probe.push_back(s.guess[index]);
    s.heard.assign(n, {});
    return s;
  }

  std::vector<Draft> send(const State& s, std::size_t round) const {
    if (round == 1) return share_owned_bits(s.owned);
    const std::size_t b = bandwidth(s.n), off = (round - 2) * b;
    return to_all(s.n, s.id, slice(s.probe, off, std::min(b, s.probe.size() - off)));
  }

  void receive(State& s, std::size_t round, std::span<const Message> inbox) const {
    if (round == 1) absorb_shared_bits(s.row, inbox);
    else
      for (const auto& m : inbox) append(s.heard[m.src - 1], m.payload);
    if (round == rounds(s.n)) s.verdict = check(s);
  }

  bool halted(const State&) const { return false; }

  BitVector output(const State& s) const { return BitVector{s.verdict}; }

  Graph guessed_graph(std::size_t n, const BitVector& guess) const {
    Graph g(n);
    for (std::size_t i = 0; i < guess.size(); ++i)
      if (guess[i]) {
        const auto [u, v] = pair_at(n, i);
        g.add_edge(u, v);
      }
    return g;
  }

private:
  bool check(const State& s) const {
    const std::size_t ib = index_bits(s.n);
    for (NodeId u = 1; u <= s.n; ++u) {
      if (u == s.id) continue;
      const auto& m = s.heard[u - 1];
      const std::size_t index = from_bits(m, 0, ib);
      const bool bit = m[ib];
      if (index >= s.guess.size()) return false;
      if (bit != s.guess[index]) return false;
      const auto [a, c] = pair_at(s.n, index);
      if (a == s.id && bit != s.row.test(c - 1)) return false;
      if (c == s.id && bit != s.row.test(a - 1)) return false;
    }
    return language_.holds(guessed_graph(s.n, s.guess));
  }

  GraphPredicate language_;
};

inline AlternationSpec sigma2_universal_protocol(const GraphPredicate& language) {
  const Sigma2Verifier verifier(language);
  return make_alternation_spec(verifier, 2, Quantifier::exists, [](std::size_t n, std::size_t level) {
    return level == 1 ? pair_count(n) : sigma2_index_bits(n);
  });
}

// The honest existential move: every node guesses G itself.
inline Labelling honest_guess(const Graph& g) {
  BitVector bits(pair_count(g.n()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const auto [u, v] = pair_at(g.n(), i);
    bits[i] = g.adjacent(u, v);
  }
  return Labelling{std::vector<BitVector>(g.n(), bits), bits.size()};
}

struct AuditResult {
  bool value = false;          // audited truth value of the game
  std::size_t checked_guesses = 0;
};

// Evaluation when the full game tree is beyond the guard. For G in L: the
// honest guess against every universal move. For G not in L: every sampled
// guess (the honest one, every "all nodes guess G xor one pair" graph in L,
// and `samples` random ones) must have a refuting universal move.
inline AuditResult audit_sigma2(const GraphPredicate& language, const Graph& g, std::size_t samples,
                                std::uint64_t seed) {
  const AlternationSpec spec = sigma2_universal_protocol(language);
  AuditResult out;
  if (language.holds(g)) {
    out.checked_guesses = 1;
    out.value = evaluate_alternation(spec, g, {honest_guess(g)});
    return out;
  }
  std::vector<Labelling> guesses{honest_guess(g)};
  for (std::size_t i = 0; i < pair_count(g.n()); ++i) {
    Labelling z = honest_guess(g);
    for (auto& l : z.labels) l[i] = !l[i];
    if (language.holds(Sigma2Verifier(language).guessed_graph(g.n(), z.labels.front()))) guesses.push_back(z);
  }
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    Labelling z{std::vector<BitVector>(g.n()), pair_count(g.n())};
    for (auto& l : z.labels)
      for (std::size_t j = 0; j < pair_count(g.n()); ++j) l.push_back(rng.next() & 1U);
    guesses.push_back(std::move(z));
  }
  out.value = false;
  for (const auto& z : guesses) {
    ++out.checked_guesses;
    if (evaluate_alternation(spec, g, {z})) {
      out.value = true;
      break;
    }
  }
  return out;
}

}  // namespace clique::nondet
