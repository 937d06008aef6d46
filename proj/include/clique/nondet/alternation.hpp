#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "clique/guard.hpp"
#include "clique/nondet/labelling.hpp"

namespace clique::nondet {

enum class Quantifier { exists, forall };

inline Quantifier flip(Quantifier q) { return q == Quantifier::exists ? Quantifier::forall : Quantifier::exists; }

inline std::string to_string(Quantifier q) { return q == Quantifier::exists ? "exists" : "forall"; }

// Q_1 z_1 Q_2 z_2 ... Q_k z_k : A(G, z_1, ..., z_k) = 1 with strictly
// alternating quantifiers. Node v's aux input to A is z_1(v) z_2(v) ... z_k(v).
struct AlternationSpec {
  std::size_t k = 1;
  Quantifier first = Quantifier::exists;
  std::function<std::size_t(std::size_t n, std::size_t level)> size_bound;  // level in 1..k
  std::function<bool(const Graph&, const std::vector<BitVector>& aux)> accepts;

  Quantifier quantifier(std::size_t level) const { return (level - 1) % 2 == 0 ? first : flip(first); }
};

template <NodeProgram V>
AlternationSpec make_alternation_spec(V verifier, std::size_t k, Quantifier first,
                                      std::function<std::size_t(std::size_t, std::size_t)> size_bound) {
  if (k < 1) throw Error("alternation needs k >= 1");
  return {k, first, std::move(size_bound),
          [verifier = std::move(verifier)](const Graph& g, const std::vector<BitVector>& aux) {
            return run(verifier, g, aux).accepted();
          }};
}

// Per-node aux input from one labelling per level.
inline std::vector<BitVector> stack_labellings(std::size_t n, const std::vector<Labelling>& levels) {
  std::vector<BitVector> aux(n);
  for (const auto& z : levels)
    for (std::size_t v = 0; v < n; ++v) append(aux[v], z.labels.at(v));
  return aux;
}

inline double log2_game_space(const AlternationSpec& spec, std::size_t n) {
  double total = 0;
  for (std::size_t level = 1; level <= spec.k; ++level) total += static_cast<double>(n * spec.size_bound(n, level));
  return total;
}

namespace detail {

inline bool play(const AlternationSpec& spec, const Graph& g, std::vector<Labelling>& prefix) {
  const std::size_t level = prefix.size() + 1;
  if (level > spec.k) return spec.accepts(g, stack_labellings(g.n(), prefix));
  const std::size_t bits = spec.size_bound(g.n(), level);
  const bool want = spec.quantifier(level) == Quantifier::exists;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (g.n() * bits)); ++mask) {
    prefix.push_back(labelling_from_mask(g.n(), bits, mask));
    const bool value = play(spec, g, prefix);
    prefix.pop_back();
    if (value == want) return want;
  }
  return !want;
}

}  // namespace detail

// Exhaustive game-tree evaluation with short-circuiting. The levels in
// `fixed` are taken as given (each must have the level's label size); the
// rest are quantified. The guard covers the free levels only.
inline bool evaluate_alternation(const AlternationSpec& spec, const Graph& g, std::vector<Labelling> fixed = {}) {
  if (fixed.size() > spec.k) throw Error("more fixed levels than quantifiers");
  double free_bits = 0;
  for (std::size_t level = 1; level <= spec.k; ++level) {
    const std::size_t bits = spec.size_bound(g.n(), level);
    if (level <= fixed.size()) {
      for (const auto& l : fixed[level - 1].labels)
        if (l.size() != bits) throw FormatError("fixed level " + std::to_string(level) + " has a label of wrong size");
      if (fixed[level - 1].labels.size() != g.n()) throw FormatError("fixed level does not cover all nodes");
    } else {
      free_bits += static_cast<double>(g.n() * bits);
    }
  }
  check_guard("alternation game tree", free_bits);
  return detail::play(spec, g, fixed);
}

// Adds a level the verifier ignores, at the back or the front, with the
// quantifier that keeps alternation strict.
inline AlternationSpec pad_quantifier(const AlternationSpec& spec, std::size_t dummy_bits, bool at_front) {
  AlternationSpec out = spec;
  out.k = spec.k + 1;
  if (at_front) {
    out.first = flip(spec.first);
    out.size_bound = [inner = spec.size_bound, dummy_bits](std::size_t n, std::size_t level) {
      return level == 1 ? dummy_bits : inner(n, level - 1);
    };
    out.accepts = [spec, dummy_bits](const Graph& g, const std::vector<BitVector>& aux) {
      std::vector<BitVector> rest(aux.size());
      for (std::size_t v = 0; v < aux.size(); ++v) rest[v] = slice(aux[v], dummy_bits, aux[v].size() - dummy_bits);
      return spec.accepts(g, rest);
    };
  } else {
    out.size_bound = [inner = spec.size_bound, k = spec.k, dummy_bits](std::size_t n, std::size_t level) {
      return level == k + 1 ? dummy_bits : inner(n, level);
    };
    out.accepts = [spec, dummy_bits](const Graph& g, const std::vector<BitVector>& aux) {
      std::vector<BitVector> rest(aux.size());
      for (std::size_t v = 0; v < aux.size(); ++v) rest[v] = slice(aux[v], 0, aux[v].size() - dummy_bits);
      return spec.accepts(g, rest);
    };
  }
  return out;
}

// After P finishes, one extra round in which every node broadcasts its
// output bit; every node then outputs the AND of all bits, negated when
// `negate` is set. Turns "every node accepts" into a value all nodes agree on.
template <NodeProgram P>
class AgreedVerdict {
public:
  AgreedVerdict(P inner, bool negate) : inner_(std::move(inner)), negate_(negate) {}

  struct State {
    typename P::State inner;
    std::size_t n = 0;
    NodeId id = 0;
    bool all = true;
  };

  std::size_t rounds(std::size_t n) const { return inner_.rounds(n) + 1; }

  State init(const NodeContext& ctx) const { return {inner_.init(ctx), ctx.n, ctx.id, true}; }

  std::vector<Draft> send(const State& s, std::size_t round) const {
    if (round <= inner_.rounds(s.n)) return inner_.send(s.inner, round);
    return to_all(s.n, s.id, BitVector{own_accepts(s)});
  }

  void receive(State& s, std::size_t round, std::span<const Message> inbox) const {
    if (round <= inner_.rounds(s.n)) {
      inner_.receive(s.inner, round, inbox);
      return;
    }
    s.all = own_accepts(s);
    for (const auto& m : inbox) s.all = s.all && m.payload == BitVector{true};
  }

  bool halted(const State&) const { return false; }

  BitVector output(const State& s) const { return BitVector{s.all != negate_}; }

private:
  bool own_accepts(const State& s) const { return inner_.output(s.inner) == BitVector{true}; }

  P inner_;
  bool negate_;
};

// Pi_k spec of the complement: flipped quantifiers, negated agreed verdict.
template <NodeProgram V>
AlternationSpec complement_spec(V verifier, std::size_t k, Quantifier first,
                                std::function<std::size_t(std::size_t, std::size_t)> size_bound) {
  return make_alternation_spec(AgreedVerdict<V>(std::move(verifier), true), k, flip(first), std::move(size_bound));
}

}  // namespace clique::nondet
