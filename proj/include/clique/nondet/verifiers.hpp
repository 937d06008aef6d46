#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "clique/engine.hpp"

namespace clique::nondet {

enum class CorpusKind { two_colouring, degree, hamiltonian_path, spanning_tree, always_accept };

inline const std::vector<CorpusKind>& corpus_kinds() {
  static const std::vector<CorpusKind> all{CorpusKind::two_colouring, CorpusKind::degree, CorpusKind::hamiltonian_path,
                                           CorpusKind::spanning_tree, CorpusKind::always_accept};
  return all;
}

inline std::string to_string(CorpusKind k) {
  switch (k) {
    case CorpusKind::two_colouring: return "two-colouring";
    case CorpusKind::degree: return "degree";
    case CorpusKind::hamiltonian_path: return "hamiltonian-path";
    case CorpusKind::spanning_tree: return "spanning-tree";
    case CorpusKind::always_accept: return "always-accept";
  }
  return "?";
}

inline CorpusKind parse_corpus_kind(const std::string& s) {
  for (auto k : corpus_kinds())
    if (to_string(k) == s) return k;
  throw FormatError("unknown verifier '" + s + "'");
}

// The fixed verifier corpus. Every label is exactly S(n) bits:
//
//   two-colouring     S = 1     label = colour; neighbours differ
//   degree            S = b     label = own degree as an integer
//   hamiltonian-path  S = b     label = position; positions are a
//                               permutation and position p + 1 is a neighbour
//   spanning-tree     S = b     label = parent id, the root names itself;
//                               one root, no cycles, own parent edge exists
//   always-accept     S = 1     label ignored
//
// Round 1 shares input bits, then every label is broadcast in ceil(S / b)
// rounds. Every message is exactly b bits and every link is used in every
// round, so transcripts have a fixed shape. A label of the wrong length is
// broadcast padded and its owner rejects.
class CorpusVerifier {
public:
  explicit CorpusVerifier(CorpusKind kind) : kind_(kind) {}

  struct State {
    std::size_t n = 0;
    NodeId id = 0;
    std::vector<OwnedBit> owned;
    NodeSet row;
    bool well_formed = false;
    BitVector own;                  // own label padded to S
    std::vector<BitVector> labels;  // labels[u - 1] as received
    bool verdict = false;
  };

  CorpusKind kind() const { return kind_; }

  std::size_t label_bound(std::size_t n) const {
    return kind_ == CorpusKind::two_colouring || kind_ == CorpusKind::always_accept ? 1 : bandwidth(n);
  }

  std::size_t rounds(std::size_t n) const { return 1 + (label_bound(n) + bandwidth(n) - 1) / bandwidth(n); }

  State init(const NodeContext& ctx) const {
    State s;
    s.n = ctx.n;
    s.id = ctx.id;
    s.owned = ctx.owned;
    s.row = row_from_owned(ctx.n, ctx.owned);
    const std::size_t size = label_bound(ctx.n);
    s.well_formed = ctx.aux.size() == size;
    s.own = ctx.aux;
    s.own.resize(size, false);
    s.labels.assign(ctx.n, {});
    s.labels[ctx.id - 1] = s.own;
    return s;
  }

  std::vector<Draft> send(const State& s, std::size_t round) const {
    const std::size_t b = bandwidth(s.n);
    std::vector<Draft> out;
    out.reserve(s.n - 1);
    if (round == 1) {
      for (NodeId u = 1; u <= s.n; ++u) {
        if (u == s.id) continue;
        BitVector word(b, false);
        word[0] = owns(s.n, s.id, u) && s.row.test(u - 1);
        out.push_back({u, std::move(word)});
      }
      return out;
    }
    const std::size_t off = (round - 2) * b;
    BitVector word = slice(s.own, off, std::min(b, s.own.size() - off));
    word.resize(b, false);
    return to_all(s.n, s.id, word);
  }

  void receive(State& s, std::size_t round, std::span<const Message> inbox) const {
    const std::size_t size = label_bound(s.n);
    if (round == 1) {
      for (const auto& m : inbox)
        if (owns(s.n, m.src, s.id) && m.payload[0]) s.row.set(m.src - 1);
    } else {
      for (const auto& m : inbox) append(s.labels[m.src - 1], m.payload);
    }
    if (round == rounds(s.n)) {
      for (auto& l : s.labels) l.resize(size, false);
      s.verdict = s.well_formed && check(s);
    }
  }

  bool halted(const State&) const { return false; }

  BitVector output(const State& s) const { return BitVector{s.verdict}; }

private:
  bool check(const State& s) const {
    const std::size_t n = s.n;
    auto value = [&](NodeId u) { return from_bits(s.labels[u - 1]); };
    switch (kind_) {
      case CorpusKind::two_colouring:
        for (NodeId u = 1; u <= n; ++u)
          if (s.row.test(u - 1) && s.labels[u - 1] == s.own) return false;
        return true;
      case CorpusKind::degree: return value(s.id) == s.row.count();
      case CorpusKind::hamiltonian_path: {
        std::vector<NodeId> at(n, 0);
        for (NodeId u = 1; u <= n; ++u) {
          const auto p = value(u);
          if (p >= n || at[p] != 0) return false;
          at[p] = u;
        }
        const auto mine = value(s.id);
        return mine + 1 == n || s.row.test(at[mine + 1] - 1);
      }
      case CorpusKind::spanning_tree: {
        std::vector<NodeId> parent(n + 1, 0);
        NodeId root = 0;
        for (NodeId u = 1; u <= n; ++u) {
          const auto p = value(u) + 1;
          if (p > n) return false;
          parent[u] = static_cast<NodeId>(p);
          if (p == u) {
            if (root != 0) return false;
            root = u;
          }
        }
        if (root == 0) return false;
        for (NodeId u = 1; u <= n; ++u) {
          NodeId at = u;
          for (std::size_t steps = 0; at != root; ++steps) {
            if (steps >= n) return false;
            at = parent[at];
          }
        }
        return s.id == root || s.row.test(parent[s.id] - 1);
      }
      case CorpusKind::always_accept: return true;
    }
    return false;
  }

  CorpusKind kind_;
};

}  // namespace clique::nondet
