#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "clique/guard.hpp"
#include "clique/nondet/labelling.hpp"

namespace clique::nondet {

// Fixed-shape transcript of one node of a T-round full-width verifier: for
// every round, for every peer in ascending order, the b-bit word sent to the
// peer followed by the b-bit word received from it.
struct TranscriptShape {
  std::size_t n, rounds, b;

  std::size_t length() const { return 2 * rounds * (n - 1) * b; }

  std::size_t peer_index(NodeId self, NodeId peer) const { return peer < self ? peer - 1 : peer - 2; }

  std::size_t offset(std::size_t round, NodeId self, NodeId peer, bool received) const {
    return (((round - 1) * (n - 1) + peer_index(self, peer)) * 2 + (received ? 1 : 0)) * b;
  }
};

// Words of one node's transcript, [(round - 1) * n + (peer - 1)]; the entry
// for the node itself is unused.
struct TranscriptWords {
  std::vector<std::uint32_t> sent, received;

  bool operator==(const TranscriptWords&) const = default;
};

inline BitVector encode_transcript(const TranscriptShape& t, NodeId self, const TranscriptWords& w) {
  BitVector out(t.length(), false);
  for (std::size_t r = 1; r <= t.rounds; ++r)
    for (NodeId u = 1; u <= t.n; ++u) {
      if (u == self) continue;
      const auto idx = (r - 1) * t.n + (u - 1);
      const BitVector s = to_bits(w.sent[idx], t.b), g = to_bits(w.received[idx], t.b);
      std::copy(s.begin(), s.end(), out.begin() + static_cast<std::ptrdiff_t>(t.offset(r, self, u, false)));
      std::copy(g.begin(), g.end(), out.begin() + static_cast<std::ptrdiff_t>(t.offset(r, self, u, true)));
    }
  return out;
}

inline TranscriptWords decode_transcript(const TranscriptShape& t, NodeId self, const BitVector& bits) {
  if (bits.size() != t.length()) throw FormatError("transcript has wrong length");
  TranscriptWords w{std::vector<std::uint32_t>(t.rounds * t.n, 0), std::vector<std::uint32_t>(t.rounds * t.n, 0)};
  for (std::size_t r = 1; r <= t.rounds; ++r)
    for (NodeId u = 1; u <= t.n; ++u) {
      if (u == self) continue;
      const auto idx = (r - 1) * t.n + (u - 1);
      w.sent[idx] = static_cast<std::uint32_t>(from_bits(bits, t.offset(r, self, u, false), t.b));
      w.received[idx] = static_cast<std::uint32_t>(from_bits(bits, t.offset(r, self, u, true), t.b));
    }
  return w;
}

// Normal form B of a full-width verifier A. B's label is a transcript of A;
// B runs T rounds:
//
//   1. the label must have exactly the transcript length
//   2. every round, B sends the recorded sent words and checks that what
//      arrives equals the recorded received words
//   3. some label z' of exactly S(n) bits makes A, replayed on the node's own
//      input against the recorded received words, send exactly the recorded
//      words and accept
template <Verifier A>
class NormalForm {
public:
  explicit NormalForm(A inner) : inner_(std::move(inner)) {}

  const A& inner() const { return inner_; }

  TranscriptShape shape(std::size_t n) const { return {n, inner_.rounds(n), bandwidth(n)}; }

  std::size_t label_bound(std::size_t n) const { return shape(n).length(); }

  std::size_t rounds(std::size_t n) const { return inner_.rounds(n); }

  struct State {
    std::size_t n = 0;
    NodeId id = 0;
    TranscriptWords words;
    bool ok = false;
  };

  State init(const NodeContext& ctx) const {
    const auto t = shape(ctx.n);
    State s;
    s.n = ctx.n;
    s.id = ctx.id;
    if (ctx.aux.size() != t.length()) {
      s.words = {std::vector<std::uint32_t>(t.rounds * t.n, 0), std::vector<std::uint32_t>(t.rounds * t.n, 0)};
      return s;
    }
    s.words = decode_transcript(t, ctx.id, ctx.aux);
    s.ok = replay_accepts(ctx.n, ctx.id, ctx.owned, s.words);
    return s;
  }

  std::vector<Draft> send(const State& s, std::size_t round) const {
    std::vector<Draft> out;
    for (NodeId u = 1; u <= s.n; ++u)
      if (u != s.id) out.push_back({u, to_bits(s.words.sent[(round - 1) * s.n + (u - 1)], bandwidth(s.n))});
    return out;
  }

  void receive(State& s, std::size_t round, std::span<const Message> inbox) const {
    if (inbox.size() != s.n - 1) s.ok = false;
    for (const auto& m : inbox)
      if (m.payload.size() != bandwidth(s.n) || from_bits(m.payload) != s.words.received[(round - 1) * s.n + (m.src - 1)])
        s.ok = false;
  }

  bool halted(const State&) const { return false; }

  BitVector output(const State& s) const { return BitVector{s.ok}; }

  // Steps 1 and 3 for one node, without communication.
  bool locally_valid(std::size_t n, NodeId v, const std::vector<OwnedBit>& owned, const BitVector& label) const {
    const auto t = shape(n);
    if (label.size() != t.length()) return false;
    return replay_accepts(n, v, owned, decode_transcript(t, v, label));
  }

  // One replay of A against recorded words. False when A's sends differ.
  bool replay_matches(std::size_t n, NodeId v, const std::vector<OwnedBit>& owned, const BitVector& z,
                      const TranscriptWords& w) const {
    auto state = inner_.init(NodeContext{n, v, owned, z});
    const std::size_t T = inner_.rounds(n);
    for (std::size_t r = 1; r <= T; ++r) {
      const auto sent = sent_words(n, v, inner_.send(state, r), r);
      for (NodeId u = 1; u <= n; ++u)
        if (u != v && sent[u - 1] != w.sent[(r - 1) * n + (u - 1)]) return false;
      std::vector<Message> inbox;
      for (NodeId u = 1; u <= n; ++u)
        if (u != v) inbox.push_back(Message{u, v, to_bits(w.received[(r - 1) * n + (u - 1)], bandwidth(n))});
      inner_.receive(state, r, std::span<const Message>(inbox));
    }
    return inner_.output(state) == BitVector{true};
  }

  // A's round-r words to every peer, [peer - 1]. A must send exactly one
  // b-bit message to every peer in every round.
  std::vector<std::uint32_t> sent_words(std::size_t n, NodeId v, const std::vector<Draft>& drafts, std::size_t r) const {
    std::vector<std::uint32_t> out(n, 0);
    std::vector<bool> hit(n, false);
    for (const auto& d : drafts) {
      if (d.dst < 1 || d.dst > n || d.dst == v || hit[d.dst - 1] || d.payload.size() != bandwidth(n))
        throw Error("normal form needs a full-width verifier (round " + std::to_string(r) + ", node " +
                    std::to_string(v) + ")");
      hit[d.dst - 1] = true;
      out[d.dst - 1] = static_cast<std::uint32_t>(from_bits(d.payload));
    }
    if (drafts.size() != n - 1)
      throw Error("normal form needs a full-width verifier (round " + std::to_string(r) + ", node " + std::to_string(v) +
                  ")");
    return out;
  }

private:
  bool replay_accepts(std::size_t n, NodeId v, const std::vector<OwnedBit>& owned, const TranscriptWords& w) const {
    const std::size_t S = inner_.label_bound(n);
    check_guard("normal form local label search", static_cast<double>(S));
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << S); ++z)
      if (replay_matches(n, v, owned, to_bits(z, S), w)) return true;
    return false;
  }

  A inner_;
};

// Accepting transcripts of every node, generated round by round by running A
// forward from every local label z'. With `prune`, the words a node may
// receive from u in round r are limited to words some surviving run of u
// sends in round r; without it every b-bit word is tried.
template <Verifier A>
std::vector<std::vector<TranscriptWords>> accepting_transcripts(const NormalForm<A>& nf, const Graph& g, bool prune) {
  const std::size_t n = g.n();
  const auto t = nf.shape(n);
  const std::size_t S = nf.inner().label_bound(n);
  const A& inner = nf.inner();
  const InputAssignment inputs(g);

  struct Partial {
    typename A::State state;
    TranscriptWords words;
  };
  std::vector<std::vector<Partial>> runs(n);
  check_guard("normal form local label search", static_cast<double>(S));
  for (NodeId v = 1; v <= n; ++v)
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << S); ++z)
      runs[v - 1].push_back({inner.init(NodeContext{n, v, inputs.bits(v), to_bits(z, S)}),
                             {std::vector<std::uint32_t>(t.rounds * n, 0), std::vector<std::uint32_t>(t.rounds * n, 0)}});

  const std::uint32_t word_count = std::uint32_t{1} << t.b;
  for (std::size_t r = 1; r <= t.rounds; ++r) {
    // domain[(u - 1) * n + (v - 1)]: words u may send v this round
    std::vector<std::vector<std::uint32_t>> domain(n * n);
    for (NodeId u = 1; u <= n; ++u)
      for (auto& p : runs[u - 1]) {
        const auto sent = nf.sent_words(n, u, inner.send(p.state, r), r);
        for (NodeId v = 1; v <= n; ++v)
          if (v != u) {
            p.words.sent[(r - 1) * n + (v - 1)] = sent[v - 1];
            domain[(u - 1) * n + (v - 1)].push_back(sent[v - 1]);
          }
      }
    for (auto& d : domain) {
      if (!prune) {
        d.resize(word_count);
        for (std::uint32_t x = 0; x < word_count; ++x) d[x] = x;
      }
      std::sort(d.begin(), d.end());
      d.erase(std::unique(d.begin(), d.end()), d.end());
    }

    for (NodeId v = 1; v <= n; ++v) {
      std::vector<NodeId> peers;
      double log2_branches = 0;
      for (NodeId u = 1; u <= n; ++u)
        if (u != v) {
          peers.push_back(u);
          log2_branches += std::log2(static_cast<double>(std::max<std::size_t>(1, domain[(u - 1) * n + (v - 1)].size())));
        }
      check_guard("normal form transcript generation",
                  log2_branches + std::log2(static_cast<double>(std::max<std::size_t>(1, runs[v - 1].size()))));
      std::vector<Partial> next;
      for (const auto& p : runs[v - 1]) {
        std::vector<std::size_t> pick(peers.size(), 0);
        bool empty = false;
        for (NodeId u : peers) empty = empty || domain[(u - 1) * n + (v - 1)].empty();
        if (empty) continue;
        while (true) {
          Partial q = p;
          std::vector<Message> inbox;
          for (std::size_t i = 0; i < peers.size(); ++i) {
            const NodeId u = peers[i];
            const auto word = domain[(u - 1) * n + (v - 1)][pick[i]];
            q.words.received[(r - 1) * n + (u - 1)] = word;
            inbox.push_back(Message{u, v, to_bits(word, t.b)});
          }
          inner.receive(q.state, r, std::span<const Message>(inbox));
          next.push_back(std::move(q));
          std::size_t i = 0;
          for (; i < peers.size(); ++i) {
            if (++pick[i] < domain[(peers[i] - 1) * n + (v - 1)].size()) break;
            pick[i] = 0;
          }
          if (i == peers.size()) break;
        }
      }
      runs[v - 1] = std::move(next);
    }
  }

  std::vector<std::vector<TranscriptWords>> out(n);
  for (NodeId v = 1; v <= n; ++v) {
    for (const auto& p : runs[v - 1])
      if (inner.output(p.state) == BitVector{true}) out[v - 1].push_back(p.words);
    auto& c = out[v - 1];
    auto key = [](const TranscriptWords& w) { return std::tie(w.sent, w.received); };
    std::sort(c.begin(), c.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return out;
}

// Finds a labelling accepted by B, or shows there is none: candidate
// transcripts per node, arc consistency on every link, then backtracking in
// node order. A found labelling is re-checked by running B.
template <Verifier A>
std::optional<Labelling> find_normal_form_certificate(const NormalForm<A>& nf, const Graph& g) {
  const std::size_t n = g.n();
  const auto t = nf.shape(n);
  if (t.rounds * t.b > 64) throw Error("normal form search supports at most 64 transcript bits per link");
  auto cand = accepting_transcripts(nf, g, true);

  auto link_key = [&](const TranscriptWords& w, NodeId peer, bool received) {
    std::uint64_t key = 0;
    for (std::size_t r = 1; r <= t.rounds; ++r)
      key = (key << t.b) | (received ? w.received : w.sent)[(r - 1) * n + (peer - 1)];
    return key;
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (NodeId v = 1; v <= n; ++v)
      for (NodeId u = 1; u <= n; ++u) {
        if (u == v) continue;
        std::vector<std::uint64_t> sends, gets;
        for (const auto& c : cand[v - 1]) sends.push_back(link_key(c, u, false));
        for (const auto& c : cand[u - 1]) gets.push_back(link_key(c, v, true));
        std::sort(sends.begin(), sends.end());
        std::sort(gets.begin(), gets.end());
        auto keep = [&](std::vector<TranscriptWords>& list, const std::vector<std::uint64_t>& other, NodeId peer,
                        bool received) {
          const auto before = list.size();
          std::erase_if(list, [&](const TranscriptWords& w) {
            return !std::binary_search(other.begin(), other.end(), link_key(w, peer, received));
          });
          changed = changed || list.size() != before;
        };
        keep(cand[v - 1], gets, u, false);
        keep(cand[u - 1], sends, v, true);
      }
  }
  for (const auto& c : cand)
    if (c.empty()) return std::nullopt;

  std::vector<const TranscriptWords*> chosen(n, nullptr);
  std::uint64_t steps = 0;
  const double limit = std::exp2(guard_log2());
  auto search = [&](auto&& self, NodeId v) -> bool {
    if (v > n) return true;
    for (const auto& c : cand[v - 1]) {
      if (static_cast<double>(++steps) > limit) throw GuardExceeded("normal form certificate search", guard_log2() + 1, guard_log2());
      bool fits = true;
      for (NodeId w = 1; w < v && fits; ++w)
        fits = link_key(c, w, false) == link_key(*chosen[w - 1], v, true) &&
               link_key(c, w, true) == link_key(*chosen[w - 1], v, false);
      if (!fits) continue;
      chosen[v - 1] = &c;
      if (self(self, v + 1)) return true;
    }
    return false;
  };
  if (!search(search, 1)) return std::nullopt;

  Labelling z{std::vector<BitVector>(n), t.length()};
  for (NodeId v = 1; v <= n; ++v) z.labels[v - 1] = encode_transcript(t, v, *chosen[v - 1]);
  if (!run(nf, g, z.labels).accepted()) throw InternalError("normal form search produced a rejected labelling");
  return z;
}

template <Verifier A>
bool exists_certificate(const NormalForm<A>& nf, const Graph& g) {
  return find_normal_form_certificate(nf, g).has_value();
}

// B-certificate made from an accepted run of A: every node's transcript.
template <Verifier A>
Labelling transcripts_of_run(const NormalForm<A>& nf, const Graph& g, const Labelling& z) {
  const std::size_t n = g.n();
  const auto t = nf.shape(n);
  // the engine does not keep message contents, so the run is replayed here
  const InputAssignment inputs(g);
  const A& inner = nf.inner();
  std::vector<typename A::State> states;
  for (NodeId v = 1; v <= n; ++v) states.push_back(inner.init(NodeContext{n, v, inputs.bits(v), z.labels[v - 1]}));
  std::vector<TranscriptWords> words(n, {std::vector<std::uint32_t>(t.rounds * n, 0),
                                          std::vector<std::uint32_t>(t.rounds * n, 0)});
  for (std::size_t r = 1; r <= t.rounds; ++r) {
    std::vector<std::vector<Message>> inbox(n);
    for (NodeId v = 1; v <= n; ++v) {
      const auto sent = nf.sent_words(n, v, inner.send(states[v - 1], r), r);
      for (NodeId u = 1; u <= n; ++u)
        if (u != v) {
          words[v - 1].sent[(r - 1) * n + (u - 1)] = sent[u - 1];
          words[u - 1].received[(r - 1) * n + (v - 1)] = sent[u - 1];
          inbox[u - 1].push_back(Message{v, u, to_bits(sent[u - 1], t.b)});
        }
    }
    for (NodeId v = 1; v <= n; ++v) inner.receive(states[v - 1], r, std::span<const Message>(inbox[v - 1]));
  }
  Labelling out{std::vector<BitVector>(n), t.length()};
  for (NodeId v = 1; v <= n; ++v) out.labels[v - 1] = encode_transcript(t, v, words[v - 1]);
  return out;
}

}  // namespace clique::nondet
