#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "clique/generators.hpp"
#include "clique/nondet/alternation.hpp"
#include "clique/nondet/edge_labelling.hpp"
#include "clique/nondet/normal_form.hpp"
#include "clique/nondet/sigma2.hpp"
#include "clique/nondet/verifiers.hpp"
#include "clique/oracle.hpp"

using namespace clique;
using namespace clique::nondet;

namespace {

BitVector bits(const std::string& s) { return bits_from_string(s); }

bool hamiltonian_path_exists(const Graph& g) {
  std::vector<NodeId> order(g.n());
  for (NodeId v = 1; v <= g.n(); ++v) order[v - 1] = v;
  do {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < order.size() && ok; ++i) ok = g.adjacent(order[i], order[i + 1]);
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

bool expected_membership(CorpusKind kind, const Graph& g) {
  switch (kind) {
    case CorpusKind::two_colouring: return oracle::chromatic_number_at_most(g, 2);
    case CorpusKind::degree: return true;
    case CorpusKind::hamiltonian_path: return hamiltonian_path_exists(g);
    case CorpusKind::spanning_tree: return connected_predicate().holds(g);
    case CorpusKind::always_accept: return true;
  }
  return false;
}

// Sends one-bit messages, so it has no fixed-shape transcript.
struct NarrowVerifier {
  struct State {
    std::size_t n;
    NodeId id;
  };
  std::size_t label_bound(std::size_t) const { return 1; }
  std::size_t rounds(std::size_t) const { return 1; }
  State init(const NodeContext& c) const { return {c.n, c.id}; }
  std::vector<Draft> send(const State& s, std::size_t) const { return to_all(s.n, s.id, BitVector{true}); }
  void receive(State&, std::size_t, std::span<const Message>) const {}
  bool halted(const State&) const { return false; }
  BitVector output(const State&) const { return {true}; }
};

}  // namespace

TEST(Certificates, DegreeVerifier) {
  const CorpusVerifier degree(CorpusKind::degree);
  const Graph k3 = complete_graph(3);
  EXPECT_TRUE(verify_certificate(degree, k3, {bits("10"), bits("10"), bits("10")}).accepted);
  EXPECT_FALSE(verify_certificate(degree, k3, {bits("10"), bits("01"), bits("10")}).accepted);
  EXPECT_THROW(verify_certificate(degree, k3, {bits("10"), bits("100"), bits("10")}), FormatError);
}

TEST(Certificates, HamiltonianPathOnP4) {
  const CorpusVerifier ham(CorpusKind::hamiltonian_path);
  const Graph p4 = path_graph(4);
  const auto ok = verify_certificate(ham, p4, {bits("00"), bits("01"), bits("10"), bits("11")});
  EXPECT_TRUE(ok.accepted);
  EXPECT_EQ(ok.report.rounds, 2U);
  EXPECT_FALSE(verify_certificate(ham, p4, {bits("00"), bits("10"), bits("01"), bits("11")}).accepted);
}

TEST(Certificates, FullWidthMessages) {
  for (auto kind : corpus_kinds()) {
    const CorpusVerifier v(kind);
    const Graph g = erdos_renyi(6, 0.5, 1);
    const auto z = labelling_from_mask(6, v.label_bound(6), 5);
    const auto rep = verify_certificate(v, g, z).report;
    for (NodeId a = 1; a <= 6; ++a)
      for (NodeId b = 1; b <= 6; ++b)
        if (a != b) {
          EXPECT_EQ(rep.load(a, b), rep.rounds);
        }
    EXPECT_EQ(rep.total_bits, rep.messages * bandwidth(6));
  }
}

TEST(Certificates, ExistsExamples) {
  const CorpusVerifier col(CorpusKind::two_colouring);
  EXPECT_TRUE(exists_certificate(col, cycle_graph(4)));
  EXPECT_FALSE(exists_certificate(col, cycle_graph(5)));
  for (auto kind : corpus_kinds()) {
    const CorpusVerifier v(kind);
    const Graph g = cycle_graph(4);
    EXPECT_EQ(exists_certificate(v, g, 0), run(v, g, std::vector<BitVector>(4)).accepted());
  }
}

TEST(Certificates, GuardRejectsLargeSpaces) {
  EXPECT_THROW(exists_certificate(CorpusVerifier(CorpusKind::degree), Graph(9)), GuardExceeded);
}

TEST(Certificates, CorpusDecidesItsLanguage) {
  for (std::size_t n = 2; n <= 4; ++n)
    for_each_graph(n, [&](const Graph& g) {
      for (auto kind : corpus_kinds())
        EXPECT_EQ(exists_certificate(CorpusVerifier(kind), g), expected_membership(kind, g))
            << to_string(kind) << "\n" << to_graph_text(g);
    });
}

TEST(Certificates, FileRoundTrip) {
  const Labelling z{{bits("101"), {}, bits("1")}, 3};
  std::istringstream in(certificate_text(z));
  EXPECT_EQ(parse_certificate(in, 3, 3), z);
  std::istringstream plain("1 a\n2 -\n3 8 1\n");
  const auto p = parse_certificate(plain, 3, 4);
  EXPECT_EQ(p.labels[0], bits("1010"));
  EXPECT_TRUE(p.labels[1].empty());
  EXPECT_EQ(p.labels[2], bits("1"));
  std::istringstream over("1 ff\n");
  EXPECT_THROW(parse_certificate(over, 2, 4), FormatError);
}

TEST(NormalForm, ShapeAndBound) {
  const NormalForm nf{CorpusVerifier(CorpusKind::degree)};
  EXPECT_EQ(nf.rounds(4), 2U);
  EXPECT_EQ(nf.label_bound(4), 2U * 2 * 3 * 2);
  EXPECT_EQ(nf.label_bound(2), 4U);
}

TEST(NormalForm, RejectsNarrowVerifier) {
  const NormalForm nf{NarrowVerifier{}};
  EXPECT_THROW(nf.locally_valid(3, 1, {}, BitVector(nf.label_bound(3))), Error);
}

TEST(NormalForm, Examples) {
  const NormalForm always{CorpusVerifier(CorpusKind::always_accept)};
  EXPECT_TRUE(exists_certificate(always, path_graph(3)));
  const NormalForm col{CorpusVerifier(CorpusKind::two_colouring)};
  EXPECT_TRUE(exists_certificate(col, cycle_graph(4)));
  EXPECT_FALSE(exists_certificate(col, cycle_graph(5)));
}

TEST(NormalForm, RunTranscriptsAreAccepted) {
  const Graph g = cycle_graph(4);
  for (auto kind : corpus_kinds()) {
    const NormalForm nf{CorpusVerifier(kind)};
    const auto z = find_certificate(nf.inner(), g, nf.inner().label_bound(4));
    if (!z) continue;
    const Labelling t = transcripts_of_run(nf, g, *z);
    EXPECT_TRUE(verify_certificate(nf, g, t).accepted);
    for (std::size_t flip_at : {0U, 5U, 17U}) {
      Labelling bad = t;
      bad.labels[1][flip_at] = !bad.labels[1][flip_at];
      EXPECT_FALSE(verify_certificate(nf, g, bad).accepted);
    }
  }
}

TEST(NormalForm, SearchMatchesBruteForceOnTwoNodes) {
  for_each_graph(2, [](const Graph& g) {
    for (auto kind : corpus_kinds()) {
      const NormalForm nf{CorpusVerifier(kind)};
      EXPECT_EQ(exists_certificate(nf, g, nf.label_bound(2)), exists_certificate(nf, g)) << to_string(kind);
    }
  });
}

// Unpruned generation must list exactly the labels the black-box local check
// accepts.
TEST(NormalForm, GenerationMatchesLocalCheckOnThreeNodes) {
  for (const Graph& g : {path_graph(3)})
    for (auto kind : corpus_kinds()) {
      const NormalForm nf{CorpusVerifier(kind)};
      const auto t = nf.shape(3);
      const auto gen = accepting_transcripts(nf, g, false);
      const InputAssignment inputs(g);
      for (NodeId v = 1; v <= 3; ++v) {
        std::set<BitVector> generated, filtered;
        for (const auto& w : gen[v - 1]) generated.insert(encode_transcript(t, v, w));
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << t.length()); ++m) {
          const BitVector label = to_bits(m, t.length());
          if (nf.locally_valid(3, v, inputs.bits(v), label)) filtered.insert(label);
        }
        EXPECT_EQ(generated, filtered) << to_string(kind) << " node " << v;
      }
    }
}

TEST(NormalForm, EquivalenceAndLengthUpToFour) {
  for (std::size_t n = 2; n <= 4; ++n)
    for_each_graph(n, [&](const Graph& g) {
      for (auto kind : corpus_kinds()) {
        const NormalForm nf{CorpusVerifier(kind)};
        const auto w = find_normal_form_certificate(nf, g);
        EXPECT_EQ(exists_certificate(nf.inner(), g), w.has_value()) << to_string(kind) << "\n" << to_graph_text(g);
        if (w) {
          for (const auto& l : w->labels) EXPECT_LE(l.size(), 2 * nf.rounds(n) * (n - 1) * bandwidth(n));
        }
      }
    });
}

TEST(NormalForm, EquivalenceSampledFive) {
  SplitMix64 rng(31);
  for (int i = 0; i < 4; ++i) {
    const Graph g = erdos_renyi(5, 0.5, rng.next());
    for (auto kind : corpus_kinds()) {
      const NormalForm nf{CorpusVerifier(kind)};
      EXPECT_EQ(exists_certificate(nf.inner(), g), exists_certificate(nf, g)) << to_string(kind);
    }
  }
}

TEST(EdgeLabelling, PresenceConstraint) {
  const auto c = presence_constraint();
  const Graph g = erdos_renyi(6, 0.5, 2);
  auto l = presence_labelling(g);
  const auto ok = check_edge_labelling(c, g, l);
  EXPECT_TRUE(ok.accepted);
  EXPECT_LE(ok.report.rounds, 2U);
  l.at(2, 5)[0] = !l.at(2, 5)[0];
  EXPECT_FALSE(check_edge_labelling(c, g, l).accepted);
  l.at(2, 5) = bits("01");
  EXPECT_THROW(check_edge_labelling(c, g, l), FormatError);
}

TEST(EdgeLabelling, WidthCap) {
  NeighbourhoodConstraint wide{"wide", [](std::size_t n) { return 5 * bandwidth(n); },
                               [](const EdgeView&, const BitVector&) { return true; }};
  const Graph g(4);
  EdgeLabelling l{4, std::vector<BitVector>(6, BitVector(10))};
  EXPECT_THROW(check_edge_labelling(wide, g, l), FormatError);
  EXPECT_NO_THROW(check_edge_labelling(wide, g, l, {}, 5));
}

TEST(EdgeLabelling, ConstantRounds) {
  const auto presence = presence_constraint();
  const auto nf = std::make_shared<const NormalForm<CorpusVerifier>>(CorpusVerifier(CorpusKind::degree));
  const auto transcript = transcript_constraint(nf);
  for (std::size_t n : {4U, 8U, 16U, 32U}) {
    const Graph g = erdos_renyi(n, 0.3, n);
    EXPECT_EQ(check_edge_labelling(presence, g, presence_labelling(g)).report.rounds, 2U);
    EdgeLabelling zero{n, std::vector<BitVector>(pair_count(n), BitVector(transcript.label_bits(n)))};
    if (n <= 8) {
      EXPECT_EQ(check_edge_labelling(transcript, g, zero).report.rounds, 5U);
    }
    EXPECT_EQ(EdgeLabelCheck(std::make_shared<const NeighbourhoodConstraint>(transcript)).rounds(n), 5U);
  }
}

TEST(EdgeLabelling, TranscriptConstraintOnTwoNodesMatchesCertificates) {
  for_each_graph(2, [](const Graph& g) {
    for (auto kind : corpus_kinds()) {
      const auto nf = std::make_shared<const NormalForm<CorpusVerifier>>(CorpusVerifier(kind));
      const auto c = transcript_constraint(nf);
      EXPECT_EQ(find_edge_labelling(c, g).has_value(), exists_certificate(nf->inner(), g)) << to_string(kind);
    }
  });
}

TEST(EdgeLabelling, TranscriptConstraintFromWitnesses) {
  for (const Graph& g : {cycle_graph(4), path_graph(3), cycle_graph(3), star_graph(4)})
    for (auto kind : corpus_kinds()) {
      const auto nf = std::make_shared<const NormalForm<CorpusVerifier>>(CorpusVerifier(kind));
      const auto c = transcript_constraint(nf);
      const auto w = find_normal_form_certificate(*nf, g);
      EXPECT_EQ(w.has_value(), exists_certificate(nf->inner(), g));
      if (!w) continue;
      auto l = edge_labels_from_transcripts(*nf, *w);
      EXPECT_TRUE(check_edge_labelling(c, g, l).accepted) << to_string(kind);
      l.labels[0][0] = !l.labels[0][0];
      EXPECT_FALSE(check_edge_labelling(c, g, l).accepted) << to_string(kind);
    }
}

TEST(Alternation, SigmaOneIsExistsCertificate) {
  for (const Graph& g : {cycle_graph(4), cycle_graph(5), complete_graph(3)})
    for (auto kind : {CorpusKind::two_colouring, CorpusKind::degree}) {
      const CorpusVerifier v(kind);
      const auto spec = make_alternation_spec(v, 1, Quantifier::exists,
                                              [v](std::size_t n, std::size_t) { return v.label_bound(n); });
      EXPECT_EQ(evaluate_alternation(spec, g), exists_certificate(v, g));
    }
}

TEST(Alternation, PiOneAlwaysAccept) {
  const CorpusVerifier v(CorpusKind::always_accept);
  const auto spec = make_alternation_spec(v, 1, Quantifier::forall, [](std::size_t, std::size_t) { return 1; });
  EXPECT_TRUE(evaluate_alternation(spec, cycle_graph(5)));
  const CorpusVerifier col(CorpusKind::two_colouring);
  const auto all = make_alternation_spec(col, 1, Quantifier::forall, [](std::size_t, std::size_t) { return 1; });
  EXPECT_FALSE(evaluate_alternation(all, cycle_graph(4)));
}

TEST(Alternation, GuardAndFixedPrefix) {
  const auto spec = sigma2_universal_protocol(has_edge_predicate());
  EXPECT_THROW(evaluate_alternation(spec, complete_graph(4)), GuardExceeded);
  EXPECT_TRUE(evaluate_alternation(spec, complete_graph(4), {honest_guess(complete_graph(4))}));
  EXPECT_THROW(evaluate_alternation(spec, complete_graph(4), {Labelling{std::vector<BitVector>(4), 0}}), FormatError);
}

TEST(Alternation, PaddingIsMonotone) {
  for (std::size_t n = 2; n <= 3; ++n)
    for_each_graph(n, [&](const Graph& g) {
      for (auto kind : corpus_kinds()) {
        const CorpusVerifier v(kind);
        const auto spec =
            make_alternation_spec(v, 1, Quantifier::exists, [v](std::size_t m, std::size_t) { return v.label_bound(m); });
        const bool base = evaluate_alternation(spec, g);
        const bool back = evaluate_alternation(pad_quantifier(spec, 1, false), g);
        const bool front = evaluate_alternation(pad_quantifier(spec, 1, true), g);
        if (base) {
          EXPECT_TRUE(back);
          EXPECT_TRUE(front);
        }
        EXPECT_EQ(base, back);
        EXPECT_EQ(base, front);
      }
    });
}

TEST(Alternation, ComplementDuality) {
  for (std::size_t n = 2; n <= 3; ++n)
    for_each_graph(n, [&](const Graph& g) {
      for (auto kind : corpus_kinds()) {
        const CorpusVerifier v(kind);
        auto size = [v](std::size_t m, std::size_t) { return v.label_bound(m); };
        const auto sigma = make_alternation_spec(v, 1, Quantifier::exists, size);
        const auto pi = complement_spec(v, 1, Quantifier::exists, size);
        EXPECT_EQ(pi.first, Quantifier::forall);
        EXPECT_EQ(evaluate_alternation(sigma, g), !evaluate_alternation(pi, g));
      }
      const auto size2 = [](std::size_t m, std::size_t level) { return level == 1 ? pair_count(m) : sigma2_index_bits(m); };
      const Sigma2Verifier s2(connected_predicate());
      EXPECT_EQ(evaluate_alternation(make_alternation_spec(s2, 2, Quantifier::exists, size2), g),
                !evaluate_alternation(complement_spec(s2, 2, Quantifier::exists, size2), g));
    });
}

TEST(Sigma2, TwoNodeExamples) {
  const auto edge = sigma2_universal_protocol(has_edge_predicate());
  EXPECT_TRUE(evaluate_alternation(edge, complete_graph(2)));
  EXPECT_FALSE(evaluate_alternation(edge, Graph(2)));
  const auto all = sigma2_universal_protocol(universal_predicate());
  for_each_graph(3, [&](const Graph& g) { EXPECT_TRUE(evaluate_alternation(all, g)); });
}

TEST(Sigma2, ConstantRounds) {
  const Sigma2Verifier v(has_edge_predicate());
  EXPECT_EQ(v.rounds(2), 2U);
  EXPECT_EQ(v.rounds(3), 3U);
  EXPECT_EQ(v.rounds(4), 3U);
}

TEST(Sigma2, MembershipOnThreeNodes) {
  for (const auto& p : {has_edge_predicate(), connected_predicate(), has_triangle_predicate()}) {
    const auto spec = sigma2_universal_protocol(p);
    for_each_graph(3, [&](const Graph& g) { EXPECT_EQ(evaluate_alternation(spec, g), p.holds(g)) << p.name; });
  }
}

TEST(Sigma2, AuditOnFourNodes) {
  const auto p = has_triangle_predicate();
  for (const Graph& g : {complete_graph(4), cycle_graph(4), path_graph(4)}) {
    const auto a = audit_sigma2(p, g, 4, 1);
    EXPECT_EQ(a.value, p.holds(g));
    EXPECT_GE(a.checked_guesses, 1U);
  }
}
