#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "clique/engine.hpp"
#include "clique/guard.hpp"

namespace clique::nondet {

// A verifier is a node program whose aux input is a label of at most
// label_bound(n) bits.
template <class V>
concept Verifier = NodeProgram<V> && requires(const V& v, std::size_t n) {
  { v.label_bound(n) } -> std::convertible_to<std::size_t>;
};

struct Labelling {
  std::vector<BitVector> labels;  // labels[v - 1]
  std::size_t size_bound = 0;

  bool operator==(const Labelling&) const = default;
};

inline void check_labelling(const Labelling& z, std::size_t n) {
  if (z.labels.size() != n)
    throw FormatError("labelling covers " + std::to_string(z.labels.size()) + " nodes, graph has " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (z.labels[i].size() > z.size_bound)
      throw FormatError("label of node " + std::to_string(i + 1) + " has " + std::to_string(z.labels[i].size()) +
                        " bits, bound is " + std::to_string(z.size_bound));
}

// Node-id-ascending concatenation of the labels.
inline BitVector concatenate(const Labelling& z) {
  BitVector out;
  for (const auto& l : z.labels) append(out, l);
  return out;
}

// Labelling number `mask`: node v gets bits [(v-1) S, v S) of the nS-bit
// big-endian expansion of mask.
inline Labelling labelling_from_mask(std::size_t n, std::size_t bits, std::uint64_t mask) {
  Labelling z{std::vector<BitVector>(n), bits};
  const BitVector all = to_bits(mask, n * bits);
  for (std::size_t v = 0; v < n; ++v) z.labels[v] = slice(all, v * bits, bits);
  return z;
}

struct Verdict {
  bool accepted = false;
  ExecutionReport report;
};

template <NodeProgram V>
Verdict verify_certificate(const V& verifier, const Graph& g, const Labelling& z, const RunOptions& opt = {}) {
  check_labelling(z, g.n());
  auto rep = run(verifier, g, z.labels, opt);
  const bool ok = rep.accepted();
  return {ok, std::move(rep)};
}

template <Verifier V>
Verdict verify_certificate(const V& verifier, const Graph& g, const std::vector<BitVector>& labels,
                           const RunOptions& opt = {}) {
  return verify_certificate(verifier, g, Labelling{labels, verifier.label_bound(g.n())}, opt);
}

// Brute force over every labelling whose labels are exactly size_bound bits
// long, in mask order. Returns the first accepted one.
template <NodeProgram V>
std::optional<Labelling> find_certificate(const V& verifier, const Graph& g, std::size_t size_bound) {
  const std::size_t total = g.n() * size_bound;
  check_guard("certificate enumeration", static_cast<double>(total));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << total); ++mask) {
    Labelling z = labelling_from_mask(g.n(), size_bound, mask);
    if (run(verifier, g, z.labels).accepted()) return z;
  }
  return std::nullopt;
}

template <NodeProgram V>
bool exists_certificate(const V& verifier, const Graph& g, std::size_t size_bound) {
  return find_certificate(verifier, g, size_bound).has_value();
}

template <Verifier V>
bool exists_certificate(const V& verifier, const Graph& g) {
  return exists_certificate(verifier, g, verifier.label_bound(g.n()));
}

// Certificate file: one line per node, "node_id hex [bit_length]". A hex of
// "-" is the empty label; without a length the label is 4 bits per digit.
inline Labelling parse_certificate(std::istream& in, std::size_t n, std::size_t size_bound) {
  Labelling z{std::vector<BitVector>(n), size_bound};
  std::vector<bool> seen(n, false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    long long id = 0;
    std::string hex;
    if (!(row >> id >> hex)) throw FormatError("certificate line " + std::to_string(line_no) + ": expected \"node hex\"");
    if (id < 1 || static_cast<std::size_t>(id) > n)
      throw FormatError("certificate line " + std::to_string(line_no) + ": node " + std::to_string(id) + " out of range");
    if (hex == "-") hex.clear();
    long long len = -1;
    if (!(row >> len)) len = static_cast<long long>(hex.size() * 4);
    if (len < 0) throw FormatError("certificate line " + std::to_string(line_no) + ": negative length");
    if (seen[id - 1]) throw FormatError("certificate line " + std::to_string(line_no) + ": node listed twice");
    seen[id - 1] = true;
    z.labels[id - 1] = from_hex(hex, static_cast<std::size_t>(len));
  }
  check_labelling(z, n);
  return z;
}

inline std::string certificate_text(const Labelling& z) {
  std::ostringstream out;
  for (std::size_t v = 0; v < z.labels.size(); ++v) {
    const auto& l = z.labels[v];
    out << v + 1 << ' ' << (l.empty() ? "-" : to_hex(l)) << ' ' << l.size() << '\n';
  }
  return out.str();
}

}  // namespace clique::nondet
