#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "clique/bits.hpp"
#include "clique/graph.hpp"

namespace clique {

enum class SetKind { dominating, independent, cover };

inline std::string to_string(SetKind kind) {
  switch (kind) {
    case SetKind::dominating: return "dominating";
    case SetKind::independent: return "independent";
    case SetKind::cover: return "cover";
  }
  return "?";
}

struct VertexSet {
  std::vector<NodeId> members;  // ascending, distinct
  SetKind kind;

  std::size_t size() const { return members.size(); }
  bool operator==(const VertexSet&) const = default;
};

inline VertexSet make_vertex_set(std::vector<NodeId> members, SetKind kind) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return {std::move(members), kind};
}

inline std::vector<NodeId> members_of(const NodeSet& s) {
  std::vector<NodeId> out;
  for (auto i = s.find_first(); i != NodeSet::npos; i = s.find_next(i)) out.push_back(static_cast<NodeId>(i + 1));
  return out;
}

// Node output for set-valued algorithms: a found flag then n membership bits.
// "none" is the single bit 0.
inline BitVector encode_set_output(std::size_t n, const std::optional<std::vector<NodeId>>& members) {
  if (!members) return BitVector{false};
  BitVector out(n + 1, false);
  out[0] = true;
  for (NodeId v : *members) out.at(v) = true;
  return out;
}

inline std::optional<std::vector<NodeId>> decode_set_output(std::size_t n, const BitVector& out) {
  if (out.empty()) throw FormatError("empty set output");
  if (!out[0]) {
    if (out.size() != 1) throw FormatError("'none' output carries trailing bits");
    return std::nullopt;
  }
  if (out.size() != n + 1) throw FormatError("set output has wrong length");
  std::vector<NodeId> members;
  for (NodeId v = 1; v <= n; ++v)
    if (out[v]) members.push_back(v);
  return members;
}

}  // namespace clique
