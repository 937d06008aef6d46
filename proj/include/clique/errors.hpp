#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace clique {

using NodeId = std::uint32_t;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed graph input: out-of-range endpoint, self-loop, bad file line.
class GraphError : public Error {
public:
  using Error::Error;
};

// Certificate, label or report with the wrong shape.
class FormatError : public Error {
public:
  using Error::Error;
};

// An exhaustive search would exceed the configured enumeration guard.
class GuardExceeded : public Error {
public:
  GuardExceeded(const std::string& what, double log2_space, double log2_guard)
      : Error(what + ": search space 2^" + std::to_string(log2_space) +
              " exceeds guard 2^" + std::to_string(log2_guard)),
        log2_space_(log2_space) {}
  double log2_space() const { return log2_space_; }

private:
  double log2_space_;
};

// Base for violations of the congested clique communication rules.
class EngineError : public Error {
public:
  EngineError(const std::string& what, std::size_t round, NodeId src, NodeId dst)
      : Error(what + " (round " + std::to_string(round) + ", " + std::to_string(src) +
              " -> " + std::to_string(dst) + ")"),
        round_(round), src_(src), dst_(dst) {}

  std::size_t round() const { return round_; }
  NodeId src() const { return src_; }
  NodeId dst() const { return dst_; }

private:
  std::size_t round_;
  NodeId src_;
  NodeId dst_;
};

class BandwidthViolation : public EngineError {
public:
  BandwidthViolation(std::size_t round, NodeId src, NodeId dst, std::size_t bits, std::size_t limit)
      : EngineError("bandwidth violation: " + std::to_string(bits) + "-bit payload exceeds " +
                        std::to_string(limit) + " bits",
                    round, src, dst) {}
};

class MultiplexingViolation : public EngineError {
public:
  MultiplexingViolation(std::size_t round, NodeId src, NodeId dst)
      : EngineError("multiplexing violation: two messages on one link", round, src, dst) {}
};

class AddressingError : public EngineError {
public:
  using EngineError::EngineError;
};

// A reduction produced output that its construction rules out.
class InternalError : public Error {
public:
  using Error::Error;
};

}  // namespace clique
