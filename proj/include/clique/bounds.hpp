#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "clique/bits.hpp"
#include "clique/errors.hpp"

// Exact counting arithmetic for (n, b, L, t)-protocols. "log n" is
// ceil(log2 n) throughout; fractional parameters are floored.
namespace clique::bounds {

using BigInt = boost::multiprecision::cpp_int;

template <class Int>
std::string str(const Int& x) {
  return x.str();
}

template <class Int = BigInt>
struct BoundParams {
  Int n = 2, b = 1, L = 1, t = 1, M = 0;

  void validate() const {
    if (n < 1 || b < 1 || L < 1 || t < 0 || M < 0)
      throw FormatError("bound parameters need n, b, L >= 1 and t, M >= 0");
  }
};

enum class LogMode { exact, ceiling };

// log2 log2 of the protocol count: log2(log_arg) + linear, with
// log_arg = 2 b n^2 and linear = L + M + b t (n - 1).
template <class Int = BigInt>
struct LogLog {
  Int log_arg;
  Int linear;

  bool log_is_integer() const { return (log_arg & (log_arg - 1)) == 0; }
  Int floor_log() const { return Int(boost::multiprecision::msb(log_arg)); }
  Int ceil_log() const { return floor_log() + (log_is_integer() ? 0 : 1); }

  // Certified integer upper bound; equals the value when log_arg is a power of two.
  Int ceiling() const { return ceil_log() + linear; }

  // value < c, decided exactly (log2 X < d iff d > msb X) or on the ceiling.
  bool less_than(const Int& c, LogMode mode) const {
    const Int d = c - linear;
    return mode == LogMode::exact ? d > floor_log() : d > ceil_log();
  }

  std::string text() const {
    std::ostringstream out;
    if (log_is_integer())
      out << str(ceiling());
    else
      out << "log2(" << str(log_arg) << ")+" << str(linear);
    return out.str();
  }
};

template <class Int>
LogLog<Int> protocol_count_loglog(const BoundParams<Int>& p) {
  p.validate();
  return {2 * p.b * p.n * p.n, p.L + p.M + p.b * p.t * (p.n - 1)};
}

// Some f : {0,1}^{nL} -> {0,1} has no protocol with these parameters. In
// ceiling mode a true answer is certified even when log2(2bn^2) is irrational.
template <class Int>
bool exists_unrealizable_function(const BoundParams<Int>& p, LogMode mode = LogMode::exact) {
  return protocol_count_loglog(p).less_than(p.n * p.L, mode);
}

// Smallest t >= 0 at which exists_unrealizable_function turns false. Closed
// form: t q >= D - log2 X with q = b(n-1), D = nL - L - M; since tq and D
// are integers this is tq >= D - floor(log2 X), or D - ceil(log2 X) in
// ceiling mode.
template <class Int>
Int crossing_rounds(const BoundParams<Int>& p, LogMode mode = LogMode::exact) {
  BoundParams<Int> at0 = p;
  at0.t = 0;
  const auto v = protocol_count_loglog(at0);
  const Int q = p.b * (p.n - 1);
  if (q == 0) throw FormatError("crossing rounds need n >= 2");
  const Int a = p.n * p.L - v.linear - (mode == LogMode::exact ? v.floor_log() : v.ceil_log());
  return a <= 0 ? Int(0) : Int((a + q - 1) / q);
}

// T(n) families: "const c", "poly a e" (a * n^e), "nlogn-frac d"
// (floor(n / (d ceil(log2 n)))).
struct TSpec {
  enum class Kind { constant, poly, nlogn_frac };
  Kind kind = Kind::constant;
  std::uint64_t a = 1;
  std::uint64_t e = 0;

  template <class Int = BigInt>
  Int at(std::uint64_t n) const {
    switch (kind) {
      case Kind::constant: return Int(a);
      case Kind::poly: return Int(a) * boost::multiprecision::pow(Int(n), static_cast<unsigned>(e));
      case Kind::nlogn_frac: return Int(n) / (Int(a) * Int(ceil_log2(n)));
    }
    return Int(0);
  }

  std::string text() const {
    switch (kind) {
      case Kind::constant: return "const " + std::to_string(a);
      case Kind::poly: return "poly " + std::to_string(a) + " " + std::to_string(e);
      case Kind::nlogn_frac: return "nlogn-frac " + std::to_string(a);
    }
    return "?";
  }
};

inline TSpec parse_t_spec(const std::string& s) {
  std::istringstream in(s);
  std::string word;
  in >> word;
  TSpec t;
  auto number = [&](const char* what) {
    long long x = -1;
    if (!(in >> x) || x < 0) throw FormatError("t-spec '" + s + "': bad " + what);
    return static_cast<std::uint64_t>(x);
  };
  if (word == "const") {
    t.kind = TSpec::Kind::constant;
    t.a = number("constant");
  } else if (word == "poly") {
    t.kind = TSpec::Kind::poly;
    t.a = number("coefficient");
    t.e = number("exponent");
  } else if (word == "nlogn-frac") {
    t.kind = TSpec::Kind::nlogn_frac;
    t.a = number("divisor");
    if (t.a == 0) throw FormatError("t-spec '" + s + "': divisor must be positive");
  } else {
    throw FormatError("t-spec '" + s + "': expected const, poly or nlogn-frac");
  }
  if (in >> word) throw FormatError("t-spec '" + s + "': trailing input");
  return t;
}

struct NRange {
  std::uint64_t lo = 2, hi = 1U << 16;

  void validate() const {
    if (lo < 2 || hi < lo) throw FormatError("n range needs 2 <= lo <= hi");
  }
};

// Common row shape: the checked inequality is lhs < rhs.
template <class Int = BigInt>
struct Row {
  std::uint64_t n = 0;
  std::uint64_t k = 0;  // thm6 only
  Int T, lhs, rhs;
  bool holds = false;
  bool flagged = false;  // regime assumption violated, or T(n) = 0
};

template <class Int = BigInt>
struct ScanReport {
  std::vector<Row<Int>> rows;
  std::optional<std::uint64_t> first_holding;
  std::optional<std::uint64_t> holds_from;  // every scanned n from here on holds
  std::size_t flagged = 0;
  std::vector<std::uint64_t> violations_after_first;
};

namespace detail {

template <class Int>
void summarise(ScanReport<Int>& r) {
  std::optional<std::uint64_t> last_fail;
  for (const auto& row : r.rows) {
    if (row.flagged) ++r.flagged;
    if (row.holds && !r.first_holding) r.first_holding = row.n;
    if (!row.holds) {
      last_fail = row.n;
      if (r.first_holding && (r.violations_after_first.empty() || r.violations_after_first.back() != row.n))
        r.violations_after_first.push_back(row.n);
    }
  }
  if (r.rows.empty() || !r.rows.back().holds) return;
  if (!last_fail) {
    r.holds_from = r.rows.front().n;
    return;
  }
  for (const auto& row : r.rows)
    if (row.n > *last_fail) {
      r.holds_from = row.n;
      break;
    }
}

}  // namespace detail

// b = ceil(log2 n), L = T b, t = floor(T / 2); holds when a function on nL
// bits has no such protocol, certified on the ceiling. Rows with
// 4 T b >= n, outside T < n / (4 log n), are flagged; so are rows with T = 0.
template <class Int = BigInt>
ScanReport<Int> check_thm1_regime(const TSpec& spec, NRange range) {
  range.validate();
  ScanReport<Int> r;
  for (std::uint64_t n = range.lo; n <= range.hi; ++n) {
    Row<Int> row;
    row.n = n;
    row.T = spec.at<Int>(n);
    const Int b(ceil_log2(n));
    row.lhs = Int(n) * row.T * b;
    row.flagged = row.T < 1 || 4 * row.T * b >= n;
    if (row.T >= 1) {
      const BoundParams<Int> p{Int(n), b, row.T * b, row.T / 2, 0};
      row.rhs = protocol_count_loglog(p).ceiling();
      row.holds = exists_unrealizable_function(p, LogMode::ceiling);
    }
    r.rows.push_back(std::move(row));
  }
  detail::summarise(r);
  return r;
}

// Nondeterministic hierarchy inequality with L = T b, M = floor(T n b / 4).
// The protocol runs T/4 rounds, so the communication term is T(n-1)b/4;
// everything is scaled by 4:
//   proof form    4M + 4L + T(n-1)b       < 3nL
//   literal form  4(M + L + T(n-1)b)      < 3nL  (round term without the /4)
// The chain's first step 4M + 4L + T(n-1)b <= 2Tnb + 4Tb and its middle step
// (1/2 + 1/n) < 3/4, i.e. n > 4, are reported alongside.
enum class Thm3Form { proof, literal };

template <class Int = BigInt>
struct Thm3Extra {
  bool chain_first = false;
  bool chain_middle = false;
};

template <class Int = BigInt>
ScanReport<Int> check_thm3_inequality(const TSpec& spec, NRange range, Thm3Form form = Thm3Form::proof,
                                      std::vector<Thm3Extra<Int>>* extra = nullptr) {
  range.validate();
  ScanReport<Int> r;
  for (std::uint64_t n = range.lo; n <= range.hi; ++n) {
    Row<Int> row;
    row.n = n;
    row.T = spec.at<Int>(n);
    const Int b(ceil_log2(n)), N(n);
    const Int L = row.T * b, M = row.T * N * b / 4, talk = row.T * (N - 1) * b;
    row.lhs = form == Thm3Form::proof ? Int(4 * M + 4 * L + talk) : Int(4 * (M + L + talk));
    row.rhs = 3 * N * L;
    row.flagged = row.T < 1;
    row.holds = !row.flagged && row.lhs < row.rhs;
    if (extra)
      extra->push_back({4 * M + 4 * L + talk <= 2 * row.T * N * b + 4 * row.T * b, 2 * (N + 2) < 3 * N});
    r.rows.push_back(std::move(row));
  }
  detail::summarise(r);
  return r;
}

// Alternation hierarchy inequality with L = T^2 b, M = floor(T n b / 4),
// scaled by 4:  4kM + 4L + T^2(n-1)b < 3 T^2 n b  for k = 0..min(T, k_max).
// A row per (n, k); the summary treats n as holding when all its k hold.
template <class Int = BigInt>
ScanReport<Int> check_thm6_inequality(const TSpec& spec, std::uint64_t k_max, NRange range) {
  range.validate();
  ScanReport<Int> r;
  ScanReport<Int> per_n;
  for (std::uint64_t n = range.lo; n <= range.hi; ++n) {
    const Int T = spec.at<Int>(n), b(ceil_log2(n)), N(n);
    const Int L = T * T * b, M = T * N * b / 4;
    const Int k_top = T < Int(k_max) ? T : Int(k_max);
    Row<Int> all;
    all.n = n;
    all.T = T;
    all.holds = T >= 1;
    all.flagged = T < 1;
    for (std::uint64_t k = 0; Int(k) <= k_top; ++k) {
      Row<Int> row;
      row.n = n;
      row.k = k;
      row.T = T;
      row.lhs = 4 * Int(k) * M + 4 * L + T * T * (N - 1) * b;
      row.rhs = 3 * T * T * N * b;
      row.flagged = T < 1;
      row.holds = !row.flagged && row.lhs < row.rhs;
      all.holds = all.holds && row.holds;
      r.rows.push_back(std::move(row));
    }
    per_n.rows.push_back(std::move(all));
  }
  detail::summarise(per_n);
  r.first_holding = per_n.first_holding;
  r.holds_from = per_n.holds_from;
  r.flagged = per_n.flagged;
  r.violations_after_first = per_n.violations_after_first;
  return r;
}

// CSV: n,lhs,rhs,holds then k,T,flagged.
template <class Int>
void write_csv(std::ostream& out, const ScanReport<Int>& r) {
  out << "n,lhs,rhs,holds,k,T,flagged\n";
  for (const auto& row : r.rows)
    out << row.n << ',' << str(row.lhs) << ',' << str(row.rhs) << ',' << (row.holds ? 1 : 0) << ',' << row.k << ','
        << str(row.T) << ',' << (row.flagged ? 1 : 0) << '\n';
}

}  // namespace clique::bounds
