#include <gtest/gtest.h>

#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <sstream>

#include "clique/bounds.hpp"

using namespace clique;
using namespace clique::bounds;
using boost::multiprecision::mpz_int;

namespace {

BoundParams<> params(int n, int b, int L, int t, int M = 0) { return {n, b, L, t, M}; }

long double approx(const LogLog<>& v) {
  return std::log2(static_cast<long double>(v.log_arg)) + static_cast<long double>(v.linear);
}

struct Lattice {
  std::vector<BoundParams<>> points;
  Lattice() {
    for (int n : {2, 3, 5, 8, 13})
      for (int b : {1, 2, 3, 4, 5})
        for (int L : {1, 2, 4, 7, 16, 50, 200, 1000}) points.push_back(params(n, b, L, 0));
  }
};

}  // namespace

TEST(LogLog, HandValues) {
  EXPECT_EQ(protocol_count_loglog(params(4, 2, 3, 1)).ceiling(), 15);
  EXPECT_TRUE(protocol_count_loglog(params(4, 2, 3, 1)).log_is_integer());
  EXPECT_EQ(protocol_count_loglog(params(2, 1, 1, 1)).ceiling(), 5);
  EXPECT_EQ(protocol_count_loglog(params(4, 2, 3, 1, 5)).ceiling(), 20);
  const auto odd = protocol_count_loglog(params(3, 2, 1, 0));
  EXPECT_FALSE(odd.log_is_integer());
  EXPECT_EQ(odd.floor_log(), 5);
  EXPECT_EQ(odd.ceiling(), 7);
  EXPECT_EQ(odd.text(), "log2(36)+1");
}

TEST(LogLog, RoundStep) {
  for (const auto& p : Lattice().points) {
    auto q = p;
    q.t += 1;
    EXPECT_EQ(protocol_count_loglog(q).linear - protocol_count_loglog(p).linear, p.b * (p.n - 1));
  }
}

TEST(LogLog, StrictMonotonicity) {
  for (const auto& p : Lattice().points) {
    const long double base = approx(protocol_count_loglog(p));
    for (int field = 0; field < 4; ++field) {
      auto q = p;
      (field == 0 ? q.n : field == 1 ? q.b : field == 2 ? q.L : q.t) += 1;
      EXPECT_GT(approx(protocol_count_loglog(q)), base);
    }
  }
}

TEST(LogLog, InvalidParams) {
  EXPECT_THROW(protocol_count_loglog(params(0, 1, 1, 1)), FormatError);
  EXPECT_THROW(protocol_count_loglog(params(2, 1, 0, 1)), FormatError);
}

TEST(Unrealizable, Examples) {
  EXPECT_FALSE(exists_unrealizable_function(params(4, 2, 3, 1)));
  EXPECT_TRUE(exists_unrealizable_function(params(4, 2, 8, 1)));
  EXPECT_FALSE(exists_unrealizable_function(params(4, 2, 8, 32)));
  // log2 36 + L < 3L: exact from L = 3, certified on the ceiling from L = 4.
  EXPECT_TRUE(exists_unrealizable_function(params(3, 2, 3, 0), LogMode::exact));
  EXPECT_FALSE(exists_unrealizable_function(params(3, 2, 3, 0), LogMode::ceiling));
  EXPECT_TRUE(exists_unrealizable_function(params(3, 2, 4, 0), LogMode::ceiling));
}

TEST(Unrealizable, CrossingMatchesScanAndRealFormula) {
  const Lattice lattice;
  ASSERT_EQ(lattice.points.size(), 200U);
  for (const auto& p : lattice.points)
    for (auto mode : {LogMode::exact, LogMode::ceiling}) {
      BigInt scanned = 0;
      for (auto q = p; exists_unrealizable_function(q, mode); q.t += 1) scanned = q.t + 1;
      const BigInt closed = crossing_rounds(p, mode);
      EXPECT_EQ(closed, scanned);
      if (mode == LogMode::exact) {
        const long double n = static_cast<long double>(p.n), b = static_cast<long double>(p.b),
                          L = static_cast<long double>(p.L);
        const long double real = (n * L - L - std::log2(2 * b * n * n)) / (b * (n - 1));
        EXPECT_EQ(closed, BigInt(static_cast<long long>(std::max(0.0L, std::ceil(real)))));
        EXPECT_GE(static_cast<long double>(closed), real);
      }
    }
}

TEST(Unrealizable, HugeRoundsNeverUnrealizable) {
  for (const auto& p : Lattice().points) {
    auto q = p;
    q.t = q.n * q.L;
    EXPECT_FALSE(exists_unrealizable_function(q));
  }
}

TEST(TSpecs, Parse) {
  EXPECT_EQ(parse_t_spec("const 3").at(100), 3);
  EXPECT_EQ(parse_t_spec("poly 2 2").at(5), 50);
  EXPECT_EQ(parse_t_spec("nlogn-frac 4").at(1024), 25);
  EXPECT_EQ(parse_t_spec("poly 1 1").text(), "poly 1 1");
  for (const char* bad : {"", "const", "poly 1", "nlogn-frac 0", "cubic 2", "const 1 2", "const -1"})
    EXPECT_THROW(parse_t_spec(bad), FormatError) << bad;
}

TEST(Thm1, ConstantT) {
  const auto r = check_thm1_regime(parse_t_spec("const 1"), {});
  ASSERT_EQ(r.rows.size(), 65535U);
  ASSERT_TRUE(r.first_holding.has_value());
  ASSERT_TRUE(r.holds_from.has_value());
  EXPECT_TRUE(r.violations_after_first.empty());
  // t = 0, L = b: holds iff n b > ceil(log2(2 b n^2)) + b.
  for (const auto& row : r.rows) {
    const std::uint64_t n = row.n, b = ceil_log2(n);
    const std::uint64_t x = 2 * b * n * n;
    const std::uint64_t ceil_log = ceil_log2(x);
    EXPECT_EQ(row.holds, n * b > ceil_log + b) << n;
    EXPECT_EQ(row.flagged, 4 * b >= n) << n;
  }
  EXPECT_EQ(*r.first_holding, 5U);
}

TEST(Thm1, RegimeBoundaryAndViolation) {
  const auto frac = check_thm1_regime(parse_t_spec("nlogn-frac 4"), {2, 4096});
  EXPECT_TRUE(frac.rows.back().holds);
  EXPECT_FALSE(frac.rows.back().flagged);
  const auto linear = check_thm1_regime(parse_t_spec("poly 1 1"), {2, 512});
  EXPECT_EQ(linear.flagged, linear.rows.size());
}

TEST(Thm3, ProofFormThreshold) {
  std::vector<Thm3Extra<>> extra;
  const auto r = check_thm3_inequality(parse_t_spec("const 1"), {}, Thm3Form::proof, &extra);
  ASSERT_TRUE(r.first_holding.has_value());
  // Flooring M = T n b / 4 lets n = 2, 3 through; unfloored it needs n > 3.
  EXPECT_EQ(*r.first_holding, 2U);
  EXPECT_EQ(*r.holds_from, 2U);
  EXPECT_TRUE(r.violations_after_first.empty());
  for (std::uint64_t n = 2; n <= 64; ++n) {
    const std::uint64_t b = ceil_log2(n);
    EXPECT_EQ(n * b + 4 * b + (n - 1) * b < 3 * n * b, n > 3);
  }
  for (std::size_t i = 0; i < extra.size(); ++i) {
    EXPECT_TRUE(extra[i].chain_first);
    EXPECT_EQ(extra[i].chain_middle, r.rows[i].n > 4);
  }
}

TEST(Thm3, LiteralFormNeverHolds) {
  const auto r = check_thm3_inequality(parse_t_spec("const 1"), {2, 4096}, Thm3Form::literal);
  const auto& n8 = r.rows[6];
  ASSERT_EQ(n8.n, 8U);
  EXPECT_EQ(n8.lhs, 4 * 30);
  EXPECT_EQ(n8.rhs, 4 * 18);
  EXPECT_FALSE(n8.holds);
  EXPECT_FALSE(r.first_holding.has_value());
}

TEST(Thm6, Examples) {
  const auto r = check_thm6_inequality(parse_t_spec("poly 1 2"), 2, {4, 4});
  ASSERT_EQ(r.rows.size(), 3U);
  EXPECT_EQ(r.rows[2].k, 2U);
  EXPECT_EQ(r.rows[2].lhs, 3840);
  EXPECT_EQ(r.rows[2].rhs, 6144);
  EXPECT_TRUE(r.rows[2].holds);
  for (const char* t : {"const 1", "const 2", "poly 1 1", "poly 1 2"}) {
    const auto zero = check_thm6_inequality(parse_t_spec(t), 0, {2, 2048});
    for (const auto& row : zero.rows) EXPECT_TRUE(row.holds) << t << " n=" << row.n;
  }
  // 4kn + 48 < 32n at T = 4: k = 4 needs n > 3.
  const auto four = check_thm6_inequality(parse_t_spec("const 4"), 4, {2, 1024});
  EXPECT_EQ(*four.first_holding, 4U);
  EXPECT_EQ(*four.holds_from, 4U);
}

TEST(Backends, GmpAgreesWithCppInt) {
  for (const auto& p : Lattice().points) {
    const BoundParams<mpz_int> q{mpz_int(p.n.str()), mpz_int(p.b.str()), mpz_int(p.L.str()), 0, 0};
    EXPECT_EQ(crossing_rounds(p).str(), crossing_rounds(q).str());
    EXPECT_EQ(protocol_count_loglog(p).text(), protocol_count_loglog(q).text());
  }
  auto csv = [](const auto& report) {
    std::ostringstream out;
    write_csv(out, report);
    return out.str();
  };
  const auto t = parse_t_spec("poly 3 2");
  EXPECT_EQ(csv(check_thm1_regime<BigInt>(t, {2, 2048})), csv(check_thm1_regime<mpz_int>(t, {2, 2048})));
  EXPECT_EQ(csv(check_thm3_inequality<BigInt>(t, {2, 2048})), csv(check_thm3_inequality<mpz_int>(t, {2, 2048})));
  EXPECT_EQ(csv(check_thm6_inequality<BigInt>(t, 5, {2, 256})), csv(check_thm6_inequality<mpz_int>(t, 5, {2, 256})));
}
