#include <gtest/gtest.h>

#include <cmath>

#include "clique/clique.hpp"

using namespace clique;

namespace {

ExperimentConfig kds_config() {
  return parse_config(R"({"algorithm": "kds", "k": 2, "schedule": [16, 64, 256],
                          "generator": {"kind": "erdos_renyi", "p": 0.3}, "seed": 1})");
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, ErrorsNameTheField) {
  EXPECT_NE(error_of(R"({"algorithm": "kds", "k": 2, "schedule": []})").find("'schedule'"), std::string::npos);
  EXPECT_NE(error_of(R"({"algorithm": "kds", "schedule": [4]})").find("'k'"), std::string::npos);
  EXPECT_NE(error_of(R"({"algorithm": "kdx", "k": 2, "schedule": [4]})").find("'algorithm'"), std::string::npos);
  EXPECT_NE(error_of(R"({"algorithm": "kds", "k": 2, "schedule": [4], "repetitions": 0})").find("'repetitions'"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"algorithm": "kds", "k": 2, "schedule": [4], "colour": 1})").find("'colour'"),
            std::string::npos);
  EXPECT_NE(error_of("{\"algorithm\": \"kds\",\n \"k\": }").find("line 2"), std::string::npos);
}

TEST(Config, RoundTrip) {
  const auto c = kds_config();
  const auto again = config_from_json(nlohmann::json::parse(config_to_json(c).dump()));
  EXPECT_EQ(config_to_json(again).dump(), config_to_json(c).dump());
}

TEST(Fit, PowerLaw) {
  std::vector<std::pair<std::size_t, std::size_t>> pts{{4, 6}, {16, 12}, {64, 24}};
  const auto f = fit_exponent(pts);
  ASSERT_TRUE(f);
  EXPECT_NEAR(f->slope, 0.5, 1e-12);
  EXPECT_NEAR(f->residual, 0.0, 1e-12);
  EXPECT_FALSE(fit_exponent({{4, 6}, {4, 7}, {16, 12}}));
}

TEST(Experiment, KdsScaling) {
  const auto r = run_experiment(kds_config());
  ASSERT_EQ(r.rows.size(), 3U);
  for (const auto& row : r.rows) {
    EXPECT_LE(static_cast<double>(row.rounds), algo::kds_round_constant * 2 * std::sqrt(static_cast<double>(row.n)));
    EXPECT_EQ(row.oracle, OracleCheck::match);
  }
  ASSERT_TRUE(r.fit);
  EXPECT_GE(r.fit->slope, 0.35);
  EXPECT_LE(r.fit->slope, 0.65);
  EXPECT_LT(r.fit->residual, 0.15);
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Experiment, KvcCeiling) {
  const auto r = run_experiment(parse_config(R"({"algorithm": "kvc", "k": 3, "schedule": [50, 100], "repetitions": 2})"));
  for (const auto& row : r.rows) EXPECT_LE(row.rounds, 5U);
  EXPECT_FALSE(r.fit);
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Experiment, SmallOracleMatches) {
  for (const char* a : {"kds", "kvc", "kis", "kis-via-ds"}) {
    const auto r = run_experiment(parse_config(std::string(R"({"algorithm": ")") + a +
                                               R"(", "k": 2, "schedule": [4, 5], "repetitions": 3, "generator": {"p": 0.5}})"));
    for (const auto& row : r.rows) EXPECT_EQ(row.oracle, OracleCheck::match) << a;
    EXPECT_EQ(r.exit_code(), 0) << a;
  }
}

TEST(Experiment, TimeoutExitsWithThree) {
  auto c = kds_config();
  c.max_rounds = 2;
  const auto r = run_experiment(c);
  EXPECT_EQ(r.rows.front().status, RowStatus::timeout);
  EXPECT_EQ(r.exit_code(), 3);
}

TEST(Experiment, ReproducibleAndModeIndependent) {
  auto c = kds_config();
  c.repetitions = 2;
  const std::string a = report_text(run_experiment(c));
  EXPECT_EQ(a, report_text(run_experiment(c)));
  EXPECT_EQ(a, report_text(run_experiment(c, true, 3)));
  const auto embedded = config_from_json(nlohmann::json::parse(a).at("config"));
  EXPECT_EQ(a, report_text(run_experiment(embedded)));
  c.format = "csv";
  EXPECT_EQ(report_text(run_experiment(c)), report_text(run_experiment(c, true, 2)));
}

TEST(Schema, Validate) {
  const std::string good = report_text(run_experiment(kds_config()));
  EXPECT_TRUE(report_schema_validate(good).valid);
  EXPECT_FALSE(report_schema_validate(good.substr(0, good.size() / 2)).valid);
  auto j = nlohmann::json::parse(good);
  j["version"] = "clique-lab-report/0";
  const auto wrong = report_schema_validate(j.dump());
  EXPECT_FALSE(wrong.valid);
  EXPECT_NE(wrong.message.find("version"), std::string::npos);
  j = nlohmann::json::parse(good);
  j["rows"][1].erase("rounds");
  const auto missing = report_schema_validate(j.dump());
  EXPECT_FALSE(missing.valid);
  EXPECT_NE(missing.message.find("rounds"), std::string::npos);
}
