#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "clique/algorithms/drivers.hpp"
#include "clique/generators.hpp"
#include "clique/oracle.hpp"

namespace clique {

inline constexpr const char* report_version = "clique-lab-report/1";

enum class Algorithm { kds, kvc, kis, kis_via_ds };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kds: return "kds";
    case Algorithm::kvc: return "kvc";
    case Algorithm::kis: return "kis";
    case Algorithm::kis_via_ds: return "kis-via-ds";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
  for (auto a : {Algorithm::kds, Algorithm::kvc, Algorithm::kis, Algorithm::kis_via_ds})
    if (to_string(a) == s) return a;
  throw FormatError("unknown algorithm '" + s + "' (expected kds, kvc, kis or kis-via-ds)");
}

inline SetKind set_kind(Algorithm a) {
  switch (a) {
    case Algorithm::kds: return SetKind::dominating;
    case Algorithm::kvc: return SetKind::cover;
    default: return SetKind::independent;
  }
}

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::kds;
  std::size_t k = 2;
  std::vector<std::size_t> schedule;
  GraphKind graph = GraphKind::erdos_renyi;
  double p = 0.3;
  std::size_t repetitions = 1;
  std::uint64_t seed = 1;
  std::string format = "json";
  double c = algo::kds_round_constant;
  std::optional<std::size_t> max_rounds;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) throw ConfigError(std::string("config field '") + name + "' is missing");
  return j.at(name);
}

inline std::uint64_t positive(const nlohmann::json& v, const char* name, bool allow_zero = false) {
  if (!v.is_number_integer() || v.get<long long>() < (allow_zero ? 0 : 1))
    throw ConfigError(std::string("config field '") + name + "': expected " +
                      (allow_zero ? "a non-negative" : "a positive") + " integer");
  return v.get<std::uint64_t>();
}

}  // namespace detail

inline nlohmann::ordered_json config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["algorithm"] = to_string(c.algorithm);
  j["k"] = c.k;
  j["schedule"] = c.schedule;
  j["generator"] = {{"kind", to_string(c.graph)}, {"p", c.p}};
  j["repetitions"] = c.repetitions;
  j["seed"] = c.seed;
  j["format"] = c.format;
  j["c"] = c.c;
  if (c.max_rounds) j["max_rounds"] = *c.max_rounds;
  return j;
}

// Required: algorithm, k, schedule. Errors name the field, or the JSON
// line and column on a syntax error.
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  using detail::field;
  using detail::positive;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"algorithm", "k",      "schedule", "generator", "repetitions",
                                           "seed",      "format", "c",        "max_rounds"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw ConfigError("config field '" + key + "' is not recognised");
  ExperimentConfig c;
  const auto& algorithm = field(j, "algorithm");
  if (!algorithm.is_string()) throw ConfigError("config field 'algorithm': expected a string");
  try {
    c.algorithm = parse_algorithm(algorithm.get<std::string>());
  } catch (const FormatError& e) {
    throw ConfigError(std::string("config field 'algorithm': ") + e.what());
  }
  c.k = positive(field(j, "k"), "k");
  const auto& schedule = field(j, "schedule");
  if (!schedule.is_array() || schedule.empty()) throw ConfigError("config field 'schedule': expected a nonempty array");
  for (const auto& n : schedule) {
    const auto v = positive(n, "schedule");
    if (v < 2) throw ConfigError("config field 'schedule': every n must be >= 2");
    c.schedule.push_back(v);
  }
  if (j.contains("generator")) {
    const auto& g = j.at("generator");
    if (!g.is_object()) throw ConfigError("config field 'generator': expected an object");
    if (g.contains("kind")) {
      if (!g.at("kind").is_string()) throw ConfigError("config field 'generator.kind': expected a string");
      try {
        c.graph = parse_graph_kind(g.at("kind").get<std::string>());
      } catch (const GraphError& e) {
        throw ConfigError(std::string("config field 'generator.kind': ") + e.what());
      }
    }
    if (g.contains("p")) {
      if (!g.at("p").is_number() || g.at("p").get<double>() < 0 || g.at("p").get<double>() > 1)
        throw ConfigError("config field 'generator.p': expected a number in [0, 1]");
      c.p = g.at("p").get<double>();
    }
  }
  if (j.contains("repetitions")) c.repetitions = positive(j.at("repetitions"), "repetitions");
  if (j.contains("seed")) c.seed = positive(j.at("seed"), "seed", true);
  if (j.contains("format")) {
    const auto& f = j.at("format");
    if (!f.is_string() || (f != "json" && f != "csv")) throw ConfigError("config field 'format': expected json or csv");
    c.format = f.get<std::string>();
  }
  if (j.contains("c")) {
    if (!j.at("c").is_number() || j.at("c").get<double>() <= 0)
      throw ConfigError("config field 'c': expected a positive number");
    c.c = j.at("c").get<double>();
  }
  if (j.contains("max_rounds")) c.max_rounds = positive(j.at("max_rounds"), "max_rounds");
  return c;
}

inline ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

// Graph seed of repetition `rep` at size n.
inline std::uint64_t row_seed(std::uint64_t seed, std::size_t n, std::size_t rep) {
  SplitMix64 rng(seed ^ (static_cast<std::uint64_t>(n) << 32) ^ rep);
  return rng.next();
}

// Round ceiling checked per row; none for the simulated reduction.
inline std::optional<double> round_bound(const ExperimentConfig& c, std::size_t n) {
  const double k = static_cast<double>(c.k), nn = static_cast<double>(n);
  switch (c.algorithm) {
    case Algorithm::kds:
    case Algorithm::kis: return c.c * k * std::pow(nn, 1.0 - 1.0 / k);
    case Algorithm::kvc: return k + 2;
    case Algorithm::kis_via_ds: return std::nullopt;
  }
  return std::nullopt;
}

enum class OracleCheck { match, mismatch, skipped };

inline std::string to_string(OracleCheck o) {
  return o == OracleCheck::match ? "match" : o == OracleCheck::mismatch ? "mismatch" : "skipped";
}

enum class RowStatus { ok, timeout, guard, error };

inline std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::ok: return "ok";
    case RowStatus::timeout: return "timeout";
    case RowStatus::guard: return "guard";
    case RowStatus::error: return "error";
  }
  return "?";
}

struct ExperimentRow {
  std::size_t n = 0;
  std::size_t seed_rep = 0;
  std::uint64_t graph_seed = 0;
  std::size_t rounds = 0;
  std::uint64_t total_bits = 0;
  std::string verdict;  // "found", "none", or the status when the run did not finish
  std::optional<double> bound;
  bool within_bound = true;
  OracleCheck oracle = OracleCheck::skipped;
  RowStatus status = RowStatus::ok;
  std::string message;
};

struct ExponentFit {
  double slope = 0;
  double residual = 0;
  std::size_t points = 0;
};

// Least squares of ln rounds on ln n over all rows; residual is the RMS of
// the log residuals. Needs three distinct n.
inline std::optional<ExponentFit> fit_exponent(const std::vector<std::pair<std::size_t, std::size_t>>& points) {
  std::set<std::size_t> distinct;
  for (auto [n, r] : points)
    if (r > 0) distinct.insert(n);
  if (distinct.size() < 3) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (auto [n, r] : points) {
    if (r == 0) continue;
    const double x = std::log(static_cast<double>(n)), y = std::log(static_cast<double>(r));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  const double mm = static_cast<double>(m);
  const double slope = (mm * sxy - sx * sy) / (mm * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / mm;
  double ss = 0;
  for (auto [n, r] : points) {
    if (r == 0) continue;
    const double e = std::log(static_cast<double>(r)) - (icpt + slope * std::log(static_cast<double>(n)));
    ss += e * e;
  }
  return ExponentFit{slope, std::sqrt(ss / mm), m};
}

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;  // ordered by (n, seed_rep)
  std::optional<ExponentFit> fit;

  // 0 all checks pass, 1 mismatch or bound violation, 3 guard or timeout.
  int exit_code() const {
    bool wrong = false, stuck = false;
    for (const auto& r : rows) {
      wrong = wrong || r.oracle == OracleCheck::mismatch || !r.within_bound || r.status == RowStatus::error;
      stuck = stuck || r.status == RowStatus::timeout || r.status == RowStatus::guard;
    }
    return wrong ? 1 : stuck ? 3 : 0;
  }
};

inline algo::AlgorithmRun run_algorithm(Algorithm a, const Graph& g, std::size_t k, const RunOptions& opt) {
  switch (a) {
    case Algorithm::kds: return algo::k_dominating_set(g, k, opt);
    case Algorithm::kvc: return algo::k_vertex_cover(g, k, opt);
    case Algorithm::kis: return algo::k_independent_set_direct(g, k, opt);
    case Algorithm::kis_via_ds: return algo::k_independent_set_via_ds(g, k, opt);
  }
  throw Error("unknown algorithm");
}

inline std::optional<VertexSet> oracle_decision(Algorithm a, const Graph& g, std::size_t k) {
  switch (a) {
    case Algorithm::kds: return oracle::has_dominating_set(g, k);
    case Algorithm::kvc: return oracle::has_vertex_cover(g, k);
    default: return oracle::has_independent_set(g, k);
  }
}

// Distributed answer vs ground truth: the decision must agree whenever the
// oracle fits under the guard, and a returned set must always be valid.
inline OracleCheck check_against_oracle(Algorithm a, const Graph& g, std::size_t k,
                                        const std::optional<VertexSet>& got) {
  const bool sized = !got || (a == Algorithm::kds || a == Algorithm::kvc ? got->size() <= k : got->size() == k);
  if (got && (!sized || !oracle::is_valid(g, *got))) return OracleCheck::mismatch;
  try {
    const bool expected = oracle_decision(a, g, k).has_value();
    return expected == got.has_value() ? OracleCheck::match : OracleCheck::mismatch;
  } catch (const GuardExceeded&) {
    return OracleCheck::skipped;
  }
}

inline ExperimentRow run_row(const ExperimentConfig& c, std::size_t n, std::size_t rep, const RunOptions& engine) {
  ExperimentRow row;
  row.n = n;
  row.seed_rep = rep;
  row.graph_seed = row_seed(c.seed, n, rep);
  row.bound = round_bound(c, n);
  RunOptions opt = engine;
  if (c.max_rounds) opt.max_rounds = *c.max_rounds;
  try {
    const Graph g = generate({c.graph, n, c.p, row.graph_seed});
    const auto result = run_algorithm(c.algorithm, g, c.k, opt);
    row.rounds = result.report.rounds;
    row.total_bits = result.report.total_bits;
    row.verdict = result.set ? "found" : "none";
    row.within_bound = !row.bound || static_cast<double>(row.rounds) <= *row.bound + 1e-9;
    row.oracle = check_against_oracle(c.algorithm, g, c.k, result.set);
  } catch (const RoundTimeout& e) {
    row.status = RowStatus::timeout;
    row.rounds = e.partial().rounds;
    row.total_bits = e.partial().total_bits;
    row.verdict = "timeout";
    row.message = e.what();
  } catch (const GuardExceeded& e) {
    row.status = RowStatus::guard;
    row.verdict = "guard";
    row.message = e.what();
  } catch (const Error& e) {
    row.status = RowStatus::error;
    row.verdict = "error";
    row.message = e.what();
  }
  return row;
}

// Rows run one per worker when `parallel` is set; each row lands at its own
// (n, rep) slot, so the report does not depend on completion order.
inline ExperimentReport run_experiment(const ExperimentConfig& c, bool parallel = false, std::size_t threads = 0) {
  if (c.schedule.empty()) throw ConfigError("config field 'schedule': expected a nonempty array");
  if (c.repetitions < 1) throw ConfigError("config field 'repetitions': expected a positive integer");
  std::vector<std::size_t> ns = c.schedule;
  std::sort(ns.begin(), ns.end());
  ExperimentReport report{c, std::vector<ExperimentRow>(ns.size() * c.repetitions), std::nullopt};
  const RunOptions engine{std::numeric_limits<std::size_t>::max(),
                          parallel ? ExecutionMode::parallel : ExecutionMode::sequential, threads};
  auto job = [&](std::size_t i) { report.rows[i] = run_row(c, ns[i / c.repetitions], i % c.repetitions, engine); };
  if (!parallel) {
    for (std::size_t i = 0; i < report.rows.size(); ++i) job(i);
  } else {
    const std::size_t workers =
        std::min<std::size_t>(report.rows.size(), threads ? threads : std::max(2U, std::thread::hardware_concurrency()));
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < report.rows.size(); i += workers) job(i);
      });
  }
  std::vector<std::pair<std::size_t, std::size_t>> points;
  for (const auto& r : report.rows)
    if (r.status == RowStatus::ok) points.emplace_back(r.n, r.rounds);
  report.fit = fit_exponent(points);
  return report;
}

inline nlohmann::ordered_json report_to_json(const ExperimentReport& r) {
  nlohmann::ordered_json j;
  j["version"] = report_version;
  j["config"] = config_to_json(r.config);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o;
    o["n"] = row.n;
    o["seed_rep"] = row.seed_rep;
    o["graph_seed"] = row.graph_seed;
    o["rounds"] = row.rounds;
    o["total_bits"] = row.total_bits;
    o["verdict"] = row.verdict;
    o["bound"] = row.bound ? nlohmann::ordered_json(*row.bound) : nlohmann::ordered_json();
    o["within_bound"] = row.within_bound;
    o["oracle"] = to_string(row.oracle);
    o["status"] = to_string(row.status);
    if (!row.message.empty()) o["message"] = row.message;
    j["rows"].push_back(std::move(o));
  }
  if (r.fit)
    j["fit"] = {{"slope", r.fit->slope}, {"residual", r.fit->residual}, {"points", r.fit->points}, {"label", "empirical"}};
  else
    j["fit"] = nullptr;
  return j;
}

inline void write_report_csv(std::ostream& out, const ExperimentReport& r) {
  out << "n,seed_rep,graph_seed,rounds,total_bits,verdict,bound,within_bound,oracle,status\n";
  for (const auto& row : r.rows) {
    out << row.n << ',' << row.seed_rep << ',' << row.graph_seed << ',' << row.rounds << ',' << row.total_bits << ','
        << row.verdict << ',';
    if (row.bound) out << nlohmann::json(*row.bound).dump();
    out << ',' << (row.within_bound ? 1 : 0) << ',' << to_string(row.oracle) << ',' << to_string(row.status) << '\n';
  }
}

inline std::string report_text(const ExperimentReport& r) {
  if (r.config.format == "csv") {
    std::ostringstream out;
    write_report_csv(out, r);
    return out.str();
  }
  return report_to_json(r).dump(2) + "\n";
}

struct SchemaCheck {
  bool valid = false;
  std::string message;
};

// Checks a JSON report: version tag, an embedded config that parses, rows
// with the required typed fields, and a fit that is null or complete.
inline SchemaCheck report_schema_validate(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    return {false, std::string("not valid JSON: ") + e.what()};
  }
  if (!j.is_object()) return {false, "report must be a JSON object"};
  for (const char* f : {"version", "config", "rows", "fit"})
    if (!j.contains(f)) return {false, std::string("missing field '") + f + "'"};
  if (!j["version"].is_string() || j["version"] != report_version)
    return {false, "wrong version tag " + j["version"].dump() + ", expected \"" + report_version + "\""};
  try {
    config_from_json(j["config"]);
  } catch (const ConfigError& e) {
    return {false, std::string("embedded config: ") + e.what()};
  }
  if (!j["rows"].is_array()) return {false, "field 'rows' must be an array"};
  for (std::size_t i = 0; i < j["rows"].size(); ++i) {
    const auto& row = j["rows"][i];
    const std::string at = "rows[" + std::to_string(i) + "]";
    if (!row.is_object()) return {false, at + " must be an object"};
    for (const char* f : {"n", "seed_rep", "rounds", "total_bits"})
      if (!row.contains(f) || !row[f].is_number_unsigned()) return {false, at + ": missing field '" + f + "'"};
    if (!row.contains("verdict") || !row["verdict"].is_string()) return {false, at + ": missing field 'verdict'"};
  }
  const auto& fit = j["fit"];
  if (!fit.is_null()) {
    for (const char* f : {"slope", "residual"})
      if (!fit.contains(f) || !fit[f].is_number()) return {false, std::string("fit: missing field '") + f + "'"};
    if (!fit.contains("label") || fit["label"] != "empirical") return {false, "fit: label must be \"empirical\""};
  }
  return {true, "ok"};
}

}  // namespace clique
