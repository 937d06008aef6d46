#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "clique/clique.hpp"

using namespace clique;
using namespace clique::nondet;

namespace {

// Exit codes: 0 ok, 1 correctness mismatch, 2 configuration or input error,
// 3 guard or round limit.
enum Exit { ok = 0, mismatch = 1, config = 2, guard = 3 };

struct Globals {
  std::string graph;
  std::size_t k = 2;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string out;
  std::size_t max_rounds = 0;
  bool parallel = false;
  std::size_t threads = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw ConfigError("cannot write " + g.out);
  f << text;
}

Graph load_graph(const Globals& g) {
  if (g.graph.empty()) throw ConfigError("--graph is required");
  if (g.graph == "-") return parse_graph(std::cin);
  return read_graph_file(g.graph);
}

RunOptions run_options(const Globals& g) {
  RunOptions opt;
  if (g.max_rounds) opt.max_rounds = g.max_rounds;
  if (g.parallel) opt.mode = ExecutionMode::parallel;
  opt.threads = g.threads;
  return opt;
}

std::string members_text(const std::optional<VertexSet>& s) {
  if (!s) return "none";
  std::string out;
  for (NodeId v : s->members) out += (out.empty() ? "" : " ") + std::to_string(v);
  return out.empty() ? "{}" : out;
}

nlohmann::ordered_json members_json(const std::optional<VertexSet>& s) {
  return s ? nlohmann::ordered_json(s->members) : nlohmann::ordered_json();
}

int cmd_run(const Globals& g, const std::string& algorithm) {
  const Graph graph = load_graph(g);
  const auto a = parse_algorithm(algorithm);
  const auto result = run_algorithm(a, graph, g.k, run_options(g));
  const auto check = check_against_oracle(a, graph, g.k, result.set);
  const auto& rep = result.report;
  if (g.format == "json") {
    nlohmann::ordered_json j{{"algorithm", algorithm}, {"k", g.k},           {"n", graph.n()},
                             {"rounds", rep.rounds},   {"total_bits", rep.total_bits},
                             {"max_link_load", rep.max_link_load()},         {"set", members_json(result.set)},
                             {"oracle", to_string(check)}};
    emit(g, j.dump(2) + "\n");
  } else {
    std::ostringstream o;
    o << "algorithm " << algorithm << "\nk " << g.k << "\nn " << graph.n() << "\nrounds " << rep.rounds
      << "\ntotal_bits " << rep.total_bits << "\nset " << members_text(result.set) << "\noracle " << to_string(check)
      << "\n";
    emit(g, o.str());
  }
  return check == OracleCheck::mismatch ? mismatch : ok;
}

int cmd_oracle(const Globals& g, const std::string& problem) {
  const Graph graph = load_graph(g);
  std::ostringstream o;
  if (problem == "ds") o << members_text(oracle::has_dominating_set(graph, g.k)) << "\n";
  else if (problem == "vc") o << members_text(oracle::has_vertex_cover(graph, g.k)) << "\n";
  else if (problem == "is") o << members_text(oracle::has_independent_set(graph, g.k)) << "\n";
  else if (problem == "col") o << (oracle::chromatic_number_at_most(graph, g.k) ? "yes" : "no") << "\n";
  else if (problem == "mis") o << oracle::max_independent_set_size(graph) << "\n";
  else if (problem == "chrom") {
    std::size_t c = 0;
    while (!oracle::chromatic_number_at_most(graph, c)) ++c;
    o << c << "\n";
  } else throw ConfigError("--problem must be ds, vc, is, col, chrom or mis");
  emit(g, o.str());
  return ok;
}

int cmd_gen(const Globals& g, const std::string& kind, std::size_t n, double p) {
  emit(g, to_graph_text(generate({parse_graph_kind(kind), n, p, g.seed})));
  return ok;
}

int cmd_reduce(const Globals& g, const std::string& kind) {
  const Graph graph = load_graph(g);
  if (kind == "is-ds") {
    const auto r = algo::build_is_to_ds_reduction(graph, g.k);
    std::cerr << "n' = " << r.derived.n() << " (bound " << (g.k * g.k + g.k + 2) * graph.n() << ")\n";
    emit(g, to_graph_text(r.derived));
  } else if (kind == "col-is") {
    emit(g, to_graph_text(algo::build_col_to_is_reduction(graph, g.k)));
  } else {
    throw ConfigError("--kind must be is-ds or col-is");
  }
  return ok;
}

int cmd_verify(const Globals& g, const std::string& verifier, const std::string& cert) {
  const Graph graph = load_graph(g);
  const CorpusVerifier v(parse_corpus_kind(verifier));
  std::ifstream in(cert);
  if (!in) throw ConfigError("cannot open certificate " + cert);
  const auto z = parse_certificate(in, graph.n(), v.label_bound(graph.n()));
  const auto verdict = verify_certificate(v, graph, z, run_options(g));
  std::ostringstream o;
  o << (verdict.accepted ? "accept" : "reject") << "\nrounds " << verdict.report.rounds << "\n";
  emit(g, o.str());
  return ok;
}

int cmd_exists(const Globals& g, const std::string& verifier, bool normal) {
  const Graph graph = load_graph(g);
  const CorpusVerifier v(parse_corpus_kind(verifier));
  std::optional<Labelling> z;
  if (normal) z = find_normal_form_certificate(NormalForm<CorpusVerifier>(v), graph);
  else z = find_certificate(v, graph, v.label_bound(graph.n()));
  emit(g, z ? "yes\n" + certificate_text(*z) : "no\n");
  return ok;
}

int cmd_normalform(const Globals& g, const std::string& verifier) {
  const Graph graph = load_graph(g);
  const NormalForm<CorpusVerifier> nf{CorpusVerifier(parse_corpus_kind(verifier))};
  const bool a = exists_certificate(nf.inner(), graph);
  const auto w = find_normal_form_certificate(nf, graph);
  const std::size_t n = graph.n(), bound = 2 * nf.rounds(n) * (n - 1) * bandwidth(n);
  bool within = true;
  if (w)
    for (const auto& l : w->labels) within = within && l.size() <= bound;
  std::ostringstream o;
  o << "A " << (a ? "yes" : "no") << "\nB " << (w ? "yes" : "no") << "\nlabel_bound " << bound << "\nT "
    << nf.rounds(n) << "\n";
  emit(g, o.str());
  return a == w.has_value() && within ? ok : mismatch;
}

int cmd_game(const Globals& g, const std::string& predicate, std::size_t audit) {
  const Graph graph = load_graph(g);
  const auto p = parse_predicate(predicate);
  bool value = false;
  std::string mode = "exhaustive";
  if (audit > 0) {
    value = audit_sigma2(p, graph, audit, g.seed).value;
    mode = "audit";
  } else {
    value = evaluate_alternation(sigma2_universal_protocol(p), graph);
  }
  const bool member = p.holds(graph);
  std::ostringstream o;
  o << "game " << (value ? "accept" : "reject") << "\nmember " << (member ? "yes" : "no") << "\nmode " << mode << "\n";
  emit(g, o.str());
  return value == member ? ok : mismatch;
}

int cmd_bounds(const Globals& g, const std::string& check, const std::string& t_spec, std::uint64_t lo,
               std::uint64_t hi, std::uint64_t k_max, const std::string& form, const std::vector<std::string>& params) {
  using namespace clique::bounds;
  std::ostringstream o;
  if (check == "lemma1") {
    if (params.size() < 4 || params.size() > 5) throw ConfigError("lemma1 needs --params n b L t [M]");
    BoundParams<> p;
    BigInt* fields[] = {&p.n, &p.b, &p.L, &p.t, &p.M};
    for (std::size_t i = 0; i < params.size(); ++i) {
      try {
        *fields[i] = BigInt(params[i]);
      } catch (const std::exception&) {
        throw ConfigError("--params: '" + params[i] + "' is not an integer");
      }
    }
    const auto v = protocol_count_loglog(p);
    o << "n,lhs,rhs,holds,t_star,rhs_exact\n"
      << str(p.n) << ',' << str(BigInt(p.n * p.L)) << ',' << str(v.ceiling()) << ','
      << (exists_unrealizable_function(p) ? 1 : 0) << ',' << str(crossing_rounds(p)) << ',' << v.text() << '\n';
  } else {
    const auto t = parse_t_spec(t_spec);
    const NRange range{lo, hi};
    if (check == "thm1") write_csv(o, check_thm1_regime(t, range));
    else if (check == "thm3") {
      if (form != "proof" && form != "literal") throw ConfigError("--form must be proof or literal");
      write_csv(o, check_thm3_inequality(t, range, form == "proof" ? Thm3Form::proof : Thm3Form::literal));
    } else if (check == "thm6") write_csv(o, check_thm6_inequality(t, k_max, range));
    else throw ConfigError("--check must be lemma1, thm1, thm3 or thm6");
  }
  emit(g, o.str());
  return ok;
}

int cmd_bench(const Globals& g, const std::string& config_path, const std::string& validate) {
  if (!validate.empty()) {
    const auto r = report_schema_validate(slurp(validate));
    std::cout << (r.valid ? "valid" : "invalid") << ": " << r.message << "\n";
    return r.valid ? ok : mismatch;
  }
  if (config_path.empty()) throw ConfigError("bench needs --config or --validate");
  auto cfg = parse_config(slurp(config_path));
  if (g.format == "json" || g.format == "csv") cfg.format = g.format;
  if (g.max_rounds) cfg.max_rounds = g.max_rounds;
  const auto report = run_experiment(cfg, g.parallel, g.threads);
  emit(g, report_text(report));
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congested clique laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--graph", g.graph, "graph file (\"n m\" header then edges), - for stdin");
  app.add_option("--k", g.k, "parameter k")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed");
  app.add_option("--format", g.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", g.out, "output file");
  app.add_option("--max-rounds", g.max_rounds, "round limit (exit 3 when exhausted)");
  app.add_flag("--parallel", g.parallel, "parallel execution mode");
  app.add_option("--threads", g.threads, "worker threads in parallel mode");

  std::function<int()> action;

  auto* run = app.add_subcommand("run", "run a distributed algorithm on a graph");
  std::string algorithm = "kds";
  run->add_option("--algo", algorithm, "kds, kvc, kis or kis-via-ds");
  run->callback([&] { action = [&] { return cmd_run(g, algorithm); }; });

  auto* orc = app.add_subcommand("oracle", "centralized exhaustive answer");
  std::string problem = "ds";
  orc->add_option("--problem", problem, "ds, vc, is, col (k-colourable), chrom (chromatic number) or mis");
  orc->callback([&] { action = [&] { return cmd_oracle(g, problem); }; });

  auto* gen = app.add_subcommand("gen", "generate a graph");
  std::string kind = "er";
  std::size_t n = 8;
  double p = 0.3;
  gen->add_option("--kind", kind, "er, path, cycle, star, complete or empty");
  gen->add_option("--n", n, "nodes")->check(CLI::NonNegativeNumber);
  gen->add_option("--p", p, "edge probability")->check(CLI::Range(0.0, 1.0));
  gen->callback([&] { action = [&] { return cmd_gen(g, kind, n, p); }; });

  auto* red = app.add_subcommand("reduce", "build a reduction graph");
  std::string red_kind = "is-ds";
  red->add_option("--kind", red_kind, "is-ds or col-is");
  red->callback([&] { action = [&] { return cmd_reduce(g, red_kind); }; });

  std::string verifier = "two-colouring";
  auto* ver = app.add_subcommand("verify", "check a certificate with a corpus verifier");
  std::string cert;
  ver->add_option("--verifier", verifier, "two-colouring, degree, hamiltonian-path, spanning-tree, always-accept");
  ver->add_option("--cert", cert, "certificate file: lines \"id hex [bits]\"")->required();
  ver->callback([&] { action = [&] { return cmd_verify(g, verifier, cert); }; });

  auto* ex = app.add_subcommand("exists", "search for an accepting certificate");
  bool normal = false;
  ex->add_option("--verifier", verifier, "corpus verifier");
  ex->add_flag("--normal-form", normal, "search transcript certificates instead");
  ex->callback([&] { action = [&] { return cmd_exists(g, verifier, normal); }; });

  auto* nf = app.add_subcommand("normalform", "compare a verifier with its transcript normal form");
  nf->add_option("--verifier", verifier, "corpus verifier");
  nf->callback([&] { action = [&] { return cmd_normalform(g, verifier); }; });

  auto* game = app.add_subcommand("game", "evaluate the two-quantifier universal protocol");
  std::string predicate = "has-edge";
  std::size_t audit = 0;
  game->add_option("--predicate", predicate, "has-edge, connected, has-triangle or all");
  game->add_option("--audit", audit, "sampled guesses for audit mode (0: exhaustive)");
  game->callback([&] { action = [&] { return cmd_game(g, predicate, audit); }; });

  auto* bnd = app.add_subcommand("bounds", "counting arithmetic as CSV");
  std::string check = "thm1", t_spec = "const 1", form = "proof";
  std::uint64_t lo = 2, hi = 1U << 16, k_max = 4;
  std::vector<std::string> params;
  bnd->add_option("--check", check, "lemma1, thm1, thm3 or thm6");
  bnd->add_option("--t-spec", t_spec, "const c | poly a e | nlogn-frac d");
  bnd->add_option("--n-lo", lo, "first n");
  bnd->add_option("--n-hi", hi, "last n");
  bnd->add_option("--k-max", k_max, "largest k for thm6");
  bnd->add_option("--form", form, "thm3 form: proof or literal");
  bnd->add_option("--params", params, "lemma1: n b L t [M]");
  bnd->callback([&] { action = [&] { return cmd_bounds(g, check, t_spec, lo, hi, k_max, form, params); }; });

  auto* bench = app.add_subcommand("bench", "run an experiment config and emit a report");
  std::string config_path, validate;
  bench->add_option("--config", config_path, "experiment JSON");
  bench->add_option("--validate", validate, "validate a report file instead");
  bench->callback([&] { action = [&] { return cmd_bench(g, config_path, validate); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config;
  }
  try {
    return action();
  } catch (const GuardExceeded& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return guard;
  } catch (const RoundTimeout& e) {
    std::cerr << "timeout: " << e.what() << "\n";
    return guard;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return mismatch;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return config;
  }
}
