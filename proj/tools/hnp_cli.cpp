// hnp: command-line front end for badness estimation, parameter search,
// finite-graph games and the bounds report.
//
// Exit codes: 0 success, 2 usage or parse error, 3 undecided / budget
// exhausted, 4 internal invariant violation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hnp/hnp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUndecided = 3;
constexpr int kExitInvariant = 4;

struct Undecided : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const hnp::Json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw hnp::InvalidInput("cannot write '" + out_path + "'");
    f << text;
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string descriptor_file;
  std::string family;
  double width = std::numbers::sqrt3 / 2.0;
  int k = 0;
  double diameter = 0.0;
  std::string pattern;
  int multiplier = -1;
  std::string method = "mc";
  std::uint64_t n = 1'000'000;
  std::int64_t res_a = 256;
  std::int64_t res_b = 256;
  std::int64_t res_theta = 1024;
  std::uint64_t offsets = 1000;
  std::uint64_t seed = hnp::kDefaultSeed;
  bool table = false;
  std::string out;
};

hnp::Json descriptor_json_from_flags(const EvalArgs& a) {
  if (a.family.empty()) throw hnp::InvalidInput("give --descriptor FILE or --family (valid families: " + std::string(hnp::kFamilies) + ")");
  hnp::Json j{{"family", a.family}};
  if (a.family == "stripe") {
    j["width"] = a.width;
    j["k"] = a.k > 0 ? a.k : 2;
  } else if (a.family == "hex") {
    if (a.k <= 0) throw hnp::InvalidInput("hex family needs --k");
    j["k"] = a.k;
    j["diameter"] = a.diameter > 0 ? a.diameter : 1.0;
    if (!a.pattern.empty()) j["pattern"] = a.pattern;
    if (a.multiplier >= 0) j["multiplier"] = a.multiplier;
  } else if (a.family == "isbell") {
    if (a.diameter > 0) j["diameter"] = a.diameter;
  } else if (a.family == "overlay") {
    throw hnp::InvalidInput("overlay colourings are given with --descriptor FILE");
  } else {
    throw hnp::InvalidInput("unknown family '" + a.family + "' (valid families: " + std::string(hnp::kFamilies) + ")");
  }
  return j;
}

hnp::Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hnp::InvalidInput("cannot open '" + path + "'");
  try {
    return hnp::Json::parse(in);
  } catch (const hnp::Json::exception& e) {
    throw hnp::InvalidInput("malformed JSON in '" + path + "': " + e.what());
  }
}

int run_eval(const EvalArgs& a) {
  const hnp::Json dj = a.descriptor_file.empty() ? descriptor_json_from_flags(a) : load_json_file(a.descriptor_file);
  const hnp::ColoringDescriptor d = hnp::descriptor_from_json(dj);
  const hnp::PeriodicColoring c = hnp::make_coloring(d);
  const unsigned threads = hnp::default_threads();
  hnp::BadnessEstimate e;
  if (a.method == "mc") {
    e = hnp::mc_badness(c, a.n, a.seed, threads);
  } else if (a.method == "grid") {
    e = hnp::grid_badness(c, a.res_a, a.res_b, a.res_theta, threads);
  } else if (a.method == "overlay") {
    e = hnp::expected_overlay_badness(c, a.offsets, a.n, a.seed, threads);
  } else {
    throw hnp::InvalidInput("unknown method '" + a.method + "' (valid: mc, grid, overlay)");
  }
  const hnp::Json record = hnp::estimate_to_json(d, e);
  if (a.table) {
    std::cout << "family\tk\tmethod\tn\tseed\tp_hat\terr\n";
    std::cout << record["descriptor"]["family"].get<std::string>() << '\t' << record["descriptor"]["k"] << '\t'
              << record["method"].get<std::string>() << '\t' << record["n"] << '\t' << record["seed"] << '\t'
              << fmt(record["p_hat"].get<double>()) << '\t' << fmt(record["err"].get<double>()) << '\n';
    if (!a.out.empty()) {
      std::ofstream f(a.out, std::ios::binary);
      f << record.dump(2) << "\n";
    }
  } else {
    emit(record, a.out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// optimize
// ---------------------------------------------------------------------------

struct OptimizeArgs {
  std::string family = "hex";
  int k = 3;
  std::string pattern;
  int multiplier = -1;
  double lo = 0.0;
  double hi = 0.0;
  int budget = 31;
  std::uint64_t n = 1'000'000;
  std::uint64_t seed = hnp::kDefaultSeed;
  int refine = 12;
  std::string out;
};

int run_optimize(const OptimizeArgs& a) {
  if (!(a.lo < a.hi)) throw hnp::InvalidInput("--lo must be smaller than --hi");
  hnp::ParametricFamily family;
  if (a.family == "hex") {
    if (a.pattern.empty() && a.multiplier < 0) {
      family = hnp::hex_diameter_family(a.k);
    } else {
      const hnp::HexPattern p = a.pattern == "quad" ? hnp::HexPattern::quad : hnp::HexPattern::residue;
      if (!a.pattern.empty() && a.pattern != "quad" && a.pattern != "residue")
        throw hnp::InvalidInput("--pattern must be 'residue' or 'quad'");
      family = hnp::hex_diameter_family(a.k, p, a.multiplier < 0 ? 2 : a.multiplier);
    }
  } else if (a.family == "stripe") {
    family = hnp::stripe_width_family(a.k);
  } else {
    throw hnp::InvalidInput("optimize supports families: stripe (width), hex (diameter)");
  }
  const hnp::OptimizationResult r =
      hnp::optimize_parameter(family, a.lo, a.hi, a.budget, a.n, a.seed, hnp::default_threads(), a.refine);
  hnp::Json evals = hnp::Json::array();
  for (const auto& e : r.evaluations) evals.push_back(hnp::Json{{"param", e.param}, {"p_hat", e.estimate.p_hat}});
  hnp::Json skipped = hnp::Json::array();
  for (const auto& s : r.skipped) skipped.push_back(hnp::Json{{"param", s.param}, {"reason", s.reason}});
  const hnp::Json record{{"family", a.family},
                         {"parameter", a.family == "hex" ? "diameter" : "width"},
                         {"lo", a.lo},
                         {"hi", a.hi},
                         {"budget", a.budget},
                         {"n_per_eval", a.n},
                         {"seed", a.seed},
                         {"best_param", r.best_param},
                         {"best", hnp::estimate_to_json(family.make(r.best_param), r.best)},
                         {"evaluations", evals},
                         {"skipped", skipped}};
  emit(record, a.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// graph
// ---------------------------------------------------------------------------

struct GraphArgs {
  std::string builtin;
  std::string file;
  int k = 0;
  int k_max = 12;
  double tol = hnp::kTolerances.edge;
  std::uint64_t node_budget = hnp::kDefaultNodeBudget;
  std::uint64_t cap = hnp::kDefaultEnumerationCap;
  std::optional<double> mwu;
  std::uint64_t seed = hnp::kDefaultSeed;
  std::string out;
};

hnp::UnitDistanceGraph load_graph(const GraphArgs& a) {
  if (a.builtin.empty() == a.file.empty()) throw hnp::InvalidInput("give exactly one of --builtin NAME or --file PATH");
  return a.builtin.empty() ? hnp::load_graph_file(a.file, a.tol) : hnp::builtin_graph(a.builtin);
}

int need_k(const GraphArgs& a) {
  if (a.k < 1) throw hnp::InvalidInput("this subcommand needs --k >= 1");
  return a.k;
}

int run_graph_verify(const GraphArgs& a) {
  const hnp::UnitDistanceGraph g = load_graph(a);
  const hnp::EmbeddingReport r = hnp::verify_unit_embedding(g, a.tol);
  hnp::Json j = hnp::embedding_report_to_json(r);
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["tolerance"] = a.tol;
  emit(j, a.out);
  return kExitOk;
}

int run_graph_chroma(const GraphArgs& a) {
  const hnp::UnitDistanceGraph g = load_graph(a);
  const hnp::ChromaticResult r = hnp::chromatic_number(g, a.k_max, a.node_budget);
  hnp::Json j{{"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"k_max", a.k_max}};
  switch (r.status) {
    case hnp::ChromaticResult::Status::found:
      j["status"] = "found";
      j["chromatic_number"] = r.value;
      j["witness"] = *r.witness;
      emit(j, a.out);
      return kExitOk;
    case hnp::ChromaticResult::Status::exceeds_max:
      j["status"] = "exceeds_k_max";
      j["chromatic_number"] = nullptr;
      emit(j, a.out);
      return kExitUndecided;
    case hnp::ChromaticResult::Status::undecided:
      j["status"] = "undecided";
      j["undecided_at_k"] = r.value;
      j["chromatic_number"] = nullptr;
      emit(j, a.out);
      return kExitUndecided;
  }
  return kExitInvariant;
}

int run_graph_value(const GraphArgs& a) {
  const hnp::UnitDistanceGraph g = load_graph(a);
  const int k = need_k(a);
  hnp::GameSolution s;
  if (a.mwu) {
    hnp::MwuOptions opt;
    opt.node_budget = a.node_budget;
    s = hnp::mwu_game_value(g, k, *a.mwu, a.seed, opt);
  } else {
    s = hnp::exact_game_value(g, k, a.cap);
  }
  hnp::Json j = hnp::game_solution_to_json(g, k, s);
  if (a.mwu) {
    j["eps"] = *a.mwu;
    j["seed"] = a.seed;
  }
  emit(j, a.out);
  return kExitOk;
}

int run_graph_bound(const GraphArgs& a) {
  const hnp::UnitDistanceGraph g = load_graph(a);
  const int k = need_k(a);
  const hnp::Rational b = hnp::lower_bound_from_graph(g, k, a.tol, a.node_budget);
  emit(hnp::Json{{"k", k}, {"edges", g.edge_count()}, {"lower_bound_pk", hnp::to_string(b)}}, a.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

struct ReportArgs {
  std::string config;
  std::string out_dir = ".";
};

int run_report(const ReportArgs& a) {
  hnp::ReportConfig cfg;
  if (!a.config.empty()) {
    const hnp::Json j = load_json_file(a.config);
    cfg = hnp::resolve_report_config(j, std::filesystem::path(a.config).parent_path(), hnp::default_threads());
  }
  const hnp::BoundsReport report = hnp::build_report(cfg.rows, cfg.rounding);
  const hnp::Json j = hnp::report_to_json(report);
  for (const hnp::ReportRow& row : report.rows)
    if (!row.complete) std::cerr << "warning: row k=" << row.k << " is incomplete\n";
  std::filesystem::create_directories(a.out_dir);
  const std::filesystem::path dir(a.out_dir);
  {
    std::ofstream f(dir / "report.json", std::ios::binary);
    if (!f) throw hnp::InvalidInput("cannot write report.json in '" + a.out_dir + "'");
    f << j.dump(2) << "\n";
  }
  {
    std::ofstream f(dir / "report.md", std::ios::binary);
    f << hnp::report_markdown(j);
  }
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Badness of periodic plane colourings, finite unit-distance graph games, and the bounds they imply"};
  app.require_subcommand(1);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Estimate p_k(c) for a periodic colouring");
  eval->add_option("--descriptor", ev.descriptor_file, "Colouring descriptor JSON file");
  eval->add_option("--family", ev.family, "stripe | hex | isbell");
  eval->add_option("--width", ev.width, "Stripe width");
  eval->add_option("--k", ev.k, "Number of colours");
  eval->add_option("--diameter", ev.diameter, "Hexagon diameter");
  eval->add_option("--pattern", ev.pattern, "Hex pattern: residue | quad");
  eval->add_option("--multiplier", ev.multiplier, "Hex residue multiplier m in (q + m r) mod k");
  eval->add_option("--method", ev.method, "mc | grid | overlay");
  eval->add_option("--n", ev.n, "Samples (per offset for overlay)");
  eval->add_option("--res-a", ev.res_a);
  eval->add_option("--res-b", ev.res_b);
  eval->add_option("--res-theta", ev.res_theta);
  eval->add_option("--offsets", ev.offsets, "Patch offsets for the overlay expectation");
  eval->add_option("--seed", ev.seed);
  eval->add_flag("--table", ev.table, "Print a table row instead of JSON");
  eval->add_option("--out", ev.out, "Also write the JSON record here");

  OptimizeArgs op;
  auto* optimize = app.add_subcommand("optimize", "Minimise badness over one family parameter");
  optimize->add_option("--family", op.family, "hex (diameter) | stripe (width)");
  optimize->add_option("--k", op.k);
  optimize->add_option("--pattern", op.pattern);
  optimize->add_option("--multiplier", op.multiplier);
  optimize->add_option("--lo", op.lo)->required();
  optimize->add_option("--hi", op.hi)->required();
  optimize->add_option("--budget", op.budget, "Grid points before refinement");
  optimize->add_option("--n", op.n, "Samples per evaluation");
  optimize->add_option("--seed", op.seed);
  optimize->add_option("--refine", op.refine, "Golden-section iterations");
  optimize->add_option("--out", op.out);

  GraphArgs ga;
  auto* graph = app.add_subcommand("graph", "Finite unit-distance graph tools");
  graph->require_subcommand(1);
  auto add_graph_common = [&](CLI::App* sub) {
    sub->add_option("--builtin", ga.builtin, "triangle | moser | K<n> | path<n> | cycle<n>");
    sub->add_option("--file", ga.file, "Graph JSON file");
    sub->add_option("--tol", ga.tol, "Unit-edge tolerance");
    sub->add_option("--budget", ga.node_budget, "Search node budget");
    sub->add_option("--out", ga.out);
  };
  auto* verify = graph->add_subcommand("verify", "Check that every edge has unit length");
  auto* chroma = graph->add_subcommand("chroma", "Exact chromatic number");
  auto* value = graph->add_subcommand("value", "Game value q_k(G) = p_k(G)");
  auto* bound = graph->add_subcommand("bound", "Lower bound 1/|E| on p_k");
  for (CLI::App* sub : {verify, chroma, value, bound}) add_graph_common(sub);
  chroma->add_option("--k-max", ga.k_max);
  value->add_option("--k", ga.k)->required();
  value->add_option("--cap", ga.cap, "Enumeration cap on k^(n-1)");
  value->add_option("--mwu", ga.mwu, "Use multiplicative weights with this eps");
  value->add_option("--seed", ga.seed);
  bound->add_option("--k", ga.k)->required();

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "Build the bounds table");
  report->add_option("--config", ra.config, "Report config JSON");
  report->add_option("--out-dir", ra.out_dir, "Directory for report.json and report.md");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (eval->parsed()) return run_eval(ev);
    if (optimize->parsed()) return run_optimize(op);
    if (report->parsed()) return run_report(ra);
    if (verify->parsed()) return run_graph_verify(ga);
    if (chroma->parsed()) return run_graph_chroma(ga);
    if (value->parsed()) return run_graph_value(ga);
    if (bound->parsed()) return run_graph_bound(ga);
  } catch (const hnp::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hnp::BudgetExceeded& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const hnp::InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitUsage;
}
