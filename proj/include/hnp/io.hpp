#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "hnp/badness.hpp"
#include "hnp/bounds.hpp"
#include "hnp/coloring.hpp"
#include "hnp/game.hpp"
#include "hnp/graph.hpp"
#include "hnp/rational.hpp"

namespace hnp {

using Json = nlohmann::ordered_json;

namespace detail {

inline void require_object(const Json& j, std::string_view what) {
  if (!j.is_object()) throw InvalidInput(std::string(what) + " must be a JSON object");
}

inline void reject_unknown(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const std::string_view a : allowed) ok = ok || key == a;
    if (!ok) throw InvalidInput("unknown field '" + key + "' in " + std::string(what));
  }
}

inline double get_number(const Json& j, const char* key, std::string_view what) {
  if (!j.contains(key)) throw InvalidInput("missing field '" + std::string(key) + "' in " + std::string(what));
  const Json& v = j.at(key);
  if (!v.is_number()) throw InvalidInput("field '" + std::string(key) + "' in " + std::string(what) + " must be a number");
  return v.get<double>();
}

inline int get_int(const Json& j, const char* key, std::string_view what) {
  const Json& v = j.at(key);
  if (!v.is_number_integer()) throw InvalidInput("field '" + std::string(key) + "' in " + std::string(what) + " must be an integer");
  return v.get<int>();
}

inline std::string get_string(const Json& j, const char* key, std::string_view what) {
  const Json& v = j.at(key);
  if (!v.is_string()) throw InvalidInput("field '" + std::string(key) + "' in " + std::string(what) + " must be a string");
  return v.get<std::string>();
}

inline Json point_json(PlanePoint p) { return Json::array({p.x, p.y}); }

inline PlanePoint parse_point(const Json& j, std::string_view what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidInput(std::string(what) + " must be a [x, y] pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Coloring descriptors
//   {"family": "stripe",  "k": 2, "width": w}
//   {"family": "hex",     "k": k, "diameter": d, "pattern": "residue", "multiplier": m}
//   {"family": "hex",     "k": 4, "diameter": d, "pattern": "quad"}
//   {"family": "isbell",  "k": 7, "diameter": d}
//   {"family": "overlay", "k": base_k + 1, "base": {...}, "offset": [x, y]}
// ---------------------------------------------------------------------------

inline constexpr std::string_view kFamilies = "stripe, hex, isbell, overlay";

inline Json descriptor_to_json(const ColoringDescriptor& d) {
  struct Visitor {
    Json operator()(const StripeSpec& s) const {
      return Json{{"family", "stripe"}, {"k", s.k}, {"width", s.width}};
    }
    Json operator()(const HexSpec& h) const {
      Json j{{"family", "hex"}, {"k", h.k}, {"diameter", h.diameter}};
      if (h.pattern == HexPattern::quad) {
        j["pattern"] = "quad";
      } else {
        j["pattern"] = "residue";
        j["multiplier"] = h.multiplier;
      }
      return j;
    }
    Json operator()(const IsbellSpec& s) const {
      return Json{{"family", "isbell"}, {"k", 7}, {"diameter", s.diameter}};
    }
    Json operator()(const OverlaySpec& o) const {
      const Json base = descriptor_to_json(*o.base);
      return Json{{"family", "overlay"}, {"k", base.at("k").get<int>() + 1}, {"base", base},
                  {"offset", detail::point_json(o.offset)}};
    }
  };
  return std::visit(Visitor{}, d.spec);
}

inline ColoringDescriptor descriptor_from_json(const Json& j) {
  constexpr std::string_view what = "coloring descriptor";
  detail::require_object(j, what);
  if (!j.contains("family")) throw InvalidInput("coloring descriptor needs a 'family' (valid: " + std::string(kFamilies) + ")");
  const std::string family = detail::get_string(j, "family", what);
  if (family == "stripe") {
    detail::reject_unknown(j, {"family", "k", "width"}, what);
    StripeSpec s;
    s.width = detail::get_number(j, "width", what);
    if (j.contains("k")) s.k = detail::get_int(j, "k", what);
    make_coloring({s});
    return {s};
  }
  if (family == "hex") {
    detail::reject_unknown(j, {"family", "k", "diameter", "pattern", "multiplier"}, what);
    if (!j.contains("k")) throw InvalidInput("hex descriptor needs 'k'");
    const int k = detail::get_int(j, "k", what);
    HexSpec h = default_hex_spec(k, detail::get_number(j, "diameter", what));
    if (j.contains("pattern")) {
      const std::string p = detail::get_string(j, "pattern", what);
      if (p == "quad") {
        h.pattern = HexPattern::quad;
        h.multiplier = 0;
      } else if (p == "residue") {
        if (h.pattern != HexPattern::residue) h.multiplier = 2;
        h.pattern = HexPattern::residue;
      } else {
        throw InvalidInput("hex pattern must be 'residue' or 'quad', got '" + p + "'");
      }
    }
    if (j.contains("multiplier")) {
      if (h.pattern == HexPattern::quad) throw InvalidInput("'multiplier' does not apply to the quad pattern");
      h.multiplier = detail::get_int(j, "multiplier", what);
    }
    make_coloring({h});
    return {h};
  }
  if (family == "isbell") {
    detail::reject_unknown(j, {"family", "k", "diameter"}, what);
    if (j.contains("k") && detail::get_int(j, "k", what) != 7) throw InvalidInput("isbell colouring has k = 7");
    IsbellSpec s;
    if (j.contains("diameter")) s.diameter = detail::get_number(j, "diameter", what);
    make_coloring({s});
    return {s};
  }
  if (family == "overlay") {
    detail::reject_unknown(j, {"family", "k", "base", "offset"}, what);
    if (!j.contains("base")) throw InvalidInput("overlay descriptor needs 'base'");
    auto base = std::make_shared<const ColoringDescriptor>(descriptor_from_json(j.at("base")));
    PlanePoint offset{};
    if (j.contains("offset")) offset = detail::parse_point(j.at("offset"), "overlay offset");
    ColoringDescriptor d{OverlaySpec{base, offset}};
    const PeriodicColoring c = make_coloring(d);
    if (j.contains("k") && detail::get_int(j, "k", what) != c.k())
      throw InvalidInput("overlay 'k' must be the base k plus one");
    return d;
  }
  throw InvalidInput("unknown coloring family '" + family + "' (valid: " + std::string(kFamilies) + ")");
}

// ---------------------------------------------------------------------------
// Estimates
// ---------------------------------------------------------------------------

inline std::string_view method_name(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::monte_carlo: return "mc";
    case EstimateMethod::grid: return "grid";
    case EstimateMethod::overlay_expectation: return "overlay";
  }
  return "mc";
}

/// {descriptor, method, n, seed, p_hat, err, ...}
inline Json estimate_to_json(const ColoringDescriptor& d, const BadnessEstimate& e) {
  Json j{{"descriptor", descriptor_to_json(d)}, {"method", method_name(e.method)}, {"n", e.samples}};
  if (e.method == EstimateMethod::grid) {
    j["seed"] = nullptr;
    j["grid"] = Json::array({e.grid.res_a, e.grid.res_b, e.grid.res_theta});
  } else {
    j["seed"] = e.seed;
  }
  if (e.method == EstimateMethod::overlay_expectation) j["offsets"] = e.offsets;
  j["monochromatic"] = e.monochromatic;
  j["p_hat"] = e.p_hat;
  j["err"] = e.error;
  return j;
}

// ---------------------------------------------------------------------------
// Graphs
//   {"n": count, "vertices": [[x, y], ...], "edges": [[i, j], ...],
//    "assume_non_colorable": {"4": true}}
// All fields optional; "n" is needed only for abstract graphs whose last
// vertices are isolated.
// ---------------------------------------------------------------------------

inline UnitDistanceGraph graph_from_json(const Json& j, double tol = kTolerances.edge) {
  constexpr std::string_view what = "graph file";
  detail::require_object(j, what);
  detail::reject_unknown(j, {"n", "vertices", "edges", "assume_non_colorable", "name"}, what);
  std::optional<std::vector<PlanePoint>> coords;
  if (j.contains("vertices")) {
    const Json& v = j.at("vertices");
    if (!v.is_array()) throw InvalidInput("'vertices' must be an array of [x, y] pairs");
    coords.emplace();
    for (const Json& p : v) coords->push_back(detail::parse_point(p, "vertex"));
  }
  std::map<int, bool> assumed;
  if (j.contains("assume_non_colorable")) {
    const Json& a = j.at("assume_non_colorable");
    if (!a.is_object()) throw InvalidInput("'assume_non_colorable' must map k to true/false");
    for (const auto& [key, value] : a.items()) {
      if (!value.is_boolean()) throw InvalidInput("'assume_non_colorable' values must be booleans");
      int k = 0;
      try {
        std::size_t used = 0;
        k = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw InvalidInput("'assume_non_colorable' keys must be integers, got '" + key + "'");
      }
      assumed[k] = value.get<bool>();
    }
  }
  if (!j.contains("edges")) {
    if (!coords) throw InvalidInput("graph file needs 'vertices', 'edges', or both");
    const UnitDistanceGraph inferred = infer_edges(*coords, tol);
    return {inferred.vertex_count(), inferred.edges(), coords, assumed};
  }
  std::vector<Edge> edges;
  int max_index = -1;
  for (const Json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw InvalidInput("each edge must be an [i, j] pair of integers");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
    max_index = std::max({max_index, edges.back().u, edges.back().v});
  }
  int n = coords ? static_cast<int>(coords->size()) : max_index + 1;
  if (j.contains("n")) {
    n = detail::get_int(j, "n", what);
    if (coords && static_cast<int>(coords->size()) != n) throw InvalidInput("'n' disagrees with the vertex list");
  }
  return {n, std::move(edges), std::move(coords), std::move(assumed)};
}

inline UnitDistanceGraph load_graph_file(const std::filesystem::path& path, double tol = kTolerances.edge) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open graph file '" + path.string() + "'");
  try {
    return graph_from_json(Json::parse(in), tol);
  } catch (const Json::exception& e) {
    throw InvalidInput("malformed graph file '" + path.string() + "': " + e.what());
  }
}

inline Json edges_json(const UnitDistanceGraph& g) {
  Json a = Json::array();
  for (const Edge& e : g.edges()) a.push_back(Json::array({e.u, e.v}));
  return a;
}

inline Json graph_to_json(const UnitDistanceGraph& g) {
  Json j{{"n", g.vertex_count()}};
  if (g.coords()) {
    Json v = Json::array();
    for (const PlanePoint& p : *g.coords()) v.push_back(detail::point_json(p));
    j["vertices"] = v;
  }
  j["edges"] = edges_json(g);
  if (!g.assumptions().empty()) {
    Json a = Json::object();
    for (const auto& [k, flag] : g.assumptions()) a[std::to_string(k)] = flag;
    j["assume_non_colorable"] = a;
  }
  return j;
}

inline Json embedding_report_to_json(const EmbeddingReport& r) {
  Json off = Json::array();
  for (const auto& o : r.offending) off.push_back(Json{{"edge", Json::array({o.edge.u, o.edge.v})}, {"length", o.length}});
  return Json{{"pass", r.pass}, {"offending", off}};
}

// ---------------------------------------------------------------------------
// Game solutions: rationals as "numerator/denominator" strings.
// ---------------------------------------------------------------------------

inline Json game_solution_to_json(const UnitDistanceGraph& g, int k, const GameSolution& s) {
  Json weights = Json::array();
  for (const Rational& w : s.weights) weights.push_back(to_string(w));
  Json mixed = Json::array();
  for (const MixedComponent& m : s.mixed) {
    Json mono = Json::array();
    for (int e = 0; e < m.profile.size(); ++e)
      if (m.profile.test(e)) mono.push_back(e);
    mixed.push_back(Json{{"probability", to_string(m.probability)}, {"coloring", m.coloring}, {"monochromatic_edges", mono}});
  }
  return Json{{"k", k},
              {"mode", s.exact ? "exact" : "mwu"},
              {"value", to_string(s.value)},
              {"value_decimal", to_double(s.value)},
              {"exploitability", to_string(s.exploitability)},
              {"edges", edges_json(g)},
              {"weights", weights},
              {"mixed_coloring", mixed}};
}

// ---------------------------------------------------------------------------
// Report configuration
//
// {"rounding": "ceil" | "floor",
//  "rows": [
//    {"k": 2,
//     "upper": {"value": "1/3" | 0.121, "source": "..."}
//            | {"chain": {"from_k": 4, "steps": 1}}
//            | {"estimate": {"descriptor": {...}, "method": "mc" | "grid",
//                            "n": 1000000, "seed": 7, "grid": [a, b, t]}},
//     "lower": {"builtin": "triangle"} | {"file": "graph.json"}
//            | {"value": "1/2722", "source": "..."},
//     "rounding": "ceil",
//     "alternatives": [0.00563],
//     "notes": ["..."]}]}
// ---------------------------------------------------------------------------

struct ReportConfig {
  RoundingMode rounding = RoundingMode::ceil;
  std::vector<ReportRowInput> rows;
};

namespace detail {

inline UpperBound parse_upper_value(const Json& u) {
  UpperBound b;
  const Json& v = u.at("value");
  if (v.is_string()) {
    const std::string text = v.get<std::string>();
    b.value = to_double(parse_rational(text));
    b.display = text;
  } else if (v.is_number()) {
    b.value = v.get<double>();
    b.display = format_decimal(b.value);
  } else {
    throw InvalidInput("upper 'value' must be a number or a \"p/q\" string");
  }
  if (!(b.value >= 0.0 && b.value <= 1.0)) throw InvalidInput("upper bound must lie in [0, 1]");
  b.provenance = u.contains("source") ? get_string(u, "source", "upper bound") : "supplied value";
  return b;
}

inline UpperBound run_estimate(const Json& spec, unsigned threads) {
  constexpr std::string_view what = "upper estimate";
  require_object(spec, what);
  reject_unknown(spec, {"descriptor", "method", "n", "seed", "grid"}, what);
  const ColoringDescriptor d = descriptor_from_json(spec.at("descriptor"));
  const PeriodicColoring c = make_coloring(d);
  const std::string method = spec.contains("method") ? get_string(spec, "method", what) : "mc";
  UpperBound b;
  if (method == "mc") {
    const auto n = spec.contains("n") ? spec.at("n").get<std::uint64_t>() : std::uint64_t{1'000'000};
    const auto seed = spec.contains("seed") ? spec.at("seed").get<std::uint64_t>() : kDefaultSeed;
    const BadnessEstimate e = mc_badness(c, n, seed, threads);
    b.value = e.p_hat;
    b.provenance = "mc_badness(" + descriptor_to_json(d).dump() + ", n=" + std::to_string(n) +
                   ", seed=" + std::to_string(seed) + "), stderr " + format_decimal(e.error);
  } else if (method == "grid") {
    if (!spec.contains("grid") || !spec.at("grid").is_array() || spec.at("grid").size() != 3)
      throw InvalidInput("grid estimate needs \"grid\": [res_a, res_b, res_theta]");
    const Json& g = spec.at("grid");
    const BadnessEstimate e = grid_badness(c, g[0].get<std::int64_t>(), g[1].get<std::int64_t>(), g[2].get<std::int64_t>(), threads);
    b.value = e.p_hat;
    b.provenance = "grid_badness(" + descriptor_to_json(d).dump() + ", " + g.dump() + "), disc " + format_decimal(e.error);
  } else {
    throw InvalidInput("estimate method must be 'mc' or 'grid'");
  }
  b.display = format_decimal(b.value);
  return b;
}

inline LowerBound parse_lower(const Json& l, int k, const std::filesystem::path& base_dir) {
  constexpr std::string_view what = "lower bound";
  require_object(l, what);
  reject_unknown(l, {"builtin", "file", "value", "source"}, what);
  if (l.contains("value")) {
    const Rational v = parse_rational(get_string(l, "value", what));
    return {v, l.contains("source") ? get_string(l, "source", what) : "supplied value"};
  }
  if (l.contains("builtin")) {
    const std::string name = get_string(l, "builtin", what);
    return {lower_bound_from_graph(builtin_graph(name), k), "1/|E| of builtin graph '" + name + "'"};
  }
  if (l.contains("file")) {
    std::filesystem::path p = get_string(l, "file", what);
    if (p.is_relative()) p = base_dir / p;
    const UnitDistanceGraph g = load_graph_file(p);
    return {lower_bound_from_graph(g, k), "1/|E| of graph file '" + get_string(l, "file", what) + "'"};
  }
  throw InvalidInput("lower bound needs 'builtin', 'file', or 'value'");
}

}  // namespace detail

/// Parses a report config and resolves every source (estimates are run,
/// graphs are checked, chains are applied in row order).
inline ReportConfig resolve_report_config(const Json& j, const std::filesystem::path& base_dir = ".",
                                          unsigned threads = 1) {
  constexpr std::string_view what = "report config";
  detail::require_object(j, what);
  detail::reject_unknown(j, {"rounding", "rows"}, what);
  ReportConfig cfg;
  if (j.contains("rounding")) cfg.rounding = parse_rounding(detail::get_string(j, "rounding", what));
  if (!j.contains("rows")) return cfg;
  std::map<int, double> resolved_upper;
  for (const Json& r : j.at("rows")) {
    detail::require_object(r, "report row");
    detail::reject_unknown(r, {"k", "upper", "lower", "rounding", "alternatives", "notes"}, "report row");
    ReportRowInput row;
    row.k = detail::get_int(r, "k", "report row");
    if (r.contains("upper")) {
      const Json& u = r.at("upper");
      detail::require_object(u, "upper bound");
      detail::reject_unknown(u, {"value", "source", "chain", "estimate"}, "upper bound");
      if (u.contains("value")) {
        row.upper = detail::parse_upper_value(u);
      } else if (u.contains("chain")) {
        const Json& c = u.at("chain");
        const int from = detail::get_int(c, "from_k", "chain");
        const int steps = c.contains("steps") ? detail::get_int(c, "steps", "chain") : row.k - from;
        const auto it = resolved_upper.find(from);
        if (it == resolved_upper.end())
          throw InvalidInput("chain for k=" + std::to_string(row.k) + " refers to k=" + std::to_string(from) +
                             ", which has no earlier upper bound");
        UpperBound b;
        b.value = chain_precur(it->second, steps);
        b.display = detail::format_decimal(b.value);
        b.provenance = "chain_precur(upper bound of k=" + std::to_string(from) + ", steps=" + std::to_string(steps) +
                       "), factor 1 - pi/(4 sqrt 3) per step";
        row.upper = b;
      } else if (u.contains("estimate")) {
        row.upper = detail::run_estimate(u.at("estimate"), threads);
      } else {
        throw InvalidInput("upper bound needs 'value', 'chain', or 'estimate'");
      }
      resolved_upper[row.k] = row.upper->value;
    }
    if (r.contains("lower")) row.lower = detail::parse_lower(r.at("lower"), row.k, base_dir);
    if (r.contains("rounding")) row.rounding = parse_rounding(detail::get_string(r, "rounding", "report row"));
    if (r.contains("alternatives")) {
      for (const Json& a : r.at("alternatives")) {
        if (!a.is_number()) throw InvalidInput("'alternatives' must be numbers");
        row.alternatives.push_back(a.get<double>());
      }
    }
    if (r.contains("notes")) {
      for (const Json& n : r.at("notes")) {
        if (!n.is_string()) throw InvalidInput("'notes' must be strings");
        row.notes.push_back(n.get<std::string>());
      }
    }
    cfg.rows.push_back(std::move(row));
  }
  return cfg;
}

inline Json report_to_json(const BoundsReport& r) {
  Json rows = Json::array();
  for (const ReportRow& row : r.rows) {
    Json j{{"k", row.k}, {"complete", row.complete}, {"consistent", row.consistent}};
    if (row.upper) {
      j["upper_bound_pk"] = Json{{"value", row.upper->value}, {"display", row.upper->display}, {"provenance", row.upper->provenance}};
    } else {
      j["upper_bound_pk"] = nullptr;
    }
    j["lower_bound_pk"] = Json{{"value", to_string(row.lower.value)}, {"source", row.lower.source}};
    j["rounding"] = to_string(row.rounding);
    j["edge_lower_bound"] = row.edge_lower_bound ? Json(*row.edge_lower_bound) : Json(nullptr);
    j["vertex_lower_bound"] = row.vertex_lower_bound ? Json(*row.vertex_lower_bound) : Json(nullptr);
    j["annotations"] = row.annotations;
    rows.push_back(j);
  }
  return Json{{"rounding", to_string(r.default_rounding)}, {"rows", rows}};
}

/// Markdown table rendered from the JSON form of the report.
inline std::string report_markdown(const Json& report) {
  std::ostringstream out;
  out << "| $k$ | Upper Bound on $p_k$ | Lower Bound on $p_k$ | Lower Bound on $|E|$ | Lower Bound on $|V|$ |\n";
  out << "|---|---|---|---|---|\n";
  std::vector<std::string> notes;
  for (const Json& row : report.at("rows")) {
    const int k = row.at("k").get<int>();
    const std::string upper = row.at("upper_bound_pk").is_null() ? "n/a" : row.at("upper_bound_pk").at("display").get<std::string>();
    std::string lower = row.at("lower_bound_pk").at("value").get<std::string>();
    if (lower == "0/1") lower = "0";
    auto cell = [](const Json& v) { return v.is_null() ? std::string("n/a") : std::to_string(v.get<std::int64_t>()); };
    out << "| " << k << " | " << upper << " | " << lower << " | " << cell(row.at("edge_lower_bound")) << " | "
        << cell(row.at("vertex_lower_bound")) << " |\n";
    for (const Json& a : row.at("annotations")) notes.push_back("k=" + std::to_string(k) + ": " + a.get<std::string>());
    if (!row.at("upper_bound_pk").is_null())
      notes.push_back("k=" + std::to_string(k) + ": upper bound from " +
                      row.at("upper_bound_pk").at("provenance").get<std::string>() + "; |E| rounding " +
                      row.at("rounding").get<std::string>());
  }
  if (!notes.empty()) {
    out << "\nNotes:\n\n";
    for (const std::string& n : notes) out << "- " << n << "\n";
  }
  return out.str();
}

}  // namespace hnp
