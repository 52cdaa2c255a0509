#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hnp/config.hpp"
#include "hnp/rational.hpp"

namespace hnp {

enum class RoundingMode { ceil, floor };

inline std::string_view to_string(RoundingMode m) { return m == RoundingMode::ceil ? "ceil" : "floor"; }

inline RoundingMode parse_rounding(std::string_view s) {
  if (s == "ceil") return RoundingMode::ceil;
  if (s == "floor") return RoundingMode::floor;
  throw InvalidInput("rounding mode must be 'ceil' or 'floor', got '" + std::string(s) + "'");
}

/// Integer consequence of |E| >= 1/eps. `ceil` is the tight bound; `floor`
/// reproduces tables that truncate. Reciprocals within a relative 1e-9 of an
/// integer are taken as that integer in both modes.
inline std::int64_t edge_bound(double eps, RoundingMode mode = RoundingMode::ceil) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidInput("edge_bound needs 0 < eps <= 1");
  const double inv = 1.0 / eps;
  const double nearest = std::round(inv);
  if (std::abs(inv - nearest) <= kTolerances.integer_snap * inv) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(mode == RoundingMode::ceil ? std::ceil(inv) : std::floor(inv));
}

/// Smallest V with V^3 > E^2, i.e. the vertex count forced by |E| < |V|^{3/2}.
inline std::int64_t vertex_bound(std::int64_t edges) {
  if (edges < 1) throw InvalidInput("vertex_bound needs E >= 1");
  using Wide = unsigned __int128;
  const Wide target = static_cast<Wide>(edges) * static_cast<Wide>(edges);
  auto cube = [](std::int64_t v) { return static_cast<Wide>(v) * static_cast<Wide>(v) * static_cast<Wide>(v); };
  auto v = static_cast<std::int64_t>(std::cbrt(static_cast<double>(edges) * static_cast<double>(edges)));
  v = std::max<std::int64_t>(v - 2, 1);
  while (cube(v) <= target) ++v;
  while (v > 1 && cube(v - 1) > target) --v;
  return v;
}

/// 1 - pi / (4 sqrt 3): the fraction of unit edges that miss the overlay patch.
inline constexpr double kPatchEdgeFactor = 1.0 - std::numbers::pi / (4.0 * std::numbers::sqrt3);

/// Upper bound on p_{k+steps} from an upper bound on p_k.
inline double chain_precur(double pk_upper, int steps) {
  if (!(pk_upper >= 0.0 && pk_upper <= 1.0)) throw InvalidInput("chain_precur needs pk_upper in [0, 1]");
  if (steps < 0) throw InvalidInput("chain_precur needs steps >= 0");
  return pk_upper * std::pow(kPatchEdgeFactor, steps);
}

// ---------------------------------------------------------------------------
// Summary report
// ---------------------------------------------------------------------------

struct UpperBound {
  double value = 0.0;
  std::string display;     ///< as supplied or formatted ("1/3", "0.121")
  std::string provenance;  ///< where the number came from
};

struct LowerBound {
  Rational value;
  std::string source;
};

struct ReportRowInput {
  int k = 0;
  std::optional<UpperBound> upper;
  std::optional<LowerBound> lower;
  std::optional<RoundingMode> rounding;
  /// Other known upper bounds for the row; the report lists the edge
  /// bound each would give.
  std::vector<double> alternatives;
  std::vector<std::string> notes;
};

struct ReportRow {
  int k = 0;
  bool complete = false;
  std::optional<UpperBound> upper;
  LowerBound lower;
  RoundingMode rounding = RoundingMode::ceil;
  std::optional<std::int64_t> edge_lower_bound;
  std::optional<std::int64_t> vertex_lower_bound;
  bool consistent = true;
  std::vector<std::string> annotations;
};

struct BoundsReport {
  RoundingMode default_rounding = RoundingMode::ceil;
  std::vector<ReportRow> rows;
};

namespace detail {
inline std::string format_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}
}  // namespace detail

inline BoundsReport build_report(const std::vector<ReportRowInput>& inputs,
                                 RoundingMode default_rounding = RoundingMode::ceil) {
  BoundsReport report;
  report.default_rounding = default_rounding;
  for (const ReportRowInput& in : inputs) {
    ReportRow row;
    row.k = in.k;
    row.rounding = in.rounding.value_or(default_rounding);
    row.lower = in.lower.value_or(LowerBound{Rational(0), "trivial"});
    row.upper = in.upper;
    row.annotations = in.notes;
    if (in.rounding && *in.rounding != default_rounding)
      row.annotations.push_back("rounding overridden to " + std::string(to_string(*in.rounding)) + " for this row");
    if (!in.upper) {
      row.complete = false;
      row.annotations.push_back("incomplete: no upper bound on p_k supplied");
      report.rows.push_back(std::move(row));
      continue;
    }
    if (in.upper->value <= 0.0) {
      row.complete = false;
      row.annotations.push_back("no edge bound: upper bound is 0, so no finite graph is forced");
    } else {
      row.complete = true;
      row.edge_lower_bound = edge_bound(in.upper->value, row.rounding);
      row.vertex_lower_bound = vertex_bound(*row.edge_lower_bound);
    }
    if (to_double(row.lower.value) > in.upper->value) {
      row.consistent = false;
      row.annotations.push_back("inconsistent: lower bound exceeds upper bound");
    }
    for (const double alt : in.alternatives) {
      const std::int64_t ce = edge_bound(alt, RoundingMode::ceil);
      const std::int64_t fe = edge_bound(alt, RoundingMode::floor);
      row.annotations.push_back("alternative upper bound " + detail::format_decimal(alt) + " gives |E| >= " +
                                std::to_string(ce) + " (ceil) / " + std::to_string(fe) + " (floor), |V| >= " +
                                std::to_string(vertex_bound(ce)) + " (ceil)");
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace hnp
