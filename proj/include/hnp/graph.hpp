#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hnp/config.hpp"
#include "hnp/geometry.hpp"

namespace hnp {

using Color = int;

struct Edge {
  int u = 0;
  int v = 0;
  friend constexpr bool operator==(Edge, Edge) = default;
  friend constexpr auto operator<=>(Edge, Edge) = default;
};

/// Finite graph, optionally with plane coordinates. Edges are stored with
/// u < v in the order given.
class UnitDistanceGraph {
 public:
  UnitDistanceGraph() = default;

  UnitDistanceGraph(int n, std::vector<Edge> edges, std::optional<std::vector<PlanePoint>> coords = std::nullopt,
                    std::map<int, bool> assume_non_colorable = {})
      : n_(n), edges_(std::move(edges)), coords_(std::move(coords)), assumed_(std::move(assume_non_colorable)) {
    if (n_ < 0) throw InvalidInput("vertex count must be non-negative");
    std::set<Edge> seen;
    for (Edge& e : edges_) {
      if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_)
        throw InvalidInput("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range");
      if (e.u == e.v) throw InvalidInput("self-loop at vertex " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
      if (!seen.insert(e).second)
        throw InvalidInput("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    if (coords_) {
      if (static_cast<int>(coords_->size()) != n_) throw InvalidInput("coordinate count does not match vertex count");
      for (const PlanePoint& p : *coords_)
        if (!is_finite(p)) throw InvalidInput("non-finite vertex coordinate");
    }
    adjacency_.assign(static_cast<std::size_t>(n_), {});
    for (const Edge& e : edges_) {
      adjacency_[static_cast<std::size_t>(e.u)].push_back(e.v);
      adjacency_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
  }

  [[nodiscard]] int vertex_count() const { return n_; }
  [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const std::optional<std::vector<PlanePoint>>& coords() const { return coords_; }
  [[nodiscard]] const std::vector<int>& neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] const std::map<int, bool>& assumptions() const { return assumed_; }

  [[nodiscard]] bool assumed_non_colorable(int k) const {
    const auto it = assumed_.find(k);
    return it != assumed_.end() && it->second;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::optional<std::vector<PlanePoint>> coords_;
  std::map<int, bool> assumed_;
  std::vector<std::vector<int>> adjacency_;
};

/// All pairs at distance within tol of 1.
inline UnitDistanceGraph infer_edges(const std::vector<PlanePoint>& coords, double tol = kTolerances.edge) {
  if (!(tol > 0.0 && tol < 0.1)) throw InvalidInput("edge tolerance must lie in (0, 0.1)");
  std::vector<Edge> edges;
  const int n = static_cast<int>(coords.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(distance(coords[static_cast<std::size_t>(i)], coords[static_cast<std::size_t>(j)]) - 1.0) <= tol)
        edges.push_back({i, j});
  return {n, std::move(edges), coords};
}

struct EmbeddingReport {
  struct Offender {
    Edge edge;
    double length = 0.0;
  };
  bool pass = true;
  std::vector<Offender> offending;
};

inline EmbeddingReport verify_unit_embedding(const UnitDistanceGraph& g, double tol = kTolerances.edge) {
  if (!g.coords()) throw InvalidInput("graph has no coordinates to verify");
  EmbeddingReport report;
  const auto& pts = *g.coords();
  for (const Edge& e : g.edges()) {
    const double len = distance(pts[static_cast<std::size_t>(e.u)], pts[static_cast<std::size_t>(e.v)]);
    if (!(std::abs(len - 1.0) <= tol)) {
      report.pass = false;
      report.offending.push_back({e, len});
    }
  }
  return report;
}

inline bool is_proper_coloring(const UnitDistanceGraph& g, const std::vector<Color>& coloring) {
  if (static_cast<int>(coloring.size()) != g.vertex_count()) return false;
  return std::none_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
    return coloring[static_cast<std::size_t>(e.u)] == coloring[static_cast<std::size_t>(e.v)];
  });
}

// ---------------------------------------------------------------------------
// Exact colourability: DSATUR-ordered backtracking.
// ---------------------------------------------------------------------------

enum class Decision { yes, no, undecided };

struct ColorabilityResult {
  Decision decision = Decision::undecided;
  std::optional<std::vector<Color>> witness;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;

namespace detail {

class DsaturSearch {
 public:
  DsaturSearch(const UnitDistanceGraph& g, int k, std::uint64_t budget)
      : g_(g), k_(k), budget_(budget), color_(static_cast<std::size_t>(g.vertex_count()), -1),
        blocked_(static_cast<std::size_t>(g.vertex_count()) * static_cast<std::size_t>(k), 0),
        saturation_(static_cast<std::size_t>(g.vertex_count()), 0) {}

  ColorabilityResult run() {
    ColorabilityResult out;
    const bool found = g_.vertex_count() == 0 || search(0, 0);
    out.nodes = nodes_;
    if (exhausted_) {
      out.decision = Decision::undecided;
    } else if (found) {
      out.decision = Decision::yes;
      out.witness = color_;
    } else {
      out.decision = Decision::no;
    }
    return out;
  }

 private:
  int& blocked(int v, int c) {
    return blocked_[static_cast<std::size_t>(v) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(c)];
  }

  int pick_vertex() const {
    int best = -1;
    for (int v = 0; v < g_.vertex_count(); ++v) {
      if (color_[static_cast<std::size_t>(v)] >= 0) continue;
      if (best < 0) {
        best = v;
        continue;
      }
      const int sv = saturation_[static_cast<std::size_t>(v)];
      const int sb = saturation_[static_cast<std::size_t>(best)];
      if (sv > sb || (sv == sb && g_.neighbors(v).size() > g_.neighbors(best).size())) best = v;
    }
    return best;
  }

  void assign(int v, int c, int delta) {
    color_[static_cast<std::size_t>(v)] = delta > 0 ? c : -1;
    for (const int w : g_.neighbors(v)) {
      int& b = blocked(w, c);
      if (delta > 0) {
        if (b++ == 0) ++saturation_[static_cast<std::size_t>(w)];
      } else {
        if (--b == 0) --saturation_[static_cast<std::size_t>(w)];
      }
    }
  }

  // Colours above `used` are interchangeable, so only one fresh colour is tried.
  bool search(int depth, int used) {
    if (depth == g_.vertex_count()) return true;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    const int v = pick_vertex();
    const int limit = std::min(k_, used + 1);
    for (int c = 0; c < limit; ++c) {
      if (blocked(v, c) > 0) continue;
      assign(v, c, +1);
      if (search(depth + 1, std::max(used, c + 1))) return true;
      assign(v, c, -1);
      if (exhausted_) return false;
    }
    return false;
  }

  const UnitDistanceGraph& g_;
  int k_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<Color> color_;
  std::vector<int> blocked_;
  std::vector<int> saturation_;
};

}  // namespace detail

/// Exact k-colourability. Never wrong: exhausting the node budget yields
/// Decision::undecided.
inline ColorabilityResult is_k_colorable(const UnitDistanceGraph& g, int k,
                                         std::uint64_t node_budget = kDefaultNodeBudget) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  return detail::DsaturSearch(g, k, node_budget).run();
}

struct ChromaticResult {
  enum class Status { found, exceeds_max, undecided };
  Status status = Status::undecided;
  int value = 0;
  std::optional<std::vector<Color>> witness;
};

inline ChromaticResult chromatic_number(const UnitDistanceGraph& g, int k_max,
                                        std::uint64_t node_budget = kDefaultNodeBudget) {
  if (g.vertex_count() == 0) throw InvalidInput("chromatic number of an empty graph is undefined");
  if (k_max < 1) throw InvalidInput("k_max must be at least 1");
  for (int k = 1; k <= k_max; ++k) {
    const ColorabilityResult r = is_k_colorable(g, k, node_budget);
    if (r.decision == Decision::undecided) return {ChromaticResult::Status::undecided, k, std::nullopt};
    if (r.decision == Decision::yes) return {ChromaticResult::Status::found, k, r.witness};
  }
  return {ChromaticResult::Status::exceeds_max, k_max + 1, std::nullopt};
}

// ---------------------------------------------------------------------------
// Built-in fixtures
// ---------------------------------------------------------------------------

inline UnitDistanceGraph triangle_graph() {
  std::vector<PlanePoint> pts{{0.0, 0.0}, {1.0, 0.0}, {0.5, std::numbers::sqrt3 / 2.0}};
  return {3, {{0, 1}, {0, 2}, {1, 2}}, pts};
}

/// Two unit rhombi sharing the origin, tips at distance sqrt3; the second is
/// the first rotated by 2 asin(1/(2 sqrt3)) so the tips are exactly 1 apart.
inline UnitDistanceGraph moser_spindle() {
  const double s = std::numbers::sqrt3;
  const std::vector<PlanePoint> rhombus{{0.0, 0.0}, {s / 2.0, 0.5}, {s / 2.0, -0.5}, {s, 0.0}};
  const Isometry turn{0.0, 0.0, 2.0 * std::asin(1.0 / (2.0 * s))};
  std::vector<PlanePoint> pts = rhombus;
  for (std::size_t i = 1; i < rhombus.size(); ++i) pts.push_back(apply_isometry(turn, rhombus[i]));
  const std::vector<Edge> edges{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3},   // first rhombus
                                {0, 4}, {0, 5}, {4, 5}, {4, 6}, {5, 6},   // rotated copy
                                {3, 6}};                                  // tip to tip
  return {7, edges, pts};
}

inline UnitDistanceGraph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return {n, std::move(edges)};
}

inline UnitDistanceGraph path_graph(int n) {
  std::vector<Edge> edges;
  std::vector<PlanePoint> pts;
  for (int i = 0; i < n; ++i) {
    pts.push_back({static_cast<double>(i), 0.0});
    if (i > 0) edges.push_back({i - 1, i});
  }
  return {n, std::move(edges), std::move(pts)};
}

/// Regular n-gon with unit sides.
inline UnitDistanceGraph cycle_graph(int n) {
  std::vector<Edge> edges;
  std::vector<PlanePoint> pts;
  const double radius = 0.5 / std::sin(std::numbers::pi / n);
  for (int i = 0; i < n; ++i) {
    pts.push_back(radius * cis(2.0 * std::numbers::pi * i / n));
    edges.push_back({i, (i + 1) % n});
  }
  return {n, std::move(edges), std::move(pts)};
}

/// "triangle", "moser", "K<n>" (n <= 12), "path<n>", "cycle<n>"; an
/// underscore before n is accepted ("K_5").
inline UnitDistanceGraph builtin_graph(std::string_view name) {
  if (name == "triangle") return triangle_graph();
  if (name == "moser") return moser_spindle();
  auto sized = [&](std::string_view prefix, int lo, int hi) -> std::optional<int> {
    if (!name.starts_with(prefix)) return std::nullopt;
    std::string_view rest = name.substr(prefix.size());
    if (rest.starts_with('_')) rest.remove_prefix(1);
    if (rest.empty() || rest.size() > 3) return std::nullopt;
    int n = 0;
    for (const char ch : rest) {
      if (ch < '0' || ch > '9') return std::nullopt;
      n = n * 10 + (ch - '0');
    }
    if (n < lo || n > hi) throw InvalidInput("size out of range for builtin graph '" + std::string(name) + "'");
    return n;
  };
  if (const auto n = sized("K", 1, 12)) return complete_graph(*n);
  if (const auto n = sized("path", 1, 64)) return path_graph(*n);
  if (const auto n = sized("cycle", 3, 64)) return cycle_graph(*n);
  throw InvalidInput("unknown builtin graph '" + std::string(name) +
                     "' (valid: triangle, moser, K<n> n<=12, path<n>, cycle<n>)");
}

}  // namespace hnp
