#include <gtest/gtest.h>

#include <vector>

#include "hnp/game.hpp"

using namespace hnp;

namespace {

// Every colouring, no symmetry reduction.
std::vector<std::vector<Color>> all_colorings(int n, int k) {
  std::vector<std::vector<Color>> out;
  std::vector<Color> c(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(c);
    int i = 0;
    while (i < n && ++c[static_cast<std::size_t>(i)] == k) c[static_cast<std::size_t>(i++)] = 0;
    if (i == n) return out;
  }
}

Rational weighted_mono(const UnitDistanceGraph& g, const std::vector<Rational>& w, const std::vector<Color>& c) {
  Rational s = 0;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edges()[static_cast<std::size_t>(e)];
    if (c[static_cast<std::size_t>(ed.u)] == c[static_cast<std::size_t>(ed.v)]) s += w[static_cast<std::size_t>(e)];
  }
  return s;
}

// Checks both certificates against every colouring: the weights hold every
// colouring to at least `value`, and the mixture keeps every edge at most
// value + exploitability.
void verify_by_brute_force(const UnitDistanceGraph& g, int k, const GameSolution& s) {
  if (g.edge_count() == 0) return;
  Rational total = 0;
  for (const Rational& w : s.weights) {
    EXPECT_GE(w, 0);
    total += w;
  }
  EXPECT_EQ(total, 1);
  Rational best = -1;
  for (const auto& c : all_colorings(g.vertex_count(), k)) {
    const Rational cost = weighted_mono(g, s.weights, c);
    if (best < 0 || cost < best) best = cost;
  }
  EXPECT_EQ(best, s.value);
  Rational mass = 0;
  for (const MixedComponent& m : s.mixed) {
    EXPECT_GT(m.probability, 0);
    mass += m.probability;
    EXPECT_EQ(ColoringProfile::of(g, m.coloring), m.profile);
  }
  EXPECT_EQ(mass, 1);
  EXPECT_EQ(max_edge_expectation(s.mixed, g.edge_count()), s.value + s.exploitability);
}

UnitDistanceGraph disjoint_double(const UnitDistanceGraph& g) {
  std::vector<Edge> edges = g.edges();
  const int n = g.vertex_count();
  for (const Edge& e : g.edges()) edges.push_back({e.u + n, e.v + n});
  return {2 * n, edges};
}

struct Frozen {
  const char* graph;
  int k;
  Rational value;
};

// Values from an independent floating-point LP over all colourings,
// rationalised.
const std::vector<Frozen> kFrozen{
    {"moser", 3, Rational(1, 11)}, {"moser", 4, Rational(0)},   {"K5", 4, Rational(1, 10)},
    {"triangle", 2, Rational(1, 3)}, {"K4", 2, Rational(1, 3)}, {"K6", 3, Rational(1, 5)},
    {"cycle5", 2, Rational(1, 5)},  {"K4", 3, Rational(1, 6)},  {"cycle6", 2, Rational(0)},
    {"path5", 2, Rational(0)},
};

}  // namespace

TEST(Game, TriangleProfiles) {
  const auto all = enumerate_all_profiles(triangle_graph(), 2);
  EXPECT_EQ(all.size(), 4U);
  const auto minimal = pareto_minimal(all);
  EXPECT_EQ(minimal.size(), 3U);
  for (const auto& p : minimal) EXPECT_EQ(p.profile.count(), 1);
}

TEST(Game, MoserProfileCount) {
  EXPECT_EQ(enumerate_all_profiles(moser_spindle(), 3).size(), 258U);
}

TEST(Game, FrozenValues) {
  for (const Frozen& f : kFrozen) {
    const UnitDistanceGraph g = builtin_graph(f.graph);
    const GameSolution s = exact_game_value(g, f.k);
    EXPECT_EQ(s.value, f.value) << f.graph << " k=" << f.k;
    EXPECT_TRUE(s.exact);
    EXPECT_EQ(s.exploitability, 0);
    verify_by_brute_force(g, f.k, s);
  }
}

TEST(Game, ValueZeroExactlyWhenColourable) {
  for (const char* name : {"triangle", "moser", "K4", "K5", "cycle5", "cycle7", "path6"})
    for (int k = 1; k <= 4; ++k) {
      const UnitDistanceGraph g = builtin_graph(name);
      const bool colourable = is_k_colorable(g, k).decision == Decision::yes;
      EXPECT_EQ(exact_game_value(g, k).value == 0, colourable) << name << " k=" << k;
    }
}

TEST(Game, ParetoReductionIsLossless) {
  for (const Frozen& f : kFrozen) {
    const UnitDistanceGraph g = builtin_graph(f.graph);
    const auto all = enumerate_all_profiles(g, f.k);
    const auto minimal = pareto_minimal(all);
    EXPECT_LE(minimal.size(), all.size());
    EXPECT_EQ(solve_profile_game(all, g.edge_count()).value, solve_profile_game(minimal, g.edge_count()).value);
    for (const auto& p : all) {
      bool dominated = false;
      for (const auto& q : minimal) dominated = dominated || q.profile.is_subset_of(p.profile);
      EXPECT_TRUE(dominated);
    }
  }
}

TEST(Game, SandwichAgainstArbitraryStrategies) {
  const UnitDistanceGraph g = moser_spindle();
  const Rational value = exact_game_value(g, 3).value;
  EXPECT_GE(value, Rational(1, g.edge_count()));
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> w;
    Rational total = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
      w.emplace_back(1 + (trial * 7 + e * 13) % 5);
      total += w.back();
    }
    for (Rational& x : w) x /= total;
    const BestResponse<Rational> br = best_response<Rational>(g, w, 3);
    EXPECT_LE(br.cost, value);
    EXPECT_EQ(br.cost, weighted_mono(g, w, br.coloring));
  }
}

TEST(Game, BestResponseScalesWithWeights) {
  const UnitDistanceGraph g = moser_spindle();
  std::vector<double> w;
  for (int e = 0; e < g.edge_count(); ++e) w.push_back(0.1 + 0.05 * e);
  std::vector<double> w3;
  for (const double x : w) w3.push_back(3 * x);
  EXPECT_NEAR(best_response<double>(g, w3, 3).cost, 3 * best_response<double>(g, w, 3).cost, 1e-12);
  std::vector<double> negative = w;
  negative[0] = -1;
  EXPECT_THROW(best_response<double>(g, negative, 3), InvalidInput);
}

TEST(Game, DisjointCopyKeepsValue) {
  for (const char* name : {"triangle", "cycle5"}) {
    const UnitDistanceGraph g = builtin_graph(name);
    EXPECT_EQ(exact_game_value(disjoint_double(g), 2).value, exact_game_value(g, 2).value);
  }
}

TEST(Game, EdgelessAndCapped) {
  EXPECT_EQ(exact_game_value(UnitDistanceGraph(3, {}), 1).value, 0);
  EXPECT_THROW(exact_game_value(complete_graph(12), 3, 1000), BudgetExceeded);
}

TEST(Game, MwuCertificate) {
  for (const auto& [name, k] : std::vector<std::pair<const char*, int>>{{"triangle", 2}, {"moser", 3}, {"K5", 4}}) {
    const UnitDistanceGraph g = builtin_graph(name);
    const double eps = 0.02;
    const GameSolution approx = mwu_game_value(g, k, eps, 5);
    const Rational exact = exact_game_value(g, k).value;
    EXPECT_FALSE(approx.exact);
    EXPECT_LE(approx.value, exact);
    EXPECT_GE(approx.value + approx.exploitability, exact);
    EXPECT_NEAR(to_double(approx.value), to_double(exact), eps) << name;
    verify_by_brute_force(g, k, approx);
  }
}

TEST(Game, MwuIsDeterministic) {
  const GameSolution a = mwu_game_value(moser_spindle(), 3, 0.05, 9);
  const GameSolution b = mwu_game_value(moser_spindle(), 3, 0.05, 9);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_THROW(mwu_game_value(moser_spindle(), 3, 0.0), InvalidInput);
}

TEST(Game, LowerBounds) {
  EXPECT_EQ(lower_bound_from_graph(moser_spindle(), 3), Rational(1, 11));
  EXPECT_EQ(lower_bound_from_graph(triangle_graph(), 2), Rational(1, 3));
  EXPECT_THROW(lower_bound_from_graph(moser_spindle(), 4), InvalidInput);
  EXPECT_THROW(lower_bound_from_graph(complete_graph(4), 2), InvalidInput);
  const UnitDistanceGraph bent(3, {{0, 1}, {1, 2}, {0, 2}},
                               std::vector<PlanePoint>{{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.9}});
  EXPECT_THROW(lower_bound_from_graph(bent, 2), InvalidInput);

  // A large graph known only by its edge count and an external flag.
  std::vector<Edge> edges;
  for (int u = 0; u < 80 && edges.size() < 2722; ++u)
    for (int v = u + 1; v < 80 && edges.size() < 2722; ++v) edges.push_back({u, v});
  const UnitDistanceGraph flagged(80, edges, std::nullopt, {{4, true}});
  EXPECT_EQ(lower_bound_from_graph(flagged, 4), Rational(1, 2722));
}
