#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <unordered_map>
#include <vector>

#include "hnp/config.hpp"
#include "hnp/graph.hpp"
#include "hnp/rational.hpp"
#include "hnp/rng.hpp"

namespace hnp {

// ---------------------------------------------------------------------------
// Coloring profiles: which edges a colouring makes monochromatic.
// ---------------------------------------------------------------------------

class ColoringProfile {
 public:
  ColoringProfile() = default;
  explicit ColoringProfile(int edges) : size_(edges), words_(static_cast<std::size_t>((edges + 63) / 64), 0) {}

  static ColoringProfile of(const UnitDistanceGraph& g, std::span<const Color> coloring) {
    ColoringProfile p(g.edge_count());
    const auto& edges = g.edges();
    for (int i = 0; i < g.edge_count(); ++i) {
      const Edge& e = edges[static_cast<std::size_t>(i)];
      if (coloring[static_cast<std::size_t>(e.u)] == coloring[static_cast<std::size_t>(e.v)]) p.set(i);
    }
    return p;
  }

  [[nodiscard]] int size() const { return size_; }
  [[nodiscard]] bool test(int i) const {
    return (words_[static_cast<std::size_t>(i) / 64] >> (static_cast<unsigned>(i) % 64)) & 1U;
  }
  void set(int i) { words_[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (static_cast<unsigned>(i) % 64); }

  [[nodiscard]] int count() const {
    int c = 0;
    for (const std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  /// Every edge set here is also set in `other`.
  [[nodiscard]] bool is_subset_of(const ColoringProfile& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    return true;
  }

  [[nodiscard]] const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const ColoringProfile&, const ColoringProfile&) = default;

  /// Canonical order: popcount, then word-wise.
  friend bool canonical_less(const ColoringProfile& a, const ColoringProfile& b) {
    const int ca = a.count();
    const int cb = b.count();
    if (ca != cb) return ca < cb;
    return a.words_ < b.words_;
  }

 private:
  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ProfileHash {
  std::size_t operator()(const ColoringProfile& p) const {
    std::uint64_t h = static_cast<std::uint64_t>(p.size());
    for (const std::uint64_t w : p.words()) h = mix64(h ^ w);
    return static_cast<std::size_t>(h);
  }
};

/// A profile together with the first colouring (in enumeration order) that
/// realises it.
struct ProfileWitness {
  ColoringProfile profile;
  std::vector<Color> coloring;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 20'000'000;

/// Every distinct profile over all k-colourings with vertex 0 coloured 0, in
/// canonical order.
inline std::vector<ProfileWitness> enumerate_all_profiles(const UnitDistanceGraph& g, int k,
                                                          std::uint64_t cap = kDefaultEnumerationCap) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  const int n = g.vertex_count();
  long double total = 1.0L;
  for (int i = 1; i < n; ++i) {
    total *= k;
    if (total > static_cast<long double>(cap))
      throw BudgetExceeded("k^(n-1) colourings exceed the enumeration cap of " + std::to_string(cap) +
                           "; use the multiplicative-weights solver instead");
  }
  std::unordered_map<ColoringProfile, std::vector<Color>, ProfileHash> seen;
  std::vector<Color> coloring(static_cast<std::size_t>(n), 0);
  while (true) {
    ColoringProfile p = ColoringProfile::of(g, coloring);
    seen.try_emplace(std::move(p), coloring);
    int i = n - 1;
    while (i >= 1 && coloring[static_cast<std::size_t>(i)] == k - 1) coloring[static_cast<std::size_t>(i--)] = 0;
    if (i < 1) break;
    ++coloring[static_cast<std::size_t>(i)];
  }
  std::vector<ProfileWitness> out;
  out.reserve(seen.size());
  for (auto& [profile, witness] : seen) out.push_back({profile, witness});
  std::sort(out.begin(), out.end(),
            [](const ProfileWitness& a, const ProfileWitness& b) { return canonical_less(a.profile, b.profile); });
  return out;
}

/// Drops every profile that has a distinct subset in the set. Input must be in
/// canonical order (subsets precede supersets).
inline std::vector<ProfileWitness> pareto_minimal(const std::vector<ProfileWitness>& profiles) {
  std::vector<ProfileWitness> kept;
  for (const ProfileWitness& p : profiles) {
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&](const ProfileWitness& q) {
      return q.profile.is_subset_of(p.profile);
    });
    if (!dominated) kept.push_back(p);
  }
  return kept;
}

inline std::vector<ProfileWitness> enumerate_coloring_profiles(const UnitDistanceGraph& g, int k,
                                                               std::uint64_t cap = kDefaultEnumerationCap) {
  return pareto_minimal(enumerate_all_profiles(g, k, cap));
}

// ---------------------------------------------------------------------------
// Game solutions
// ---------------------------------------------------------------------------

struct MixedComponent {
  ColoringProfile profile;
  std::vector<Color> coloring;
  Rational probability;
};

/// Value of the edge-weighting vs colouring game with certificates for both
/// players: every colouring scores at least `value` against `weights`, and
/// `mixed` makes every edge monochromatic with probability at most
/// value + exploitability.
struct GameSolution {
  Rational value;
  std::vector<Rational> weights;
  std::vector<MixedComponent> mixed;
  Rational exploitability;
  bool exact = true;
};

inline Rational weighted_cost(std::span<const Rational> weights, const ColoringProfile& p) {
  Rational s = 0;
  for (int e = 0; e < p.size(); ++e)
    if (p.test(e)) s += weights[static_cast<std::size_t>(e)];
  return s;
}

/// Largest per-edge monochromatic probability under the mixed strategy.
inline Rational max_edge_expectation(const std::vector<MixedComponent>& mixed, int edges) {
  Rational best = 0;
  for (int e = 0; e < edges; ++e) {
    Rational s = 0;
    for (const MixedComponent& m : mixed)
      if (m.profile.test(e)) s += m.probability;
    best = std::max(best, s);
  }
  return best;
}

namespace detail {

/// Dense rational tableau for  max 1'y  s.t.  A y <= 1, y >= 0, with Bland's
/// rule. A is edges x profiles with 0/1 entries and no all-zero column.
class ProfileSimplex {
 public:
  ProfileSimplex(const std::vector<ProfileWitness>& profiles, int edges)
      : rows_(edges), profiles_(static_cast<int>(profiles.size())), cols_(profiles_ + edges),
        tableau_(static_cast<std::size_t>(rows_), std::vector<Rational>(static_cast<std::size_t>(cols_) + 1)),
        reduced_(static_cast<std::size_t>(cols_), 0), basis_(static_cast<std::size_t>(rows_)) {
    for (int j = 0; j < profiles_; ++j) {
      reduced_[static_cast<std::size_t>(j)] = 1;
      for (int e = 0; e < rows_; ++e)
        if (profiles[static_cast<std::size_t>(j)].profile.test(e)) at(e, j) = 1;
    }
    for (int e = 0; e < rows_; ++e) {
      at(e, profiles_ + e) = 1;
      rhs(e) = 1;
      basis_[static_cast<std::size_t>(e)] = profiles_ + e;
    }
  }

  void solve() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (reduced_[static_cast<std::size_t>(j)] > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      Rational best_ratio;
      for (int i = 0; i < rows_; ++i) {
        const Rational& a = at(i, enter);
        if (a <= 0) continue;
        Rational ratio = rhs(i) / a;
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave < 0) throw InvariantViolation("profile LP is unbounded (an all-zero profile slipped through)");
      pivot(leave, enter);
    }
  }

  /// Optimal y for each profile column.
  [[nodiscard]] std::vector<Rational> primal() const {
    std::vector<Rational> y(static_cast<std::size_t>(profiles_), 0);
    for (int i = 0; i < rows_; ++i) {
      const int b = basis_[static_cast<std::size_t>(i)];
      if (b < profiles_) y[static_cast<std::size_t>(b)] = rhs(i);
    }
    return y;
  }

  /// Shadow prices of the edge constraints.
  [[nodiscard]] std::vector<Rational> dual() const {
    std::vector<Rational> pi(static_cast<std::size_t>(rows_));
    for (int e = 0; e < rows_; ++e) pi[static_cast<std::size_t>(e)] = -reduced_[static_cast<std::size_t>(profiles_ + e)];
    return pi;
  }

 private:
  Rational& at(int i, int j) { return tableau_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  [[nodiscard]] const Rational& at(int i, int j) const {
    return tableau_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  Rational& rhs(int i) { return at(i, cols_); }
  [[nodiscard]] const Rational& rhs(int i) const { return at(i, cols_); }

  void pivot(int row, int col) {
    auto& pr = tableau_[static_cast<std::size_t>(row)];
    const Rational p = pr[static_cast<std::size_t>(col)];
    for (Rational& x : pr) x /= p;
    for (int i = 0; i < rows_; ++i) {
      if (i == row) continue;
      auto& r = tableau_[static_cast<std::size_t>(i)];
      const Rational f = r[static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (std::size_t j = 0; j < r.size(); ++j)
        if (pr[j] != 0) r[j] -= f * pr[j];
    }
    const Rational f = reduced_[static_cast<std::size_t>(col)];
    for (int j = 0; j < cols_; ++j)
      if (pr[static_cast<std::size_t>(j)] != 0) reduced_[static_cast<std::size_t>(j)] -= f * pr[static_cast<std::size_t>(j)];
    basis_[static_cast<std::size_t>(row)] = col;
  }

  int rows_;
  int profiles_;
  int cols_;
  std::vector<std::vector<Rational>> tableau_;
  std::vector<Rational> reduced_;
  std::vector<int> basis_;
};

inline void check_certificates(const GameSolution& s, const std::vector<ProfileWitness>& profiles, int edges) {
  Rational wsum = 0;
  for (const Rational& w : s.weights) {
    if (w < 0) throw InvariantViolation("negative edge weight in certificate");
    wsum += w;
  }
  if (edges > 0 && wsum != 1) throw InvariantViolation("edge weights do not sum to 1");
  Rational psum = 0;
  for (const MixedComponent& m : s.mixed) {
    if (m.probability < 0) throw InvariantViolation("negative probability in mixed colouring");
    psum += m.probability;
  }
  if (edges > 0 && psum != 1) throw InvariantViolation("mixed colouring probabilities do not sum to 1");
  for (const ProfileWitness& p : profiles)
    if (weighted_cost(s.weights, p.profile) < s.value)
      throw InvariantViolation("a colouring beats the certified value");
  if (edges > 0 && max_edge_expectation(s.mixed, edges) > s.value + s.exploitability)
    throw InvariantViolation("mixed colouring exceeds the certified value on some edge");
}

}  // namespace detail

/// Exact game value over the given profile set (any superset of the
/// Pareto-minimal profiles gives the same value).
inline GameSolution solve_profile_game(const std::vector<ProfileWitness>& profiles, int edges) {
  GameSolution s;
  s.exact = true;
  s.exploitability = 0;
  if (edges == 0) {
    s.value = 0;
    return s;
  }
  if (profiles.empty()) throw InvalidInput("profile game needs at least one profile");
  const auto zero = std::find_if(profiles.begin(), profiles.end(),
                                 [](const ProfileWitness& p) { return p.profile.count() == 0; });
  if (zero != profiles.end()) {
    s.value = 0;
    s.weights.assign(static_cast<std::size_t>(edges), Rational(1, edges));
    s.mixed.push_back({zero->profile, zero->coloring, 1});
    detail::check_certificates(s, profiles, edges);
    return s;
  }

  detail::ProfileSimplex lp(profiles, edges);
  lp.solve();
  const std::vector<Rational> y = lp.primal();
  const std::vector<Rational> pi = lp.dual();
  const Rational total_y = std::accumulate(y.begin(), y.end(), Rational(0));
  const Rational total_pi = std::accumulate(pi.begin(), pi.end(), Rational(0));
  if (total_y != total_pi || total_y <= 0) throw InvariantViolation("simplex primal and dual objectives differ");

  s.value = 1 / total_y;
  s.weights.reserve(static_cast<std::size_t>(edges));
  for (const Rational& p : pi) s.weights.push_back(p / total_pi);
  for (std::size_t j = 0; j < y.size(); ++j)
    if (y[j] != 0) s.mixed.push_back({profiles[j].profile, profiles[j].coloring, y[j] * s.value});

  // Zero duality gap: the weights guarantee exactly `value`, and the mixed
  // colouring concedes exactly `value` on its worst edge.
  Rational guaranteed = std::numeric_limits<int>::max();
  for (const ProfileWitness& p : profiles) guaranteed = std::min(guaranteed, weighted_cost(s.weights, p.profile));
  if (guaranteed != s.value || max_edge_expectation(s.mixed, edges) != s.value)
    throw InvariantViolation("duality gap is not zero");
  detail::check_certificates(s, profiles, edges);
  return s;
}

/// q_k(G) = p_k(G) for a finite graph, by exact rational simplex over the
/// Pareto-minimal colouring profiles.
inline GameSolution exact_game_value(const UnitDistanceGraph& g, int k, std::uint64_t cap = kDefaultEnumerationCap) {
  if (g.edge_count() == 0) return solve_profile_game({}, 0);
  return solve_profile_game(enumerate_coloring_profiles(g, k, cap), g.edge_count());
}

// ---------------------------------------------------------------------------
// Best response: the colouring minimising the weighted monochromatic mass.
// ---------------------------------------------------------------------------

template <class W>
struct BestResponse {
  std::vector<Color> coloring;
  W cost{};
  std::uint64_t nodes = 0;
};

/// Branch and bound over vertex colourings for a fixed edge weighting.
/// Vertices are branched in a fixed order (degree-descending, or a seeded
/// shuffle of it); colours above the largest used one are interchangeable so
/// only one fresh colour is tried. A branch is cut once the weight of edges
/// already forced monochromatic reaches the incumbent. The solver keeps its
/// buffers between calls.
template <class W>
class BestResponseSolver {
 public:
  BestResponseSolver(const UnitDistanceGraph& g, int k, std::uint64_t node_budget = kDefaultNodeBudget,
                     std::optional<std::uint64_t> order_seed = std::nullopt)
      : g_(g), k_(k), budget_(node_budget) {
    if (k < 1) throw InvalidInput("k must be at least 1");
    const int n = g.vertex_count();
    order_.resize(static_cast<std::size_t>(n));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return g.neighbors(a).size() > g.neighbors(b).size(); });
    if (order_seed) {
      const CounterRng rng(*order_seed);
      for (std::size_t i = order_.size(); i > 1; --i) std::swap(order_[i - 1], order_[rng.bits(i) % i]);
    }
    std::vector<int> position(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) position[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])] = i;
    back_edges_.assign(static_cast<std::size_t>(n), {});
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edges()[static_cast<std::size_t>(e)];
      const int pu = position[static_cast<std::size_t>(ed.u)];
      const int pv = position[static_cast<std::size_t>(ed.v)];
      // Attach the edge to whichever endpoint is coloured later.
      if (pu > pv) back_edges_[static_cast<std::size_t>(pu)].push_back({pv, e});
      else back_edges_[static_cast<std::size_t>(pv)].push_back({pu, e});
    }
    color_.assign(static_cast<std::size_t>(n), 0);
    best_.assign(static_cast<std::size_t>(n), 0);
  }

  BestResponse<W> solve(std::span<const W> weights) {
    if (static_cast<int>(weights.size()) != g_.edge_count()) throw InvalidInput("weight count does not match edges");
    bool positive = false;
    for (const W& w : weights) {
      if (w < W(0)) throw InvalidInput("edge weights must be nonnegative");
      if (w > W(0)) positive = true;
    }
    if (!positive && g_.edge_count() > 0) throw InvalidInput("edge weights must not all be zero");
    weights_ = weights;
    nodes_ = 0;
    greedy();
    if (best_cost_ > W(0)) descend(0, 0, W(0));
    BestResponse<W> out;
    out.coloring.assign(static_cast<std::size_t>(g_.vertex_count()), 0);
    for (std::size_t i = 0; i < order_.size(); ++i) out.coloring[static_cast<std::size_t>(order_[i])] = best_[i];
    out.cost = best_cost_;
    out.nodes = nodes_;
    return out;
  }

 private:
  struct BackEdge {
    int earlier;
    int edge;
  };

  W added_cost(int pos, Color c) const {
    W s(0);
    for (const BackEdge& b : back_edges_[static_cast<std::size_t>(pos)])
      if (color_[static_cast<std::size_t>(b.earlier)] == c) s += weights_[static_cast<std::size_t>(b.edge)];
    return s;
  }

  void greedy() {
    W cost(0);
    int used = 0;
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      const int limit = std::min(k_, used + 1);
      Color pick = 0;
      W pick_cost = added_cost(static_cast<int>(pos), 0);
      for (Color c = 1; c < limit; ++c) {
        W a = added_cost(static_cast<int>(pos), c);
        if (a < pick_cost) {
          pick = c;
          pick_cost = std::move(a);
        }
      }
      color_[pos] = pick;
      used = std::max(used, pick + 1);
      cost += pick_cost;
    }
    best_ = color_;
    best_cost_ = cost;
  }

  void descend(std::size_t pos, int used, const W& cost) {
    if (pos == order_.size()) {
      best_ = color_;
      best_cost_ = cost;
      return;
    }
    if (++nodes_ > budget_) throw BudgetExceeded("best-response search exceeded its node budget");
    const int limit = std::min(k_, used + 1);
    for (Color c = 0; c < limit; ++c) {
      W next = cost + added_cost(static_cast<int>(pos), c);
      if (!(next < best_cost_)) continue;
      color_[pos] = c;
      descend(pos + 1, std::max(used, c + 1), next);
      if (best_cost_ == W(0)) return;
    }
  }

  const UnitDistanceGraph& g_;
  int k_;
  std::uint64_t budget_;
  std::vector<int> order_;
  std::vector<std::vector<BackEdge>> back_edges_;
  std::span<const W> weights_;
  std::vector<Color> color_;
  std::vector<Color> best_;
  W best_cost_{};
  std::uint64_t nodes_ = 0;
};

/// Exact minimiser of sum_e w_e b_c(e) over k-colourings.
template <class W>
BestResponse<W> best_response(const UnitDistanceGraph& g, std::span<const W> weights, int k,
                              std::uint64_t node_budget = kDefaultNodeBudget) {
  return BestResponseSolver<W>(g, k, node_budget).solve(weights);
}

// ---------------------------------------------------------------------------
// Multiplicative weights
// ---------------------------------------------------------------------------

struct MwuOptions {
  std::uint64_t node_budget = kDefaultNodeBudget;
  /// Averaged weights are rounded to multiples of 2^-weight_bits before the
  /// exact certificate is computed.
  int weight_bits = 30;
};

/// Approximate game value. The edge player runs multiplicative weights with
/// T = ceil(4 ln|E| / eps^2) rounds and rate sqrt(ln|E| / T) (|E| >= 2 used in
/// the logarithm) against exact best responses. The returned value is what
/// the averaged weights guarantee and `exploitability` is the exact gap to
/// the worst edge under the empirical mixture of responses.
inline GameSolution mwu_game_value(const UnitDistanceGraph& g, int k, double eps, std::uint64_t seed = kDefaultSeed,
                                   const MwuOptions& options = {}) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("eps must lie in (0, 1)");
  if (k < 1) throw InvalidInput("k must be at least 1");
  const int m = g.edge_count();
  GameSolution out;
  out.exact = false;
  out.value = 0;
  out.exploitability = 0;
  if (m == 0) return out;

  const double log_m = std::log(static_cast<double>(std::max(m, 2)));
  const auto rounds = static_cast<std::uint64_t>(std::ceil(4.0 * log_m / (eps * eps)));
  const double eta = std::sqrt(log_m / static_cast<double>(rounds));

  BestResponseSolver<double> oracle(g, k, options.node_budget, seed);
  std::vector<double> gains(static_cast<std::size_t>(m), 0.0);
  std::vector<double> weights(static_cast<std::size_t>(m), 1.0 / m);
  std::vector<double> weight_sum(static_cast<std::size_t>(m), 0.0);
  std::vector<std::uint64_t> mono_count(static_cast<std::size_t>(m), 0);
  std::unordered_map<ColoringProfile, std::pair<std::uint64_t, std::vector<Color>>, ProfileHash> responses;

  for (std::uint64_t t = 0; t < rounds; ++t) {
    const double top = *std::max_element(gains.begin(), gains.end());
    double z = 0.0;
    for (int e = 0; e < m; ++e) {
      weights[static_cast<std::size_t>(e)] = std::exp(eta * (gains[static_cast<std::size_t>(e)] - top));
      z += weights[static_cast<std::size_t>(e)];
    }
    for (int e = 0; e < m; ++e) {
      weights[static_cast<std::size_t>(e)] /= z;
      weight_sum[static_cast<std::size_t>(e)] += weights[static_cast<std::size_t>(e)];
    }
    const BestResponse<double> br = oracle.solve(weights);
    ColoringProfile profile = ColoringProfile::of(g, br.coloring);
    for (int e = 0; e < m; ++e) {
      if (profile.test(e)) {
        gains[static_cast<std::size_t>(e)] += 1.0;
        ++mono_count[static_cast<std::size_t>(e)];
      }
    }
    auto [it, inserted] = responses.try_emplace(std::move(profile), 0, br.coloring);
    ++it->second.first;
  }

  // Exact certificate for the rounded averaged weights.
  const double scale = std::ldexp(1.0, options.weight_bits);
  std::vector<BigInt> grid(static_cast<std::size_t>(m));
  BigInt grid_total = 0;
  for (int e = 0; e < m; ++e) {
    const auto q = static_cast<long long>(std::llround(weight_sum[static_cast<std::size_t>(e)] /
                                                       static_cast<double>(rounds) * scale));
    grid[static_cast<std::size_t>(e)] = q;
    grid_total += q;
  }
  if (grid_total == 0) {
    for (BigInt& q : grid) q = 1;
    grid_total = m;
  }
  out.weights.reserve(static_cast<std::size_t>(m));
  for (const BigInt& q : grid) out.weights.emplace_back(q, grid_total);
  out.value = BestResponseSolver<Rational>(g, k, options.node_budget).solve(out.weights).cost;

  for (auto& [profile, entry] : responses)
    out.mixed.push_back({profile, entry.second, Rational(static_cast<long long>(entry.first), static_cast<long long>(rounds))});
  std::sort(out.mixed.begin(), out.mixed.end(),
            [](const MixedComponent& a, const MixedComponent& b) { return canonical_less(a.profile, b.profile); });
  const Rational upper = max_edge_expectation(out.mixed, m);
  out.exploitability = upper > out.value ? upper - out.value : Rational(0);
  return out;
}

// ---------------------------------------------------------------------------
// Lower bound from a non-k-colourable unit-distance graph
// ---------------------------------------------------------------------------

/// 1/|E(G)| when G is a unit-distance graph that cannot be k-coloured.
///
/// With coordinates the embedding must verify at `tol`; without them the
/// graph must carry an external assume_non_colorable flag for k, which then
/// stands in for both checks.
inline Rational lower_bound_from_graph(const UnitDistanceGraph& g, int k, double tol = kTolerances.edge,
                                       std::uint64_t node_budget = kDefaultNodeBudget) {
  if (g.edge_count() == 0) throw InvalidInput("no bound: graph has no edges");
  const bool flagged = g.assumed_non_colorable(k);
  if (g.coords()) {
    const EmbeddingReport r = verify_unit_embedding(g, tol);
    if (!r.pass) throw InvalidInput("no bound: embedding has non-unit edges");
  } else if (!flagged) {
    throw InvalidInput("no bound: graph has no coordinates and no external non-colourability flag");
  }
  if (!flagged) {
    const ColorabilityResult c = is_k_colorable(g, k, node_budget);
    if (c.decision == Decision::yes) throw InvalidInput("no bound: graph is " + std::to_string(k) + "-colourable");
    if (c.decision == Decision::undecided)
      throw BudgetExceeded("no bound: colourability undecided within the node budget");
  }
  return Rational(1, g.edge_count());
}

}  // namespace hnp
