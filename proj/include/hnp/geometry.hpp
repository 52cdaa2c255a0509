#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "hnp/config.hpp"
#include "hnp/rng.hpp"

namespace hnp {

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  friend constexpr PlanePoint operator+(PlanePoint a, PlanePoint b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr PlanePoint operator-(PlanePoint a, PlanePoint b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr PlanePoint operator*(double s, PlanePoint a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(PlanePoint, PlanePoint) = default;
};

constexpr double cross(PlanePoint a, PlanePoint b) { return a.x * b.y - a.y * b.x; }
constexpr double dot(PlanePoint a, PlanePoint b) { return a.x * b.x + a.y * b.y; }
inline double norm(PlanePoint a) { return std::hypot(a.x, a.y); }
inline double distance(PlanePoint a, PlanePoint b) { return norm(a - b); }

/// Unit vector at angle theta.
inline PlanePoint cis(double theta) { return {std::cos(theta), std::sin(theta)}; }

inline bool is_finite(PlanePoint p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Orientation-preserving isometry: rotate about the origin by theta, then
/// translate by (dx, dy).
struct Isometry {
  double dx = 0.0;
  double dy = 0.0;
  double theta = 0.0;
};

inline PlanePoint apply_isometry(const Isometry& iso, PlanePoint p) {
  const double c = std::cos(iso.theta);
  const double s = std::sin(iso.theta);
  return {c * p.x - s * p.y + iso.dx, s * p.x + c * p.y + iso.dy};
}

/// Generators (z1, z2) of a period lattice.
class LatticeBasis {
 public:
  LatticeBasis(PlanePoint z1, PlanePoint z2) : z1_(z1), z2_(z2) {
    if (!is_finite(z1) || !is_finite(z2)) throw InvalidInput("lattice basis has non-finite coordinates");
    det_ = cross(z1, z2);
    if (!(std::abs(det_) > kTolerances.degenerate_cross)) throw InvalidInput("degenerate lattice basis");
  }

  [[nodiscard]] PlanePoint z1() const { return z1_; }
  [[nodiscard]] PlanePoint z2() const { return z2_; }
  [[nodiscard]] double determinant() const { return det_; }

  /// Coordinates (a, b) with p = a*z1 + b*z2.
  [[nodiscard]] PlanePoint coords(PlanePoint p) const {
    return {cross(p, z2_) / det_, cross(z1_, p) / det_};
  }

  [[nodiscard]] PlanePoint point(double a, double b) const { return a * z1_ + b * z2_; }

 private:
  PlanePoint z1_;
  PlanePoint z2_;
  double det_ = 0.0;
};

struct CellReduction {
  PlanePoint cell_point;
  std::int64_t m = 0;
  std::int64_t n = 0;
};

namespace detail {
inline double snapped_floor(double t) {
  const double r = std::round(t);
  if (std::abs(t - r) <= kTolerances.lattice_snap) return r;
  return std::floor(t);
}
}  // namespace detail

/// Maps p into R(z1, z2) = {a z1 + b z2 : 0 <= a, b < 1}; p = cell_point + m z1 + n z2.
inline CellReduction reduce_to_cell(PlanePoint p, const LatticeBasis& basis) {
  const PlanePoint ab = basis.coords(p);
  const double fm = detail::snapped_floor(ab.x);
  const double fn = detail::snapped_floor(ab.y);
  return {p - fm * basis.z1() - fn * basis.z2(), static_cast<std::int64_t>(fm),
          static_cast<std::int64_t>(fn)};
}

/// Coordinates of one draw from the uniform measure on [0,1)^2 x [0, 2pi).
struct PrincipalSample {
  double a = 0.0;
  double b = 0.0;
  double theta = 0.0;
};

/// Sample `index` of a stream uses counters 3*index .. 3*index+2.
inline PrincipalSample sample_principal_coords(const CounterRng& rng, std::uint64_t index) {
  const std::uint64_t base = 3 * index;
  return {rng.uniform(base), rng.uniform(base + 1), 2.0 * std::numbers::pi * rng.uniform(base + 2)};
}

/// Isometry whose image of the origin is uniform over the fundamental cell and
/// whose rotation is uniform over [0, 2pi).
inline Isometry sample_principal_isometry(const CounterRng& rng, std::uint64_t index,
                                          const LatticeBasis& basis) {
  const PrincipalSample s = sample_principal_coords(rng, index);
  const PlanePoint t = basis.point(s.a, s.b);
  return {t.x, t.y, s.theta};
}

}  // namespace hnp
