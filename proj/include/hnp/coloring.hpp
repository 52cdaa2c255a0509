#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "hnp/config.hpp"
#include "hnp/geometry.hpp"

namespace hnp {

using Color = int;

// ---------------------------------------------------------------------------
// Descriptors: serializable recipes for the supported coloring families.
// ---------------------------------------------------------------------------

/// Vertical stripes of width `width`, colours cycling 0..k-1 left to right.
/// Each stripe owns its left border.
struct StripeSpec {
  double width = std::numbers::sqrt3 / 2.0;
  int k = 2;
};

/// Colour assignment on the axial hexagon lattice.
///   residue: (q + multiplier * r) mod k
///   quad:    (q mod 2) + 2 (r mod 2), k = 4
enum class HexPattern { residue, quad };

struct HexSpec {
  int k = 3;
  double diameter = 1.22;
  HexPattern pattern = HexPattern::residue;
  int multiplier = 2;
};

/// Isbell's 7-colouring: residue pattern (q + 3r) mod 7 on hexagons of the
/// given diameter.
struct IsbellSpec {
  double diameter = 0.95;
};

struct ColoringDescriptor;

/// Base colouring plus one extra colour on the open disks of diameter 1
/// centred at offset + {2i + 2j cis(pi/3)}.
struct OverlaySpec {
  std::shared_ptr<const ColoringDescriptor> base;
  PlanePoint offset;
};

struct ColoringDescriptor {
  std::variant<StripeSpec, HexSpec, IsbellSpec, OverlaySpec> spec;
};

inline HexSpec default_hex_spec(int k, double diameter) {
  if (k == 4) return {4, diameter, HexPattern::quad, 0};
  if (k == 7) return {7, diameter, HexPattern::residue, 3};
  return {k, diameter, HexPattern::residue, 2};
}

inline std::string_view family_name(const ColoringDescriptor& d) {
  struct Visitor {
    std::string_view operator()(const StripeSpec&) const { return "stripe"; }
    std::string_view operator()(const HexSpec&) const { return "hex"; }
    std::string_view operator()(const IsbellSpec&) const { return "isbell"; }
    std::string_view operator()(const OverlaySpec&) const { return "overlay"; }
  };
  return std::visit(Visitor{}, d.spec);
}

// ---------------------------------------------------------------------------
// Geometry of the hexagonal tiling (pointy-top, circumradius R).
//   centre(q, r) = q * u + r * v,  u = (sqrt3 R, 0),  v = (sqrt3 R / 2, 3R/2)
// ---------------------------------------------------------------------------

struct Axial {
  std::int64_t q = 0;
  std::int64_t r = 0;
  friend constexpr bool operator==(Axial, Axial) = default;
};

/// Hexagon containing p. Cube coordinates are rounded half-up; the component
/// with the largest rounding error is recomputed from the other two, with
/// ties broken in the order x, then y, then z (z = r is recomputed last).
inline Axial hex_at(PlanePoint p, double circumradius) {
  const double fx = (std::numbers::sqrt3 / 3.0 * p.x - p.y / 3.0) / circumradius;
  const double fz = (2.0 / 3.0 * p.y) / circumradius;
  const double fy = -fx - fz;
  double rx = std::floor(fx + 0.5);
  double ry = std::floor(fy + 0.5);
  double rz = std::floor(fz + 0.5);
  const double ex = std::abs(rx - fx);
  const double ey = std::abs(ry - fy);
  const double ez = std::abs(rz - fz);
  if (ex >= ey && ex >= ez) {
    rx = -ry - rz;
  } else if (ey >= ez) {
    ry = -rx - rz;
  } else {
    rz = -rx - ry;
  }
  return {static_cast<std::int64_t>(rx), static_cast<std::int64_t>(rz)};
}

inline PlanePoint hex_center(Axial h, double circumradius) {
  const double s = std::numbers::sqrt3 * circumradius;
  return {s * (static_cast<double>(h.q) + 0.5 * static_cast<double>(h.r)),
          1.5 * circumradius * static_cast<double>(h.r)};
}

inline std::int64_t positive_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline Color hex_pattern_color(Axial h, int k, HexPattern pattern, int multiplier) {
  if (pattern == HexPattern::quad) {
    return static_cast<Color>(positive_mod(h.q, 2) + 2 * positive_mod(h.r, 2));
  }
  return static_cast<Color>(positive_mod(h.q + multiplier * h.r, k));
}

/// The six edge-sharing neighbours of a hexagon, in axial offsets.
inline constexpr std::array<Axial, 6> kHexNeighbors{
    {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

/// True when no two edge-adjacent hexagons share a colour anywhere in the
/// tiling. Checking the neighbours of one representative per colour class
/// suffices because the pattern is translation invariant modulo its period.
inline bool hex_pattern_is_proper(int k, HexPattern pattern, int multiplier) {
  if (pattern == HexPattern::quad) {
    if (k != 4) return false;
    for (std::int64_t q = 0; q < 2; ++q)
      for (std::int64_t r = 0; r < 2; ++r)
        for (const Axial d : kHexNeighbors)
          if (hex_pattern_color({q, r}, 4, pattern, 0) ==
              hex_pattern_color({q + d.q, r + d.r}, 4, pattern, 0))
            return false;
    return true;
  }
  for (const Axial d : kHexNeighbors)
    if (positive_mod(d.q + static_cast<std::int64_t>(multiplier) * d.r, k) == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// PeriodicColoring
// ---------------------------------------------------------------------------

/// Lattice of the overlay patch disks.
inline LatticeBasis patch_lattice() {
  return LatticeBasis({2.0, 0.0}, {1.0, std::numbers::sqrt3});
}

class PeriodicColoring;
PeriodicColoring make_coloring(const ColoringDescriptor& d);

/// A total colour function on the plane, periodic under basis().
///
/// The overlay family is periodic only when the patch lattice and the base
/// period lattice share two independent vectors; when they do not,
/// `has_exact_period()` is false and basis() is the base basis. Sampling over
/// that cell still estimates the badness averaged over patch positions
/// relative to the base, which is what the overlay expectation needs.
class PeriodicColoring {
 public:
  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] const LatticeBasis& basis() const { return basis_; }
  [[nodiscard]] const ColoringDescriptor& descriptor() const { return descriptor_; }
  [[nodiscard]] bool has_exact_period() const { return exact_period_; }

  [[nodiscard]] Color color_at(PlanePoint p) const {
    switch (kind_) {
      case Kind::stripe: {
        const PlanePoint c = reduce_to_cell(p, basis_).cell_point;
        const auto idx = static_cast<std::int64_t>(std::floor(c.x / width_));
        return static_cast<Color>(positive_mod(idx, k_));
      }
      case Kind::hex: {
        const PlanePoint c = reduce_to_cell(p, basis_).cell_point;
        return hex_pattern_color(hex_at(c, radius_), k_, pattern_, multiplier_);
      }
      case Kind::overlay: {
        if (in_patch(p)) return k_ - 1;
        return base_->color_at(p);
      }
    }
    return 0;
  }

  /// Whether p lies in one of the overlay's open patch disks.
  [[nodiscard]] bool in_patch(PlanePoint p) const {
    if (kind_ != Kind::overlay) return false;
    static const LatticeBasis patch = patch_lattice();
    const PlanePoint c = reduce_to_cell(p - offset_, patch).cell_point;
    constexpr std::array<PlanePoint, 4> corners{
        {{0.0, 0.0}, {2.0, 0.0}, {1.0, std::numbers::sqrt3}, {3.0, std::numbers::sqrt3}}};
    for (const PlanePoint corner : corners) {
      const PlanePoint d = c - corner;
      if (dot(d, d) < 0.25) return true;
    }
    return false;
  }

  friend PeriodicColoring make_coloring(const ColoringDescriptor& d);

 private:
  enum class Kind { stripe, hex, overlay };

  PeriodicColoring(ColoringDescriptor d, int k, LatticeBasis basis, Kind kind)
      : descriptor_(std::move(d)), k_(k), basis_(basis), kind_(kind) {}

  ColoringDescriptor descriptor_;
  int k_;
  LatticeBasis basis_;
  Kind kind_;
  bool exact_period_ = true;
  double width_ = 0.0;
  double radius_ = 0.0;
  HexPattern pattern_ = HexPattern::residue;
  int multiplier_ = 0;
  std::shared_ptr<const PeriodicColoring> base_;
  PlanePoint offset_;
};

namespace detail {

inline bool near_integer(double t) { return std::abs(t - std::round(t)) <= 1e-9; }

/// Two short independent vectors lying in both lattices, if any exist with
/// small patch-lattice coefficients.
inline std::optional<LatticeBasis> common_period(const LatticeBasis& a, const LatticeBasis& b,
                                                 int search = 12) {
  std::optional<PlanePoint> first;
  std::optional<PlanePoint> second;
  // Candidates sorted by length: collect, then pick.
  struct Candidate {
    PlanePoint v;
    double len;
  };
  std::vector<Candidate> candidates;
  for (int i = -search; i <= search; ++i) {
    for (int j = -search; j <= search; ++j) {
      if (i == 0 && j == 0) continue;
      const PlanePoint v = b.point(i, j);
      const PlanePoint ab = a.coords(v);
      if (near_integer(ab.x) && near_integer(ab.y)) candidates.push_back({v, norm(v)});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& l, const Candidate& r) { return l.len < r.len; });
  for (const Candidate& c : candidates) {
    if (!first) {
      first = c.v;
    } else if (std::abs(cross(*first, c.v)) > 1e-9) {
      second = c.v;
      break;
    }
  }
  if (!first || !second) return std::nullopt;
  if (cross(*first, *second) < 0) second = -1.0 * *second;
  return LatticeBasis(*first, *second);
}

}  // namespace detail

inline PeriodicColoring stripe_coloring(double width, int k = 2) {
  return make_coloring({StripeSpec{width, k}});
}

inline PeriodicColoring hex_coloring(int k, double diameter, int multiplier) {
  return make_coloring({HexSpec{k, diameter, HexPattern::residue, multiplier}});
}

inline PeriodicColoring hex_quad_coloring(double diameter) {
  return make_coloring({HexSpec{4, diameter, HexPattern::quad, 0}});
}

inline PeriodicColoring isbell_coloring(double diameter = 0.95) {
  return make_coloring({IsbellSpec{diameter}});
}

inline PeriodicColoring overlay_patch(const PeriodicColoring& base, PlanePoint offset) {
  return make_coloring({OverlaySpec{std::make_shared<const ColoringDescriptor>(base.descriptor()), offset}});
}

inline PeriodicColoring make_coloring(const ColoringDescriptor& d) {
  using Kind = PeriodicColoring::Kind;
  if (const auto* s = std::get_if<StripeSpec>(&d.spec)) {
    if (!(s->width > 0.0) || !std::isfinite(s->width)) throw InvalidInput("stripe width must be positive");
    if (s->k < 1) throw InvalidInput("stripe colour count must be at least 1");
    PeriodicColoring c(d, s->k, LatticeBasis({s->k * s->width, 0.0}, {0.0, 1.0}), Kind::stripe);
    c.width_ = s->width;
    return c;
  }
  if (std::holds_alternative<HexSpec>(d.spec) || std::holds_alternative<IsbellSpec>(d.spec)) {
    const HexSpec h = std::holds_alternative<HexSpec>(d.spec)
                          ? std::get<HexSpec>(d.spec)
                          : HexSpec{7, std::get<IsbellSpec>(d.spec).diameter, HexPattern::residue, 3};
    if (h.k < 3) throw InvalidInput("hex colouring needs k >= 3");
    if (!(h.diameter > 0.0) || !std::isfinite(h.diameter)) throw InvalidInput("hex diameter must be positive");
    if (h.pattern == HexPattern::residue && (h.multiplier < 0 || h.multiplier >= h.k))
      throw InvalidInput("hex multiplier must lie in [0, k)");
    if (!hex_pattern_is_proper(h.k, h.pattern, h.multiplier))
      throw InvalidInput("hex pattern gives adjacent hexagons the same colour");
    const double radius = h.diameter / 2.0;
    const PlanePoint u{std::numbers::sqrt3 * radius, 0.0};
    const PlanePoint v{std::numbers::sqrt3 * radius / 2.0, 1.5 * radius};
    const LatticeBasis basis = h.pattern == HexPattern::quad
                                   ? LatticeBasis(2.0 * u, 2.0 * v)
                                   : LatticeBasis(h.k * u, v - static_cast<double>(h.multiplier) * u);
    PeriodicColoring c(d, h.k, basis, Kind::hex);
    c.radius_ = radius;
    c.pattern_ = h.pattern;
    c.multiplier_ = h.multiplier;
    return c;
  }
  const auto& o = std::get<OverlaySpec>(d.spec);
  if (!o.base) throw InvalidInput("overlay needs a base colouring");
  if (!is_finite(o.offset)) throw InvalidInput("overlay offset must be finite");
  auto base = std::make_shared<const PeriodicColoring>(make_coloring(*o.base));
  const auto common = detail::common_period(base->basis(), patch_lattice());
  PeriodicColoring c(d, base->k() + 1, common.value_or(base->basis()), Kind::overlay);
  c.exact_period_ = common.has_value() && base->has_exact_period();
  c.base_ = std::move(base);
  c.offset_ = o.offset;
  return c;
}

inline Color color_at(const PeriodicColoring& c, PlanePoint p) { return c.color_at(p); }

}  // namespace hnp
