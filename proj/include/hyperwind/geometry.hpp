#pragma once

// Points and fields on the one-sheeted hyperboloid
//   psi1^2 + psi2^2 - psi3^2 = 1
// in R^{2+1}, with the polar chart psi = (cosh t cos p, cosh t sin p, sinh t).

#include <array>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace hyperwind::geometry {

inline constexpr double kConstraintTol = 1e-9;
inline constexpr double kDefaultHalfLength = 40.0;

struct HyperboloidPoint {
  double psi1 = 1.0;
  double psi2 = 0.0;
  double psi3 = 0.0;

  std::array<double, 3> as_array() const { return {psi1, psi2, psi3}; }
};

/// theta is unbounded; phi is a lift to R, never reduced mod 2 pi.
struct PolarAngles {
  double theta = 0.0;
  double phi = 0.0;
};

struct Circle {};
struct TruncatedLine {
  double half_length = kDefaultHalfLength;
};

/// X = S^1 realised as [-pi, pi), or X = R truncated to [-L, L) with the
/// identification psi(L) = psi(-L).
using SpaceKind = std::variant<Circle, TruncatedLine>;

bool is_circle(const SpaceKind& space);
/// Domain length: 2 pi for the circle, 2L for the truncated line.
double domain_length(const SpaceKind& space);
/// Left end of the domain.
double domain_start(const SpaceKind& space);

/// Uniform periodic grid of M points covering the domain.
struct Grid {
  std::size_t points = 0;
  SpaceKind space = Circle{};

  double spacing() const;
  double x(std::size_t i) const;
  std::vector<double> coordinates() const;
};

/// One time slice of a discretised (theta, phi) field.
struct PolarField {
  Grid grid;
  std::vector<PolarAngles> samples;
  double time = 0.0;
};

HyperboloidPoint embed(const PolarAngles& p);

/// Inverse of embed. phi lands in (-pi, pi]; the caller unwraps.
PolarAngles polar_angles(const HyperboloidPoint& q);

double minkowski_dot(const std::array<double, 3>& a, const std::array<double, 3>& b);
double minkowski_dot(const HyperboloidPoint& a, const HyperboloidPoint& b);

double constraint_residual(const HyperboloidPoint& q);

/// Principal value of an angle increment, in (-pi, pi].
double principal_increment(double dphi);

struct WindingReport {
  /// Sum of principal-value link increments of phi.
  double delta_phi = 0.0;
  /// delta_phi / 2 pi rounded; meaningful on the circle only.
  long winding = 0;
  /// delta_phi / 2 pi without rounding.
  double fractional = 0.0;
  /// Some link increment had |dphi| >= pi/2.
  bool under_resolved = false;
  double max_link_increment = 0.0;
};

/// On the circle the closing seam link is included, so delta_phi is
/// 2 pi N exactly up to rounding. On the truncated line only the open
/// links are summed and `fractional` carries the real-valued result.
WindingReport winding_number(const PolarField& field);
WindingReport winding_number(std::span<const double> phi, const SpaceKind& space);

/// Lift a sequence of principal angles to a continuous phi along the grid.
std::vector<double> unwrap(std::span<const double> phi);

}  // namespace hyperwind::geometry
