#pragma once

// Total azimuthal change Delta phi = integral of g'(xi) over the domain.

#include <functional>
#include <optional>
#include <string_view>

#include "hyperwind/geometry.hpp"

namespace hyperwind::phase {

/// Adaptive Gauss-Kronrod quadrature on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12);

enum class Convergence { Converged, Diverges };
std::string_view to_string(Convergence c);

struct DeltaPhi {
  Convergence status = Convergence::Converged;
  /// Integral over the domain ([-L, L] on the line).
  double value = 0.0;
  /// Line only: integral over [-2L, 2L].
  double value_doubled = 0.0;
  double half_length = 0.0;
  /// Line only: (D(2L) - D(L)) / (2L), the measured linear growth.
  double rate = 0.0;
  /// Asymptotic slope when the family knows it.
  std::optional<double> analytic_rate;
};

/// Circle: one integral over [-pi, pi]. Line: integrals over [-L, L] and
/// [-2L, 2L]; the pair fails the Cauchy test when they differ by more than
/// cauchy_tol (1 + |D(2L)|).
DeltaPhi delta_phi(const std::function<double(double)>& integrand,
                   const geometry::SpaceKind& domain, double cauchy_tol = 1e-7);

}  // namespace hyperwind::phase
