#include "hyperwind/phase_integral.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "hyperwind/errors.hpp"

namespace hyperwind::phase {

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  const double value = gauss_kronrod<double, 61>::integrate(f, a, b, 25, rel_tol, &error);
  if (!std::isfinite(value)) throw DomainError("integrate: integrand is not finite on the interval");
  return value;
}

std::string_view to_string(Convergence c) {
  return c == Convergence::Converged ? "Converged" : "Diverges";
}

DeltaPhi delta_phi(const std::function<double(double)>& integrand,
                   const geometry::SpaceKind& domain, double cauchy_tol) {
  DeltaPhi out;
  if (geometry::is_circle(domain)) {
    out.value = integrate(integrand, -std::numbers::pi, std::numbers::pi);
    return out;
  }
  const double L = std::get<geometry::TruncatedLine>(domain).half_length;
  if (!(L > 0.0)) throw DomainError("delta_phi: half length must be positive");
  out.half_length = L;
  // Split at the origin so localized features are not straddled by one panel.
  const auto over = [&](double half) { return integrate(integrand, -half, 0.0) + integrate(integrand, 0.0, half); };
  out.value = over(L);
  out.value_doubled = over(2.0 * L);
  out.rate = (out.value_doubled - out.value) / (2.0 * L);
  if (std::abs(out.value_doubled - out.value) > cauchy_tol * (1.0 + std::abs(out.value_doubled)))
    out.status = Convergence::Diverges;
  return out;
}

}  // namespace hyperwind::phase
