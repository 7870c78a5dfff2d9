#include "hyperwind/elliptic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hyperwind/errors.hpp"

namespace hyperwind::elliptic {

EllipticParameter::EllipticParameter(double m) : m_(m), mc_(1.0 - m) {
  if (!(m >= 0.0 && m <= 1.0))
    throw DomainError("elliptic parameter m = " + std::to_string(m) + " outside [0, 1]");
}

EllipticParameter EllipticParameter::from_complement(double mc) {
  if (!(mc >= 0.0 && mc <= 1.0))
    throw DomainError("elliptic complement 1 - m = " + std::to_string(mc) + " outside [0, 1]");
  return EllipticParameter(1.0 - mc, mc);
}

namespace {

using real = long double;
constexpr int kMaxAgmSteps = 40;

}  // namespace

JacobiTriple jacobi(double u, EllipticParameter param) {
  if (!std::isfinite(u)) throw DomainError("jacobi: argument must be finite");
  const double m = param.value();
  const double mc = param.complement();

  if (m <= kDegenerateSnap) return {std::sin(u), std::cos(u), 1.0};
  if (mc <= kDegenerateSnap) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }

  // Descending AGM: a_n, c_n stored so the phase can be walked back up.
  std::array<real, kMaxAgmSteps + 1> a{};
  std::array<real, kMaxAgmSteps + 1> c{};
  a[0] = 1.0L;
  real b = std::sqrt(static_cast<real>(mc));
  c[0] = std::sqrt(static_cast<real>(m));
  int n = 0;
  const real eps = std::numeric_limits<real>::epsilon();
  while (std::abs(c[n]) > eps && n < kMaxAgmSteps) {
    const real an = a[n];
    a[n + 1] = (an + b) / 2.0L;
    c[n + 1] = (an - b) / 2.0L;
    b = std::sqrt(an * b);
    ++n;
  }

  real phi = std::ldexp(a[n], n) * static_cast<real>(u);
  real phi_prev = phi;
  for (int j = n; j > 0; --j) {
    phi_prev = phi;
    phi = (phi + std::asin(c[j] / a[j] * std::sin(phi))) / 2.0L;
  }
  const real sn = std::sin(phi);
  const real cn = std::cos(phi);
  const real dn = n > 0 ? cn / std::cos(phi_prev - phi) : 1.0L;
  return {static_cast<double>(sn), static_cast<double>(cn), static_cast<double>(dn)};
}

JacobiTriple jacobi(double u, double m) { return jacobi(u, EllipticParameter(m)); }

double complete_K(EllipticParameter param) {
  const double m = param.value();
  if (param.complement() == 0.0) throw InfiniteResultError("complete_K diverges at m = 1");
  if (m == 0.0) return std::numbers::pi / 2.0;
  real a = 1.0L;
  real b = std::sqrt(static_cast<real>(param.complement()));
  for (int i = 0; i < kMaxAgmSteps && std::abs(a - b) > std::numeric_limits<real>::epsilon() * a;
       ++i) {
    const real next = (a + b) / 2.0L;
    b = std::sqrt(a * b);
    a = next;
  }
  return static_cast<double>(std::numbers::pi_v<real> / (2.0L * a));
}

double complete_K(double m) { return complete_K(EllipticParameter(m)); }

}  // namespace hyperwind::elliptic
