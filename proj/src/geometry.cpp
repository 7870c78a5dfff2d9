#include "hyperwind/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperwind/errors.hpp"

namespace hyperwind::geometry {

namespace {
constexpr double kPi = std::numbers::pi;
}

bool is_circle(const SpaceKind& space) { return std::holds_alternative<Circle>(space); }

double domain_length(const SpaceKind& space) {
  if (const auto* line = std::get_if<TruncatedLine>(&space)) return 2.0 * line->half_length;
  return 2.0 * kPi;
}

double domain_start(const SpaceKind& space) {
  if (const auto* line = std::get_if<TruncatedLine>(&space)) return -line->half_length;
  return -kPi;
}

double Grid::spacing() const {
  if (points == 0) throw DomainError("grid has no points");
  return domain_length(space) / static_cast<double>(points);
}

double Grid::x(std::size_t i) const {
  return domain_start(space) + static_cast<double>(i) * spacing();
}

std::vector<double> Grid::coordinates() const {
  std::vector<double> xs(points);
  for (std::size_t i = 0; i < points; ++i) xs[i] = x(i);
  return xs;
}

HyperboloidPoint embed(const PolarAngles& p) {
  if (!std::isfinite(p.theta) || !std::isfinite(p.phi))
    throw DomainError("embed: polar angles must be finite");
  const double ch = std::cosh(p.theta);
  return {ch * std::cos(p.phi), ch * std::sin(p.phi), std::sinh(p.theta)};
}

PolarAngles polar_angles(const HyperboloidPoint& q) {
  return {std::asinh(q.psi3), std::atan2(q.psi2, q.psi1)};
}

double minkowski_dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
}

double minkowski_dot(const HyperboloidPoint& a, const HyperboloidPoint& b) {
  return minkowski_dot(a.as_array(), b.as_array());
}

double constraint_residual(const HyperboloidPoint& q) {
  // psi1^2 + psi2^2 - psi3^2 - 1, arranged so the cosh^2 - sinh^2
  // cancellation happens between like-sized terms.
  const double r2 = q.psi1 * q.psi1 + q.psi2 * q.psi2;
  return (r2 - 1.0) - q.psi3 * q.psi3;
}

double principal_increment(double dphi) {
  double r = std::remainder(dphi, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

WindingReport winding_number(std::span<const double> phi, const SpaceKind& space) {
  WindingReport report;
  const std::size_t n = phi.size();
  if (n == 0) return report;
  const bool closed = is_circle(space);
  const std::size_t links = closed ? n : n - 1;
  for (std::size_t j = 0; j < links; ++j) {
    const double inc = principal_increment(phi[(j + 1) % n] - phi[j]);
    report.delta_phi += inc;
    report.max_link_increment = std::max(report.max_link_increment, std::abs(inc));
  }
  report.under_resolved = report.max_link_increment >= kPi / 2.0;
  report.fractional = report.delta_phi / (2.0 * kPi);
  report.winding = closed ? std::lround(report.fractional) : 0;
  return report;
}

WindingReport winding_number(const PolarField& field) {
  std::vector<double> phi(field.samples.size());
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = field.samples[i].phi;
  return winding_number(phi, field.grid.space);
}

std::vector<double> unwrap(std::span<const double> phi) {
  std::vector<double> out(phi.begin(), phi.end());
  for (std::size_t i = 1; i < out.size(); ++i)
    out[i] = out[i - 1] + principal_increment(phi[i] - phi[i - 1]);
  return out;
}

}  // namespace hyperwind::geometry
