#include "hyperwind/wave_families.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "hyperwind/elliptic.hpp"
#include "hyperwind/errors.hpp"

namespace hyperwind::waves {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};

double sech(double x) { return 1.0 / std::cosh(x); }
}  // namespace

double hhm_dg_dxi(double p, double k, double v) { return (k - v * p) / (1.0 + p * p); }

double hhm_sine(const TravellingWaveParams& params, int N, double p0, double A, double xi) {
  if (N == 0) throw DomainError("hhm_sine: N must be non-zero");
  if (A < 0.0) throw DomainError("hhm_sine: A must be non-negative");
  return p0 + std::sqrt(2.0 * A) / N * std::sin(N * (xi - params.xi0));
}

SineWave::SineWave(double k, double v, int N, double xi0) : k_(k), v_(v), N_(N), xi0_(xi0) {
  if (N == 0) throw DomainError("sine family: N must be non-zero");
  const double n2 = static_cast<double>(N) * N;
  Q_ = 0.5 * (k * k - v * v - n2);
  alpha_ = v * v - k * k + 2.0 * Q_;
  p0_ = k * v / alpha_;
  A_ = Q_ + k * k * v * v / (2.0 * n2);
  // Matching (1/2)p'^2 against (alpha/2)p^2 - kv p + Q term by term.
  const double closed = (k * k - n2) * (v * v + n2) / (2.0 * n2);
  const double size = n2 + k * k + v * v;
  if (std::abs(alpha_ + n2) > 1e-12 * size || std::abs(A_ - closed) > 1e-12 * size * (1.0 + k * k * v * v / n2))
    throw DomainError("sine family: amplitude relations inconsistent");
  if (A_ < 0.0) {
    if (A_ > -1e-14 * (1.0 + k * k * v * v)) {
      A_ = 0.0;
    } else {
      throw DomainError(fmt::format("sine family: A = {:.6g} < 0 requires k^2 >= N^2", A_));
    }
  }
  amplitude_ = std::sqrt(2.0 * A_) / std::abs(N);
}

double SineWave::operator()(double xi) const { return hhm_sine(params(), N_, p0_, A_, xi); }

double SineWave::derivative(double xi) const {
  return std::sqrt(2.0 * A_) * std::cos(N_ * (xi - xi0_));
}

phase::DeltaPhi hhm_delta_phi(const SineWave& wave, const geometry::SpaceKind& domain) {
  return phase::delta_phi([&](double xi) { return wave.dg_dxi(xi); }, domain);
}

PhaseClosedFormParams PhaseClosedFormParams::make(double k, double v) {
  if (!(k >= 1.0)) throw DomainError("closed-form phase: gamma is real only for k >= 1");
  PhaseClosedFormParams out;
  out.k = k;
  out.v = v;
  out.gamma = std::sqrt((v * v + 1.0) * (k * k - 1.0));
  out.Omega = (v - kI * k - kI * out.gamma) / (1.0 + kI * k * v);
  return out;
}

std::complex<double> phase_loop(const PhaseClosedFormParams& params, double xi) {
  const double s = std::sin(0.5 * xi);
  const double c = std::cos(0.5 * xi);
  return (s + params.Omega * c) / (-s - c / params.Omega);
}

namespace {

constexpr int kLiftSteps = 512;

// arg Xi lifted continuously from 0 to xi, |xi| <= pi.
double lift_from_zero(const PhaseClosedFormParams& params, double xi) {
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(xi) / (kPi / kLiftSteps))));
  const double h = xi / steps;
  double g = std::arg(phase_loop(params, 0.0));
  double prev = g;
  for (int j = 1; j <= steps; ++j) {
    const double a = std::arg(phase_loop(params, j * h));
    g += geometry::principal_increment(a - prev);
    prev = a;
  }
  return g;
}

}  // namespace

double hhm_phase_closed_form(const PhaseClosedFormParams& params, double xi) {
  if (!(params.k > 1.0) || params.v == 0.0)
    throw DomainError("closed-form phase requires k > 1 and v != 0");
  if (!std::isfinite(xi)) throw DomainError("closed-form phase: xi must be finite");
  if (xi >= -kPi && xi <= kPi) return lift_from_zero(params, xi);
  const double turns = std::floor((xi + kPi) / (2.0 * kPi));
  const double reduced = xi - 2.0 * kPi * turns;
  const double loop = lift_from_zero(params, kPi) - lift_from_zero(params, -kPi);
  return lift_from_zero(params, reduced) + turns * loop;
}

double hhm_phase_ratio_form(const PhaseClosedFormParams& params, double xi) {
  const double k = params.k, v = params.v, g = params.gamma;
  const std::complex<double> a = -kI * g - kI * k + v;
  const std::complex<double> b = 1.0 + kI * k * v;
  const std::complex<double> c = -kI * g + kI * k - v;
  const double s = std::sin(0.5 * xi);
  const double co = std::cos(0.5 * xi);
  return std::arg((s * b + a * co) / (s * b + c * co));
}

double xi_crossing(double k, double v) {
  if (!(k > 1.0) || v == 0.0) throw DomainError("xi_crossing requires k > 1 and v != 0");
  const double gamma = std::sqrt((v * v + 1.0) * (k * k - 1.0));
  const double a = v - k * k * v - gamma * k * v;
  const double b = k + gamma + k * v * v;
  const double d = 1.0 + k * k * v * v;
  return 2.0 * std::atan(-2.0 * a * d / (a * a + b * b + d * d));
}

CnoidalWave::CnoidalWave(double p1, double p2, double p3, double xi3)
    : p1_(p1), p2_(p2), p3_(p3), xi3_(xi3) {
  if (!(p1 > p2 && p2 > p3)) throw DomainError("cnoidal wave: requires p1 > p2 > p3");
  params_ = reduction::hhm_c1_params_from_roots(p1, p2, p3);
  const auto P = reduction::build_P_hhm(params_.k, params_.v, 1.0, params_.Q);
  const double roots[] = {p1, p2, p3};
  const auto expanded = reduction::expand_roots(std::span<const double>(roots), 1.0);
  for (std::size_t i = 0; i < expanded.size(); ++i)
    if (std::abs(expanded[i] - P.coefficients[i]) > 1e-9 * (1.0 + std::abs(expanded[i])))
      throw DomainError("cnoidal wave: roots do not match the c = 1 cubic");
  w_ = std::sqrt(0.5 * (p1 - p3));
  m_ = (p2 - p3) / (p1 - p3);
  mc_ = (p1 - p2) / (p1 - p3);
}

double CnoidalWave::operator()(double xi) const {
  const auto t = elliptic::jacobi(w_ * (xi - xi3_), elliptic::EllipticParameter::from_complement(mc_));
  return p2_ - (p2_ - p3_) * t.cn * t.cn;
}

double CnoidalWave::derivative(double xi) const {
  const auto t = elliptic::jacobi(w_ * (xi - xi3_), elliptic::EllipticParameter::from_complement(mc_));
  return 2.0 * w_ * (p2_ - p3_) * t.sn * t.cn * t.dn;
}

double CnoidalWave::period() const {
  return 2.0 * elliptic::complete_K(elliptic::EllipticParameter::from_complement(mc_)) / w_;
}

double hhm_cnoidal(double p1, double p2, double p3, double xi3, double xi) {
  return CnoidalWave(p1, p2, p3, xi3)(xi);
}

double hhm_sech_limit(double p1, double p3, double xi0, double xi) {
  if (!(p1 > p3)) throw DomainError("sech limit: requires p1 > p3");
  const double s = sech((xi - xi0) * std::sqrt(0.5 * (p1 - p3)));
  return p1 - (p1 - p3) * s * s;
}

double hhm_sech_limit_derivative(double p1, double p3, double xi0, double xi) {
  const double w = std::sqrt(0.5 * (p1 - p3));
  const double u = w * (xi - xi0);
  const double s = sech(u);
  return 2.0 * w * (p1 - p3) * s * s * std::tanh(u);
}

SechWave SechWave::make(double p1, double p3, double xi0) {
  if (!(p1 > p3)) throw DomainError("sech limit: requires p1 > p3");
  return {p1, p3, xi0, reduction::hhm_c1_params_from_roots(p1, p1, p3)};
}

double SechWave::asymptotic_rate() const {
  return (params.k - params.v * p1) / (1.0 + p1 * p1);
}

phase::DeltaPhi hhm_delta_phi(const CnoidalWave& wave, const geometry::SpaceKind& domain) {
  const auto& pr = wave.params();
  return phase::delta_phi([&](double xi) { return hhm_dg_dxi(wave(xi), pr.k, pr.v); }, domain);
}

phase::DeltaPhi hhm_delta_phi(const SechWave& wave, const geometry::SpaceKind& domain) {
  auto out = phase::delta_phi(
      [&](double xi) { return hhm_dg_dxi(wave(xi), wave.params.k, wave.params.v); }, domain);
  out.analytic_rate = wave.asymptotic_rate();
  return out;
}

SechLimitParams SechLimitParams::make(double k, double v, double Q) {
  SechLimitParams out;
  out.k = k;
  out.v = v;
  out.Q = Q;
  out.gamma = (k * k - v * v + 2.0 * Q + 4.0) / 6.0;
  const std::complex<double> gi = out.gamma + kI;
  out.Omega = (v - kI * k) * std::sqrt(gi) / (2.0 * std::sqrt(2.0) * gi * gi);
  out.lambda = std::sqrt(2.0 / gi);
  return out;
}

double SechLimitParams::oscillatory(double X) const {
  const double ch = std::cosh(X);
  const auto term = Omega * (1.0 / (lambda - ch) + 1.0 / (lambda + ch));
  return 2.0 * term.real();
}

double SechLimitParams::constant_term() const { return (k - v * gamma) / (gamma * gamma - 1.0); }

double hhm_hamiltonian_profile(double X) {
  const double v2 = 2.0 + std::sqrt(5.0);
  const double s = sech(X);
  const double s2 = s * s;
  const double t = std::tanh(X);
  const double first = 1.0 + 2.0 * v2 * s2;
  return (first * first - 16.0 * std::sqrt(v2) * s2 * s2 * t * t) /
         (std::sqrt(v2) * (1.0 + 4.0 * s2 * s2));
}

double hhm_hamiltonian_plateau() { return 1.0 / std::sqrt(2.0 + std::sqrt(5.0)); }

HsmBlowupParams::HsmBlowupParams(int N, double rho, double t0) : N_(N), rho_(rho), t0_(t0) {
  if (N == 0) throw DomainError("blow-up solution: N must be non-zero");
  if (!(rho > std::abs(N))) throw DomainError("blow-up solution: requires rho > |N|");
  m_ = 1.0 - static_cast<double>(N) * N / (rho * rho);
  t_star_ = t0 + elliptic::complete_K(m_) / rho;
}

namespace {

elliptic::JacobiTriple blowup_jacobi(const HsmBlowupParams& params, double t) {
  if (t < params.t0()) throw DomainError("blow-up solution: t precedes t0");
  if (t >= params.blowup_time())
    throw BlowUpError(fmt::format("theta is infinite at t* = {:.17g}", params.blowup_time()),
                      params.blowup_time());
  return elliptic::jacobi(params.rho() * (t - params.t0()), params.m());
}

}  // namespace

double hsm_blowup_theta(const HsmBlowupParams& params, double t) {
  return std::atanh(blowup_jacobi(params, t).sn);
}

double hsm_blowup_theta_dot(const HsmBlowupParams& params, double t) {
  const auto j = blowup_jacobi(params, t);
  return params.rho() * j.dn / j.cn;
}

double hsm_blowup_energy(const HsmBlowupParams& params, double t) {
  const double theta = hsm_blowup_theta(params, t);
  const double dot = hsm_blowup_theta_dot(params, t);
  const double ch = std::cosh(theta);
  return 2.0 * kPi * (params.N() * params.N() * ch * ch - dot * dot);
}

double hsm_sine(double B, int N, double xi0, double xi) {
  if (N == 0) throw DomainError("hsm_sine: N must be non-zero");
  const double ratio = B * B / (static_cast<double>(N) * N);
  if (ratio < 1.0) throw DomainError("hsm_sine: requires B^2 >= N^2");
  return std::sqrt(ratio - 1.0) * std::sin(N * (xi - xi0));
}

double hsm_sine_dg_dxi(double B, double p) { return B / (1.0 + p * p); }

phase::DeltaPhi hsm_sine_delta_phi(double B, int N, const geometry::SpaceKind& domain) {
  hsm_sine(B, N, 0.0, 0.0);
  return phase::delta_phi([&](double xi) { return hsm_sine_dg_dxi(B, hsm_sine(B, N, 0.0, xi)); },
                          domain);
}

namespace {

double elliptic_scale(double K, double c, double v) {
  const double w = v * v - 1.0;
  if (w == 0.0) throw SingularReductionError("sigma-model profile: v^2 = 1 is singular");
  return c * K / w;
}

void check_JK(double J, double K) {
  if (!(J > 0.0 && J <= K)) throw DomainError("sigma-model profile: requires 0 < J <= K");
}

}  // namespace

double hsm_elliptic(double J, double K, double c, double v, double xi0, double xi) {
  check_JK(J, K);
  const double s = elliptic_scale(K, c, v);
  return J * elliptic::jacobi(s * (xi - xi0), (J / K) * (J / K)).sn;
}

double hsm_elliptic_derivative(double J, double K, double c, double v, double xi0, double xi) {
  check_JK(J, K);
  const double s = elliptic_scale(K, c, v);
  const auto t = elliptic::jacobi(s * (xi - xi0), (J / K) * (J / K));
  return J * s * t.cn * t.dn;
}

double hsm_elliptic_period(double J, double K, double c, double v) {
  check_JK(J, K);
  return 4.0 * elliptic::complete_K((J / K) * (J / K)) / std::abs(elliptic_scale(K, c, v));
}

double hsm_tanh(double p0, double c, double v, double xi0, double xi) {
  return p0 * std::tanh(elliptic_scale(p0, c, v) * (xi - xi0));
}

double hsm_tanh_dg_dxi(double p0, double c, double v, double R, double xi) {
  const double w = v * v - 1.0;
  const double t = std::tanh(elliptic_scale(p0, c, v) * xi);
  return c * v / w + (2.0 * R * w - c * v) / (2.0 * w * (1.0 + p0 * p0 * t * t));
}

double hsm_tanh_asymptotic_slope(double p0, double c, double v, double R) {
  const double w = v * v - 1.0;
  if (w == 0.0) throw SingularReductionError("sigma-model profile: v^2 = 1 is singular");
  return c * v / w + (2.0 * R * w - c * v) / (2.0 * w * (1.0 + p0 * p0));
}

double hsm_tanh_balanced_R(double p0, double c, double v) {
  const double w = v * v - 1.0;
  if (w == 0.0) throw SingularReductionError("sigma-model profile: v^2 = 1 is singular");
  return -c * v * (1.0 + 2.0 * p0 * p0) / (2.0 * w);
}

phase::DeltaPhi hsm_tanh_delta_phi(double p0, double c, double v, double R, double L) {
  auto out = phase::delta_phi([&](double xi) { return hsm_tanh_dg_dxi(p0, c, v, R, xi); },
                              geometry::TruncatedLine{L});
  out.analytic_rate = hsm_tanh_asymptotic_slope(p0, c, v, R);
  return out;
}

}  // namespace hyperwind::waves
