#pragma once

// Closed-form solution families. HHM travelling waves are given as
// p(xi) = sinh f(xi); their phase obeys g'(xi) = (k - v p) / (1 + p^2).

#include <complex>

#include "hyperwind/geometry.hpp"
#include "hyperwind/phase_integral.hpp"
#include "hyperwind/reduction.hpp"

namespace hyperwind::waves {

struct TravellingWaveParams {
  double k = 0, v = 0, c = 0, Q = 0;
  double xi0 = 0;
};

double hhm_dg_dxi(double p, double k, double v);

// ---- c = 0 sine family ----------------------------------------------------

/// p0 + (sqrt(2A)/N) sin(N(xi - xi0)). A = 0 gives the constant p0.
double hhm_sine(const TravellingWaveParams& params, int N, double p0, double A, double xi);

/// The normalised member with alpha = v^2 - k^2 + 2Q = -N^2:
/// Q = (k^2 - v^2 - N^2)/2, p0 = kv/alpha, A = Q + k^2 v^2/(2 N^2),
/// so at N = 1, p = -kv + sqrt((v^2+1)(k^2-1)) sin(xi - xi0).
class SineWave {
 public:
  SineWave(double k, double v, int N = 1, double xi0 = 0.0);

  double k() const { return k_; }
  double v() const { return v_; }
  int N() const { return N_; }
  double xi0() const { return xi0_; }
  double Q() const { return Q_; }
  double alpha() const { return alpha_; }
  double p0() const { return p0_; }
  double A() const { return A_; }
  double amplitude() const { return amplitude_; }
  TravellingWaveParams params() const { return {k_, v_, 0.0, Q_, xi0_}; }

  double operator()(double xi) const;
  double derivative(double xi) const;
  double dg_dxi(double xi) const { return hhm_dg_dxi((*this)(xi), k_, v_); }

 private:
  double k_, v_;
  int N_;
  double xi0_;
  double Q_, alpha_, p0_, A_, amplitude_;
};

phase::DeltaPhi hhm_delta_phi(const SineWave& wave, const geometry::SpaceKind& domain);

// ---- closed-form phase of the sine family (k > 1, v != 0) ----------------

struct PhaseClosedFormParams {
  double k = 0, v = 0;
  double gamma = 0;            ///< sqrt((v^2+1)(k^2-1))
  std::complex<double> Omega;  ///< (v - ik - i gamma)/(1 + ikv)

  static PhaseClosedFormParams make(double k, double v);
};

/// Xi(xi) = (tan(xi/2) + Omega) / (-tan(xi/2) - 1/Omega), evaluated with
/// the tangent cleared so xi = +-pi gives -1.
std::complex<double> phase_loop(const PhaseClosedFormParams& params, double xi);

/// arg Xi lifted continuously from xi = 0; quasi-periodic beyond [-pi, pi].
double hhm_phase_closed_form(const PhaseClosedFormParams& params, double xi);

/// The undivided two-term form arg[(tan(xi/2) + a/b)/(tan(xi/2) + c/b)] with
/// a = -i gamma - ik + v, b = 1 + ikv, c = -i gamma + ik - v (principal branch).
double hhm_phase_ratio_form(const PhaseClosedFormParams& params, double xi);

/// The unique xi in (-pi, pi) where Xi is real and positive.
double xi_crossing(double k, double v);

// ---- c = 1 cnoidal family and its m -> 1 limit ---------------------------

/// p2 - (p2 - p3) cn^2(w (xi - xi3) | m), w = sqrt((p1-p3)/2),
/// m = (p2-p3)/(p1-p3). The roots are checked against the c = 1 cubic.
class CnoidalWave {
 public:
  CnoidalWave(double p1, double p2, double p3, double xi3 = 0.0);

  double operator()(double xi) const;
  double derivative(double xi) const;
  double m() const { return m_; }
  double period() const;
  const reduction::HhmCubicParams& params() const { return params_; }
  double p1() const { return p1_; }
  double p2() const { return p2_; }
  double p3() const { return p3_; }

 private:
  double p1_, p2_, p3_, xi3_;
  double w_, m_, mc_;
  reduction::HhmCubicParams params_;
};

double hhm_cnoidal(double p1, double p2, double p3, double xi3, double xi);

double hhm_sech_limit(double p1, double p3, double xi0, double xi);
double hhm_sech_limit_derivative(double p1, double p3, double xi0, double xi);

/// The sech^2 profile with its c = 1 parameters (double root p1, simple p3).
struct SechWave {
  double p1 = 0, p3 = 0, xi0 = 0;
  reduction::HhmCubicParams params;

  static SechWave make(double p1, double p3, double xi0 = 0.0);
  double operator()(double xi) const { return hhm_sech_limit(p1, p3, xi0, xi); }
  /// Slope of Delta phi(L) for large L: (k - v p1)/(1 + p1^2).
  double asymptotic_rate() const;
};

phase::DeltaPhi hhm_delta_phi(const CnoidalWave& wave, const geometry::SpaceKind& domain);
phase::DeltaPhi hhm_delta_phi(const SechWave& wave, const geometry::SpaceKind& domain);

/// Constants of the partial-fraction form of g' for the sech^2 family.
struct SechLimitParams {
  double k = 0, v = 0, Q = 0;
  double gamma = 0;  ///< (k^2 - v^2 + 2Q + 4)/6
  std::complex<double> Omega;
  std::complex<double> lambda;

  static SechLimitParams make(double k, double v, double Q);
  /// Omega [1/(lambda - cosh X) + 1/(lambda + cosh X)] + conjugate term.
  double oscillatory(double X) const;
  /// The printed constant (k - v gamma)/(gamma^2 - 1).
  double constant_term() const;
};

/// Hamiltonian density of the one-wind sech^2 wave with p1 = 0, p3 = -2.
double hhm_hamiltonian_profile(double X);
/// Its value as |X| -> infinity: (2 + sqrt 5)^(-1/2).
double hhm_hamiltonian_plateau();

// ---- sigma model -----------------------------------------------------------

class HsmBlowupParams {
 public:
  HsmBlowupParams(int N, double rho, double t0 = 0.0);
  int N() const { return N_; }
  double rho() const { return rho_; }
  double t0() const { return t0_; }
  double m() const { return m_; }
  double blowup_time() const { return t_star_; }

 private:
  int N_;
  double rho_, t0_, m_, t_star_;
};

/// atanh(sn(rho (t - t0) | m)); throws BlowUpError for t >= t*.
double hsm_blowup_theta(const HsmBlowupParams& params, double t);
/// theta_t = rho dn / cn.
double hsm_blowup_theta_dot(const HsmBlowupParams& params, double t);
/// 2 pi [N^2 cosh^2 theta - theta_t^2], which equals 2 pi (N^2 - rho^2).
double hsm_blowup_energy(const HsmBlowupParams& params, double t);

/// sqrt(B^2/N^2 - 1) sin(N (xi - xi0)); requires B^2 >= N^2.
double hsm_sine(double B, int N, double xi0, double xi);
/// g'(xi) = B sech^2 f = B / (1 + p^2).
double hsm_sine_dg_dxi(double B, double p);
phase::DeltaPhi hsm_sine_delta_phi(double B, int N, const geometry::SpaceKind& domain);

/// J sn(c K (xi - xi0)/(v^2 - 1) | J^2/K^2).
double hsm_elliptic(double J, double K, double c, double v, double xi0, double xi);
double hsm_elliptic_derivative(double J, double K, double c, double v, double xi0, double xi);
double hsm_elliptic_period(double J, double K, double c, double v);
/// p0 tanh(c p0 (xi - xi0)/(v^2 - 1)), the J = K member.
double hsm_tanh(double p0, double c, double v, double xi0, double xi);

/// g' for the tanh profile, in terms of X = c p0 xi/(v^2 - 1).
double hsm_tanh_dg_dxi(double p0, double c, double v, double R, double xi);
/// cv/(v^2-1) + (2R(v^2-1) - cv)/(2(v^2-1)(1+p0^2)).
double hsm_tanh_asymptotic_slope(double p0, double c, double v, double R);
/// R for which that slope vanishes.
double hsm_tanh_balanced_R(double p0, double c, double v);
phase::DeltaPhi hsm_tanh_delta_phi(double p0, double c, double v, double R, double L);

}  // namespace hyperwind::waves
