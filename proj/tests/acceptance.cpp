// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails.

#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hyperwind/elliptic.hpp"
#include "hyperwind/evolution.hpp"
#include "hyperwind/reduction.hpp"
#include "hyperwind/wave_families.hpp"
#include "oracles.hpp"

using namespace hyperwind;
constexpr double kPi = std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<std::pair<double, double>> random_kv(int count) {
  auto gen = oracle::rng(1501);
  std::uniform_real_distribution<double> K(1.05, 4.0), V(-3.0, 3.0);
  std::vector<std::pair<double, double>> out;
  while (static_cast<int>(out.size()) < count) {
    const double v = V(gen);
    if (std::abs(v) < 0.1) continue;
    out.emplace_back(K(gen), v);
  }
  return out;
}

Outcome sine_residual() {
  double worst = 0;
  for (auto [k, v] : random_kv(20)) {
    const waves::SineWave w(k, v);
    const auto P = reduction::build_P_hhm(k, v, 0.0, w.Q());
    for (int i = 0; i <= 2000; ++i) {
      const double xi = -kPi + 2 * kPi * i / 2000;
      const double d = w.derivative(xi);
      worst = std::max(worst, std::abs(d * d / 2 - P(w(xi))));
    }
  }
  return {worst <= 1e-10, fmt::format("max |p'^2/2 - P(p)| = {:.3e} over 20 (k, v)", worst)};
}

Outcome winding_cases() {
  double worst = 0;
  const auto dphi = [](double k, double v) { return waves::hhm_delta_phi(waves::SineWave(k, v), geometry::Circle{}).value; };
  for (double k : {1.5, 2.0, 5.0}) worst = std::max(worst, std::abs(dphi(k, 0.0) - 2 * kPi));
  for (double v : {-2.0, 0.5, 3.0}) worst = std::max(worst, std::abs(dphi(1.0, v) - 2 * kPi));
  double worst_random = 0, worst_oracle = 0;
  for (auto [k, v] : random_kv(20)) {
    const waves::SineWave w(k, v);
    const double d = dphi(k, v);
    worst_random = std::max(worst_random, std::abs(std::abs(d) - 2 * kPi));
    const double ref = oracle::periodic_trapezoid([&](double xi) { return w.dg_dxi(xi); }, -kPi, kPi, 1 << 14);
    worst_oracle = std::max(worst_oracle, std::abs(d - ref));
  }
  const bool pass = worst <= 1e-8 && worst_random <= 1e-8 && worst_oracle <= 1e-8;
  return {pass, fmt::format("cases (i),(ii) err {:.2e}; random |dphi| err {:.2e}; vs trapezoid {:.2e}", worst,
                            worst_random, worst_oracle)};
}

Outcome unique_crossing() {
  double worst_im = 0, min_re = INFINITY;
  int bad_counts = 0;
  for (auto [k, v] : random_kv(20)) {
    const auto pc = waves::PhaseClosedFormParams::make(k, v);
    const auto X = waves::phase_loop(pc, waves::xi_crossing(k, v));
    worst_im = std::max(worst_im, std::abs(X.imag()));
    min_re = std::min(min_re, X.real());
    if (oracle::sign_changes([&](double xi) { return waves::phase_loop(pc, xi).imag(); }, -kPi, kPi, 10000) != 1)
      ++bad_counts;
  }
  return {worst_im < 1e-9 && min_re > 0 && bad_counts == 0,
          fmt::format("max |Im Xi(xi*)| = {:.2e}, min Re = {:.3f}, loops without a single crossing: {}", worst_im,
                      min_re, bad_counts)};
}

Outcome cnoidal_limits() {
  double worst_sech = 0, worst_const = 0;
  for (auto [p1, p3] : {std::pair{0.5, -2.0}, {0.0, -2.0}, {1.0, -0.5}}) {
    const double near1 = p1 - 1e-12 * (p1 - p3);
    const double near0 = p3 + 1e-12 * (p1 - p3);
    for (int i = 0; i <= 400; ++i) {
      const double xi = -10 + 20.0 * i / 400;
      worst_sech = std::max(worst_sech,
                            std::abs(waves::hhm_cnoidal(p1, near1, p3, 0.0, xi) - waves::hhm_sech_limit(p1, p3, 0.0, xi)));
      worst_const = std::max(worst_const, std::abs(waves::hhm_cnoidal(p1, near0, p3, 0.0, xi) - p3));
    }
  }
  return {worst_sech < 1e-8 && worst_const < 1e-8,
          fmt::format("m = 1 - 1e-12 vs sech^2: {:.2e}; m = 1e-12 vs constant p3: {:.2e}", worst_sech, worst_const)};
}

Outcome figure_one() {
  const double peak = std::pow(5 + 2 * std::sqrt(5.0), 2) / (5 * std::sqrt(2 + std::sqrt(5.0)));
  const double plateau = 1 / std::sqrt(2 + std::sqrt(5.0));
  double asym = 0;
  for (int i = 0; i <= 1000; ++i) {
    const double X = 20.0 * i / 1000;
    asym = std::max(asym, std::abs(waves::hhm_hamiltonian_profile(X) - waves::hhm_hamiltonian_profile(-X)));
  }
  const double h0 = waves::hhm_hamiltonian_profile(0.0);
  const double h20 = std::max(std::abs(waves::hhm_hamiltonian_profile(20.0) - plateau),
                              std::abs(waves::hhm_hamiltonian_profile(-20.0) - plateau));
  const auto I = [](double L) { return oracle::integrate(waves::hhm_hamiltonian_profile, -L, L); };
  const double slope = (I(40.0) - I(20.0)) / 40.0;
  const bool pass = asym < 1e-12 && std::abs(h0 - peak) < 1e-6 && h20 < 1e-6 && std::abs(slope - plateau) < 1e-4;
  return {pass, fmt::format("H(0) = {:.8f} (closed form {:.8f}), |H(+-20) - plateau| = {:.1e}, "
                            "integral slope {:.6f} vs {:.6f}, asymmetry {:.1e}",
                            h0, peak, h20, slope, plateau, asym)};
}

Outcome non_existence() {
  const auto start = std::chrono::steady_clock::now();
  auto gen = oracle::rng(606);
  std::uniform_real_distribution<double> U(-5, 5);
  std::uniform_int_distribution<int> branch(0, 9);
  std::size_t counterexamples = 0, no_winding = 0, inadmissible = 0;
  std::array<std::size_t, 6> by_case{};
  const std::size_t n = 1000000;
  for (std::size_t i = 0; i < n; ++i) {
    double k = U(gen), v = U(gen), c = U(gen), Q = U(gen);
    switch (branch(gen)) {  // 40% of tuples sit on the special surfaces
      case 0: v = 0; break;
      case 1: k = 0; Q = 0; break;
      case 2: Q = (k / (2 * v)) * (k * v - 2 * c); break;
      case 3: c = 0; Q = k * k / 2; break;
      default: break;
    }
    const auto r = reduction::winding_existence_hhm_on_R(k, v, c, Q);
    bool counter = false;
    if (r.verdict == reduction::Verdict::NoWindingOnR) {
      ++no_winding;
      if (r.case_letter < 'a' || r.case_letter > 'f') counter = true;
      else ++by_case[r.case_letter - 'a'];
    } else if (r.verdict == reduction::Verdict::Inadmissible) {
      ++inadmissible;
    } else {
      counter = true;
    }
    if (reduction::check_conditions_hhm_on_R(k, v, c, Q).all()) counter = true;
    counterexamples += counter;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {counterexamples == 0 && secs <= 120,
          fmt::format("{} tuples: {} NoWindingOnR (a..f = {},{},{},{},{},{}), {} Inadmissible, {} counterexamples, "
                      "{:.1f} s",
                      n, no_winding, by_case[0], by_case[1], by_case[2], by_case[3], by_case[4], by_case[5],
                      inadmissible, counterexamples, secs)};
}

Outcome divergent_windings() {
  std::string detail;
  bool pass = true;
  for (auto [p1, p3] : {std::pair{0.0, -2.0}, {0.5, -2.0}, {1.0, -0.5}}) {
    const auto s = waves::SechWave::make(p1, p3);
    const double rate = (s.params.k - s.params.v * p1) / (1 + p1 * p1);
    const auto d = waves::hhm_delta_phi(s, geometry::TruncatedLine{20.0});
    const bool ok = d.status == phase::Convergence::Diverges && std::abs(d.rate - rate) < 1e-3;
    pass = pass && ok;
    detail += fmt::format("sech2 p1={} rate {:.6f}/{:.6f}; ", p1, d.rate, rate);
  }
  const double p0 = 1, c = 1, v = 2, R = 0, L = 20;
  const double rate = c * v / (v * v - 1) + (2 * R * (v * v - 1) - c * v) / (2 * (v * v - 1) * (1 + p0 * p0));
  const auto d = waves::hsm_tanh_delta_phi(p0, c, v, R, L);
  const auto g = [&](double xi) { return waves::hsm_tanh_dg_dxi(p0, c, v, R, xi); };
  const double growth = oracle::integrate(g, -2 * L, 2 * L) - oracle::integrate(g, -L, L);
  const bool ok = d.status == phase::Convergence::Diverges && std::abs(d.rate - rate) < 1e-3 &&
                  std::abs(growth - rate * 2 * L) <= 1e-3 * rate * 2 * L;
  pass = pass && ok;
  detail += fmt::format("tanh rate {:.6f}/{:.6f}, oracle growth {:.4f}/{:.4f}", d.rate, rate, growth, rate * 2 * L);
  return {pass, detail};
}

Outcome jk_matching() {
  auto gen = oracle::rng(808);
  std::uniform_real_distribution<double> Uq(-6, -1.5), Ur(-1, 1), Uv(1.2, 3.0);
  int samples = 0;
  double worst = 0;
  while (samples < 100) {
    const double q = Uq(gen), rho = Ur(gen), v = Uv(gen);
    double j2, k2;
    if (!oracle::hsm_positive_pair(q, rho, j2, k2) || k2 - j2 < 1e-3) continue;
    const auto m = reduction::match_JK(q, rho);
    if (!std::holds_alternative<reduction::JKMatch>(m)) {
      worst = INFINITY;
      break;
    }
    const auto& jk = std::get<reduction::JKMatch>(m);
    const auto [Q, R] = reduction::hsm_Q_R(v, q, rho);
    const auto roots = reduction::classify_roots(reduction::build_P_hsm(v, 1.0, Q, R)).real_roots();
    const double J = std::sqrt(jk.j_squared), K = std::sqrt(jk.k_squared);
    if (roots.size() != 4) {
      worst = INFINITY;
      break;
    }
    const std::array<double, 4> expected{K, J, -J, -K};
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(roots[i] - expected[i]));
    ++samples;
  }

  reduction::HsmScanSpec spec{{-6, 0, 200}, {-1, 1, 200}};
  const auto scan = reduction::hsm_jk_scan(spec);
  std::size_t mismatch = 0, oracle_mismatch = 0, boundary = 0;
  for (const auto& r : scan.rows) {
    const bool rule = r.q < -1.5 && 2 * r.q > -(8 * r.rho * r.rho + 1) && 1 - 2 * r.q >= 8 * std::abs(r.rho);
    mismatch += rule != r.admissible;
    const double disc = (1 - 2 * r.q) * (1 - 2 * r.q) - 64 * r.rho * r.rho;
    if (std::abs(disc) < 1e-9) {
      ++boundary;
      continue;
    }
    double j2, k2;
    oracle_mismatch += oracle::hsm_positive_pair(r.q, r.rho, j2, k2) != r.admissible;
  }
  return {worst <= 1e-10 && mismatch == 0 && oracle_mismatch == 0,
          fmt::format("100 samples max root error {:.2e}; 200x200 grid: {} admissible, {} rule mismatches, {} "
                      "quadratic-oracle mismatches ({} boundary points skipped by the oracle)",
                      worst, scan.admissible, mismatch, oracle_mismatch, boundary)};
}

Outcome hsm_blowup() {
  evolution::SimulationConfig cfg;
  cfg.model = evolution::Model::HSM;
  cfg.grid = {256, geometry::Circle{}};
  cfg.dt = 1e-3;
  cfg.T = 2.0;
  const waves::HsmBlowupParams b(1, 2.0, 0.0);
  const auto r = evolution::run(cfg, evolution::hsm_blowup_state(cfg.grid, b));
  double worst_theta = 0, worst_energy = 0;
  std::size_t tracked = 0;
  const double E = 2 * kPi * (1 - 4);
  bool windings = true;
  for (const auto& rec : r.records) {
    const double exact = waves::hsm_blowup_theta(b, std::min(rec.t, std::nextafter(b.blowup_time(), 0.0)));
    if (std::abs(std::tanh(exact)) > 0.99) break;
    ++tracked;
    if (exact != 0) {
      worst_theta = std::max(worst_theta, std::abs(rec.theta_max - exact) / std::abs(exact));
      worst_theta = std::max(worst_theta, std::abs(rec.theta_min - exact) / std::abs(exact));
    }
    worst_energy = std::max(worst_energy, std::abs(rec.energy - E) / std::abs(E));
    windings = windings && rec.winding == 1;
  }
  const double t_star = oracle::complete_K(0.75) / 2;
  const double t_abort = r.abort ? r.abort->time() : NAN;
  const double abort_err = std::abs(t_abort - t_star) / t_star;
  const bool pass = r.abort && worst_theta <= 1e-3 && worst_energy <= 1e-5 && abort_err <= 0.02 && windings;
  return {pass, fmt::format("{} records tracked: theta rel err {:.2e}, energy rel err {:.2e}; abort at t = {:.4f} "
                            "vs t* = {:.5f} ({:.2f}%)",
                            tracked, worst_theta, worst_energy, t_abort, t_star, 100 * abort_err)};
}

Outcome conservation_convergence() {
  const waves::SineWave w(1.02, 30.0);
  bool windings = true;
  auto error_at = [&](std::size_t M, evolution::Scheme scheme, double dt) {
    evolution::SimulationConfig cfg;
    cfg.grid = {M, geometry::Circle{}};
    cfg.scheme = scheme;
    cfg.dt = dt;
    cfg.T = 1.0;
    cfg.cadence = 100;
    const auto r = evolution::run(cfg, evolution::sine_wave_state(cfg.grid, w));
    if (r.abort) return std::numeric_limits<double>::infinity();
    for (const auto& rec : r.records) windings = windings && rec.winding == 1;
    const auto exact = evolution::sine_wave_state(cfg.grid, w, r.final_state.time);
    double err = 0;
    for (std::size_t i = 0; i < M; ++i) {
      err = std::max(err, std::abs(r.final_state.theta[i] - exact.theta[i]));
      err = std::max(err, std::abs(r.final_state.phi[i] - exact.phi[i]));
    }
    return err;
  };
  const double e1 = error_at(32, evolution::Scheme::Spectral, 2e-3);
  const double e2 = error_at(32, evolution::Scheme::Spectral, 1e-3);
  const double e3 = error_at(32, evolution::Scheme::Spectral, 5e-4);
  const double f1 = error_at(16, evolution::Scheme::FourthOrderCentered, 2.5e-4);
  const double f2 = error_at(32, evolution::Scheme::FourthOrderCentered, 2.5e-4);
  const double f3 = error_at(64, evolution::Scheme::FourthOrderCentered, 2.5e-4);

  // Constraint with projection on: ambient runs that stay inside the
  // stable band of the ambient discretisation.
  double residual = 0;
  auto ambient = [&](std::size_t M, double dt, double T, const evolution::FieldState& s0) {
    evolution::SimulationConfig amb;
    amb.grid = {M, geometry::Circle{}};
    amb.form = evolution::Form::Ambient;
    amb.dt = dt;
    amb.T = T;
    amb.cadence = 10;
    const auto ra = evolution::run(amb, s0);
    if (ra.abort) residual = INFINITY;
    for (const auto& rec : ra.records) {
      residual = std::max(residual, rec.constraint_residual);
      windings = windings && rec.winding == 1;
    }
  };
  const geometry::Grid g8{8, geometry::Circle{}}, g32{32, geometry::Circle{}};
  ambient(8, 1e-3, 1.0, evolution::static_winding_state(g8, evolution::Model::HHM, 1.0, 1));
  ambient(8, 1e-3, 1.0, evolution::sine_wave_state(g8, waves::SineWave(1.5, 0.5)));
  ambient(32, 1e-4, 0.005, evolution::sine_wave_state(g32, w));
  const double r1 = e1 / e2, r2 = e2 / e3;
  const bool pass = windings && r1 >= 14 && r2 >= 14 && residual < 1e-9;
  return {pass, fmt::format("dt-halving ratios {:.1f}, {:.1f} (errors {:.2e}, {:.2e}, {:.2e}); fd4 h-halving ratios "
                            "{:.1f}, {:.1f}; ambient residual {:.1e}; windings constant: {}",
                            r1, r2, e1, e2, e3, f1 / f2, f2 / f3, residual, windings ? "yes" : "no")};
}

Outcome elliptic_kernel() {
  auto gen = oracle::rng(1111);
  std::uniform_real_distribution<double> U(-10, 10), M(0, 1);
  double worst_id = 0, worst_ode = 0;
  for (int i = 0; i < 1000; ++i) {
    const double u = U(gen), m = M(gen);
    const auto t = elliptic::jacobi(u, m);
    worst_id = std::max({worst_id, std::abs(t.sn * t.sn + t.cn * t.cn - 1), std::abs(t.dn * t.dn + m * t.sn * t.sn - 1)});
    const auto o = oracle::jacobi_ode(u, m);
    worst_ode = std::max({worst_ode, std::abs(t.sn - o.sn), std::abs(t.cn - o.cn), std::abs(t.dn - o.dn)});
  }
  const double K = elliptic::complete_K(0.5);
  const double Kq = oracle::complete_K(0.5);
  return {worst_id <= 1e-12 && worst_ode <= 1e-10 && std::abs(K - 1.85407467) <= 1e-8 && std::abs(K - Kq) < 1e-13,
          fmt::format("identities {:.1e}, ODE oracle {:.1e}, K(0.5) = {:.12f} (quadrature {:.12f})", worst_id,
                      worst_ode, K, Kq)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"sine-family residual", sine_residual},
      {"winding cases", winding_cases},
      {"unique crossing", unique_crossing},
      {"cnoidal limits", cnoidal_limits},
      {"Hamiltonian density profile", figure_one},
      {"non-existence on R", non_existence},
      {"divergent windings", divergent_windings},
      {"HSM J/K matching", jk_matching},
      {"HSM blow-up dynamics", hsm_blowup},
      {"conservation and convergence", conservation_convergence},
      {"elliptic kernel", elliptic_kernel},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    fmt::print("criterion {:2}: {} {}: {}\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
