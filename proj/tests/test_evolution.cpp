#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hyperwind/errors.hpp"
#include "hyperwind/evolution.hpp"
#include "oracles.hpp"

using namespace hyperwind;
using namespace hyperwind::evolution;
constexpr double kPi = std::numbers::pi;

namespace {

SimulationConfig config(Model model, std::size_t M, double dt, double T) {
  SimulationConfig c;
  c.model = model;
  c.grid = {M, geometry::Circle{}};
  c.dt = dt;
  c.T = T;
  return c;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("spectral and fourth-order derivatives") {
  const std::size_t M = 64;
  const geometry::Grid g{M, geometry::Circle{}};
  std::vector<double> f, d1(M), d2(M);
  for (double x : g.coordinates()) f.push_back(std::sin(3 * x) + std::cos(x));
  Differentiator spec(M, 2 * kPi, Scheme::Spectral);
  spec.both(f, d1, d2);
  for (std::size_t i = 0; i < M; ++i) {
    const double x = g.x(i);
    CHECK(d1[i] == doctest::Approx(3 * std::cos(3 * x) - std::sin(x)).epsilon(1e-12).scale(1.0));
    CHECK(d2[i] == doctest::Approx(-9 * std::sin(3 * x) - std::cos(x)).epsilon(1e-12).scale(1.0));
  }
  // fourth order: error drops about 16x per halving of h
  double prev = 0;
  for (std::size_t n : {32, 64, 128}) {
    const geometry::Grid gn{n, geometry::Circle{}};
    std::vector<double> fn, out(n);
    for (double x : gn.coordinates()) fn.push_back(std::sin(3 * x));
    Differentiator fd(n, 2 * kPi, Scheme::FourthOrderCentered);
    fd.first(fn, out);
    double err = 0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(out[i] - 3 * std::cos(3 * gn.x(i))));
    if (prev > 0) CHECK(prev / err > 14);
    prev = err;
  }
  CHECK_THROWS_AS(Differentiator(4, 1.0, Scheme::FourthOrderCentered), DomainError);
}

TEST_CASE("uniform states are fixed points") {
  for (Model model : {Model::HHM, Model::HSM}) {
    const auto cfg = config(model, 32, 1e-3, 0.1);
    const auto s0 = uniform_state(cfg.grid, model, 0.4, 1.2);
    const auto r = run(cfg, s0);
    CHECK_FALSE(r.abort);
    CHECK(max_abs_diff(r.final_state.theta, s0.theta) < 1e-14);
    CHECK(max_abs_diff(r.final_state.phi, s0.phi) < 1e-14);
  }
}

TEST_CASE("static winding evolves as phi = N x + p3 N^2 t") {
  for (auto [p3, N] : {std::pair{1.0, 1}, {0.25, 2}, {-0.6, 1}}) {
    auto cfg = config(Model::HHM, 256, 1.5e-4, 1.0);
    cfg.cadence = 1000;
    const auto s0 = static_winding_state(cfg.grid, Model::HHM, p3, N);
    const auto r = run(cfg, s0);
    REQUIRE_FALSE(r.abort);
    double err = 0;
    for (std::size_t i = 0; i < s0.phi.size(); ++i) {
      err = std::max(err, std::abs(r.final_state.phi[i] - (s0.phi[i] + p3 * N * N * r.final_state.time)));
      err = std::max(err, std::abs(r.final_state.theta[i] - std::asinh(p3)));
    }
    CHECK(err < 1e-6);
    for (const auto& rec : r.records) CHECK(rec.winding == N);
  }
}

TEST_CASE("the stability bound is checked before running") {
  const auto cfg = config(Model::HHM, 256, 1e-2, 1.0);
  CHECK_THROWS_AS(run(cfg, static_winding_state(cfg.grid, Model::HHM, 1.0, 1)), DomainError);
  auto loose = cfg;
  loose.check_stability = false;
  loose.T = 0.0;
  CHECK_NOTHROW(run(loose, static_winding_state(cfg.grid, Model::HHM, 1.0, 1)));
}

TEST_CASE("dispersive sine wave keeps its winding over T = 5") {
  auto cfg = config(Model::HHM, 32, 1e-3, 5.0);
  cfg.cadence = 50;
  const waves::SineWave w(1.02, 30.0);
  const auto r = run(cfg, sine_wave_state(cfg.grid, w));
  CHECK_FALSE(r.abort);
  CHECK(r.records.size() > 50);
  for (const auto& rec : r.records) CHECK(rec.winding == 1);
  const double H0 = r.records.front().energy;
  double drift = 0;
  for (const auto& rec : r.records) drift = std::max(drift, std::abs(rec.energy - H0) / (std::abs(H0) + 1));
  CHECK(drift < 1e-6);
}

TEST_CASE("travelling wave is translated") {
  auto cfg = config(Model::HHM, 32, 5e-4, 1.0);
  const waves::SineWave w(1.02, 30.0);
  const auto r = run(cfg, sine_wave_state(cfg.grid, w));
  REQUIRE_FALSE(r.abort);
  const auto exact = sine_wave_state(cfg.grid, w, r.final_state.time);
  CHECK(max_abs_diff(r.final_state.theta, exact.theta) < 1e-4);
  CHECK(max_abs_diff(r.final_state.phi, exact.phi) < 1e-4);
}

TEST_CASE("ill-posed travelling wave at M = 512 aborts early") {
  auto cfg = config(Model::HHM, 512, 4e-5, 1.0);
  cfg.cadence = 1000;
  const waves::SineWave w(2.0, 1.0);
  const auto s0 = sine_wave_state(cfg.grid, w);
  CHECK(hhm_growth_rate(cfg, s0) > 1e4);
  const auto r = run(cfg, s0);
  REQUIRE(r.abort);
  CHECK(r.abort->time() < 0.01);
  CHECK(r.final_state.time < 0.01);
}

TEST_CASE("ambient form agrees with the polar form and keeps the constraint") {
  for (bool renormalize : {true, false}) {
    auto cfg = config(Model::HHM, 8, 1e-3, 1.0);
    cfg.form = Form::Ambient;
    cfg.renormalize = renormalize;
    cfg.cadence = 50;
    const auto s0 = static_winding_state(cfg.grid, Model::HHM, 1.0, 1);
    const auto r = run(cfg, s0);
    REQUIRE_FALSE(r.abort);
    for (const auto& rec : r.records) {
      CHECK(rec.constraint_residual < (renormalize ? 1e-9 : 1e-6));
      CHECK(rec.winding == 1);
    }
    double err = 0;
    for (std::size_t i = 0; i < s0.phi.size(); ++i)
      err = std::max(err, std::abs(r.final_state.phi[i] - (s0.phi[i] + r.final_state.time)));
    CHECK(err < 1e-10);
  }

  auto cfg = config(Model::HHM, 32, 1e-4, 0.005);
  cfg.form = Form::Ambient;
  const waves::SineWave w(1.02, 30.0);
  const auto amb = run(cfg, sine_wave_state(cfg.grid, w));
  cfg.form = Form::Polar;
  const auto pol = run(cfg, sine_wave_state(cfg.grid, w));
  REQUIRE_FALSE(amb.abort);
  REQUIRE_FALSE(pol.abort);
  CHECK(max_abs_diff(amb.final_state.theta, pol.final_state.theta) < 1e-7);
  for (const auto& rec : amb.records) CHECK(rec.constraint_residual < 1e-9);
}

TEST_CASE("ambient discretisation loses the dispersive band at large cosh theta") {
  auto cfg = config(Model::HHM, 32, 1e-3, 1.0);
  cfg.form = Form::Ambient;
  const auto r = run(cfg, sine_wave_state(cfg.grid, waves::SineWave(1.02, 30.0)));
  REQUIRE(r.abort);
  CHECK(r.abort->kind() == AbortKind::Instability);
  for (const auto& rec : r.records) CHECK(rec.constraint_residual < 1e-9);
}

TEST_CASE("HSM uniform rotation and blow-up") {
  SUBCASE("blow-up aborts near t*") {
    auto cfg = config(Model::HSM, 64, 1e-3, 1.5);
    cfg.cadence = 100;
    const waves::HsmBlowupParams b(1, 2.0, 0.0);
    const auto r = run(cfg, hsm_blowup_state(cfg.grid, b));
    REQUIRE(r.abort);
    CHECK(r.abort->kind() == AbortKind::BlowUp);
    CHECK(std::abs(r.abort->time() - b.blowup_time()) / b.blowup_time() < 0.02);
    CHECK(r.records.front().energy == doctest::Approx(-6 * kPi).epsilon(1e-12));
  }
  SUBCASE("HSM blow-up energy is conserved early on") {
    auto cfg = config(Model::HSM, 64, 1e-3, 0.8);
    cfg.cadence = 100;
    const waves::HsmBlowupParams b(1, 2.0, 0.0);
    const auto r = run(cfg, hsm_blowup_state(cfg.grid, b));
    REQUIRE_FALSE(r.abort);
    for (const auto& rec : r.records) CHECK(rec.energy == doctest::Approx(-6 * kPi).epsilon(1e-8));
  }
}

TEST_CASE("probes sample the field") {
  auto cfg = config(Model::HHM, 32, 1e-3, 0.0);
  const auto s0 = static_winding_state(cfg.grid, Model::HHM, 0.5, 1);
  const auto r = run(cfg, s0, {cfg.grid.x(3)});
  REQUIRE(r.records.size() == 1);
  REQUIRE(r.records[0].probes.size() == 1);
  CHECK(r.records[0].probes[0].theta == doctest::Approx(std::asinh(0.5)));
  CHECK(r.records[0].probes[0].phi == doctest::Approx(s0.phi[3]));
}
