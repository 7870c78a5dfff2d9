#include "hyperwind/evolution.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperwind/errors.hpp"

namespace hyperwind::evolution {

namespace {

constexpr double kThetaGuard = 700.0;

using geometry::Grid;
using Vec = std::vector<double>;

double lift_slope(long winding, const Grid& grid) {
  return 2.0 * std::numbers::pi * static_cast<double>(winding) / geometry::domain_length(grid.space);
}

// Winding read around the closed loop; the truncated line is closed by
// its identification boundary condition.
geometry::WindingReport closed_winding(std::span<const double> phi) {
  return geometry::winding_number(phi, geometry::Circle{});
}

void require_size(const Vec& v, std::size_t n, const char* what) {
  if (v.size() != n)
    throw DomainError(fmt::format("field {} has {} samples, grid has {}", what, v.size(), n));
}

}  // namespace

std::string_view to_string(Model m) { return m == Model::HHM ? "hhm" : "hsm"; }
std::string_view to_string(Form f) { return f == Form::Polar ? "polar" : "ambient"; }
std::string_view to_string(AbortKind k) { return k == AbortKind::BlowUp ? "blow-up" : "instability"; }

struct Integrator::Impl {
  SimulationConfig cfg;
  Differentiator D;
  std::size_t M;
  Vec xs;
  long N = 0;
  double slope = 0;
  double time = 0;
  double phi_anchor = 0;
  Vec y;
  Vec k1, k2, k3, k4, tmp;
  // workspace
  Vec a, ax, axx, b, bx, bxx, c, cx;

  Impl(SimulationConfig config, FieldState init)
      : cfg(std::move(config)),
        D(cfg.grid.points, geometry::domain_length(cfg.grid.space), cfg.scheme),
        M(cfg.grid.points),
        xs(cfg.grid.coordinates()),
        a(M), ax(M), axx(M), b(M), bx(M), bxx(M), c(M), cx(M) {
    time = init.time;
    const bool ambient = cfg.model == Model::HHM && cfg.form == Form::Ambient;
    if (ambient && init.psi.empty()) init = with_ambient(std::move(init));
    if (ambient) {
      require_size(init.theta, M, "theta");
      if (init.psi.size() != M) throw DomainError("field psi does not match the grid");
      y.resize(3 * M);
      Vec phi(M);
      for (std::size_t i = 0; i < M; ++i) {
        y[i] = init.psi[i].psi1;
        y[M + i] = init.psi[i].psi2;
        y[2 * M + i] = init.psi[i].psi3;
        phi[i] = std::atan2(init.psi[i].psi2, init.psi[i].psi1);
      }
      N = closed_winding(phi).winding;
      phi_anchor = init.phi.empty() ? phi[0] : init.phi[0];
    } else {
      require_size(init.theta, M, "theta");
      require_size(init.phi, M, "phi");
      const auto report = closed_winding(init.phi);
      if (report.under_resolved) throw DomainError("initial phi is under-resolved on this grid");
      N = report.winding;
      slope = lift_slope(N, cfg.grid);
      const Vec lifted = geometry::unwrap(init.phi);
      Vec periodic(M);
      for (std::size_t i = 0; i < M; ++i) periodic[i] = lifted[i] - slope * xs[i];
      if (cfg.model == Model::HHM) {
        y = init.theta;
        y.insert(y.end(), periodic.begin(), periodic.end());
      } else {
        Vec theta_t = init.theta_t.empty() ? Vec(M, 0.0) : init.theta_t;
        Vec phi_t = init.phi_t.empty() ? Vec(M, 0.0) : init.phi_t;
        require_size(theta_t, M, "theta_t");
        require_size(phi_t, M, "phi_t");
        y.reserve(4 * M);
        y = init.theta;
        y.insert(y.end(), theta_t.begin(), theta_t.end());
        y.insert(y.end(), periodic.begin(), periodic.end());
        for (std::size_t i = 0; i < M; ++i) {
          const double ch = std::cosh(init.theta[i]);
          y.push_back(phi_t[i] * ch * ch);
        }
      }
    }
    for (double value : y)
      if (!std::isfinite(value)) throw DomainError("initial state is not finite");
    k1.resize(y.size());
    k2.resize(y.size());
    k3.resize(y.size());
    k4.resize(y.size());
    tmp.resize(y.size());
  }

  bool ambient() const { return cfg.model == Model::HHM && cfg.form == Form::Ambient; }

  std::span<const double> part(const Vec& v, std::size_t j) const {
    return std::span<const double>(v).subspan(j * M, M);
  }
  std::span<double> part(Vec& v, std::size_t j) { return std::span<double>(v).subspan(j * M, M); }

  void guard_theta(double theta) const {
    if (std::abs(theta) > kThetaGuard || std::isnan(theta))
      throw SimulationAbort(AbortKind::BlowUp, time,
                            fmt::format("|theta| exceeded {} near t = {:.6g}", kThetaGuard, time));
  }

  void rhs(const Vec& yv, Vec& dy) {
    if (cfg.model == Model::HHM && !ambient()) {
      auto theta = part(yv, 0);
      auto phi = part(yv, 1);
      for (double t : theta) guard_theta(t);
      D.both(theta, ax, axx);
      D.both(phi, bx, bxx);
      auto dtheta = part(dy, 0);
      auto dphi = part(dy, 1);
      for (std::size_t i = 0; i < M; ++i) {
        const double sh = std::sinh(theta[i]);
        const double ch = std::cosh(theta[i]);
        const double phix = slope + bx[i];
        dtheta[i] = 2.0 * sh * ax[i] * phix + ch * bxx[i];
        dphi[i] = axx[i] / ch + sh * phix * phix;
      }
    } else if (ambient()) {
      D.second(part(yv, 0), a);
      D.second(part(yv, 1), b);
      D.second(part(yv, 2), c);
      auto p1 = part(yv, 0), p2 = part(yv, 1), p3 = part(yv, 2);
      auto d1 = part(dy, 0), d2 = part(dy, 1), d3 = part(dy, 2);
      for (std::size_t i = 0; i < M; ++i) {
        guard_theta(std::asinh(p3[i]));
        d1[i] = b[i] * p3[i] - c[i] * p2[i];
        d2[i] = c[i] * p1[i] - a[i] * p3[i];
        d3[i] = -(a[i] * p2[i] - b[i] * p1[i]);
      }
    } else {
      auto theta = part(yv, 0);
      auto u = part(yv, 1);
      auto phi = part(yv, 2);
      auto pi = part(yv, 3);
      for (double t : theta) guard_theta(t);
      D.second(theta, axx);
      D.first(phi, bx);
      for (std::size_t i = 0; i < M; ++i) {
        const double ch = std::cosh(theta[i]);
        c[i] = ch * ch * (slope + bx[i]);
      }
      D.first(c, cx);
      auto dtheta = part(dy, 0), du = part(dy, 1), dphi = part(dy, 2), dpi = part(dy, 3);
      for (std::size_t i = 0; i < M; ++i) {
        const double ch = std::cosh(theta[i]);
        const double sh = std::sinh(theta[i]);
        const double phit = pi[i] / (ch * ch);
        const double phix = slope + bx[i];
        dtheta[i] = u[i];
        du[i] = axx[i] - ch * sh * (phit * phit - phix * phix);
        dphi[i] = phit;
        dpi[i] = cx[i];
      }
    }
  }

  void step(double dt) {
    const std::size_t n = y.size();
    rhs(y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    rhs(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
    rhs(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);

    const double t_next = time + dt;
    const AbortKind nonfinite = cfg.model == Model::HSM ? AbortKind::BlowUp : AbortKind::Instability;
    for (double value : tmp)
      if (!std::isfinite(value))
        throw SimulationAbort(nonfinite, t_next, fmt::format("non-finite field at t = {:.6g}", t_next));

    if (ambient()) renormalize(tmp, t_next);
    for (std::size_t i = 0; i < M; ++i) {
      const double theta = ambient() ? std::asinh(tmp[2 * M + i]) : tmp[i];
      if (std::abs(theta) > kThetaGuard)
        throw SimulationAbort(AbortKind::BlowUp, t_next,
                              fmt::format("|theta| exceeded {} at t = {:.6g}", kThetaGuard, t_next));
    }
    const auto report = closed_winding(phi_of(tmp));
    if (report.under_resolved || report.winding != N)
      throw SimulationAbort(AbortKind::Instability, t_next,
                            fmt::format("phi no longer resolved at t = {:.6g} (largest link {:.3g})",
                                        t_next, report.max_link_increment));
    y.swap(tmp);
    time = t_next;
    if (ambient()) phi_anchor = state().phi[0];
  }

  void renormalize(Vec& v, double t) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      geometry::HyperboloidPoint q{v[i], v[M + i], v[2 * M + i]};
      const double norm = geometry::minkowski_dot(q, q);
      if (norm <= 0.5)
        throw SimulationAbort(AbortKind::Instability, t,
                              fmt::format("eta(psi, psi) = {:.3g} left the positive basin", norm));
      if (cfg.renormalize) {
        const double s = 1.0 / std::sqrt(norm);
        v[i] *= s;
        v[M + i] *= s;
        v[2 * M + i] *= s;
        q = {v[i], v[M + i], v[2 * M + i]};
        worst = std::max(worst, std::abs(geometry::constraint_residual(q)) / (1.0 + q.psi3 * q.psi3));
      }
    }
    if (cfg.renormalize && worst > 100.0 * cfg.constraint_tol)
      throw SimulationAbort(AbortKind::Instability, t, "constraint residual after renormalization");
  }

  Vec phi_of(const Vec& yv) const {
    Vec phi(M);
    if (ambient()) {
      for (std::size_t i = 0; i < M; ++i) phi[i] = std::atan2(yv[M + i], yv[i]);
      return phi;
    }
    const std::size_t j = cfg.model == Model::HHM ? 1 : 2;
    for (std::size_t i = 0; i < M; ++i) phi[i] = yv[j * M + i] + slope * xs[i];
    return phi;
  }

  FieldState state() const {
    FieldState s;
    s.time = time;
    s.phi = phi_of(y);
    if (ambient()) {
      s.theta.resize(M);
      s.psi.resize(M);
      for (std::size_t i = 0; i < M; ++i) {
        s.psi[i] = {y[i], y[M + i], y[2 * M + i]};
        s.theta[i] = std::asinh(y[2 * M + i]);
      }
      s.phi = geometry::unwrap(s.phi);
      const double shift = phi_anchor + geometry::principal_increment(s.phi[0] - phi_anchor) - s.phi[0];
      for (double& p : s.phi) p += shift;
      return s;
    }
    s.theta.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(M));
    if (cfg.model == Model::HSM) {
      s.theta_t.assign(y.begin() + static_cast<std::ptrdiff_t>(M), y.begin() + static_cast<std::ptrdiff_t>(2 * M));
      s.phi_t.resize(M);
      for (std::size_t i = 0; i < M; ++i) {
        const double ch = std::cosh(s.theta[i]);
        s.phi_t[i] = y[3 * M + i] / (ch * ch);
      }
    }
    return s;
  }
};

Integrator::Integrator(SimulationConfig cfg, FieldState initial) {
  if (cfg.check_stability) {
    const double number = stability_number(cfg, initial);
    if (number > kStabilityLimit)
      throw DomainError(fmt::format(
          "dt = {:.3g} exceeds the RK4 stability bound (dt |lambda| = {:.3g} > {})", cfg.dt, number,
          kStabilityLimit));
  }
  impl_ = std::make_unique<Impl>(std::move(cfg), std::move(initial));
}

Integrator::~Integrator() = default;
Integrator::Integrator(Integrator&&) noexcept = default;
Integrator& Integrator::operator=(Integrator&&) noexcept = default;

void Integrator::step(double dt) { impl_->step(dt); }
FieldState Integrator::state() const { return impl_->state(); }
double Integrator::time() const { return impl_->time; }
long Integrator::winding() const { return impl_->N; }
const SimulationConfig& Integrator::config() const { return impl_->cfg; }

namespace {

struct Slopes {
  Vec theta_x, phi_x;
};

Slopes slopes(const SimulationConfig& cfg, const FieldState& state) {
  const std::size_t M = cfg.grid.points;
  Differentiator D(M, geometry::domain_length(cfg.grid.space), cfg.scheme);
  require_size(state.theta, M, "theta");
  require_size(state.phi, M, "phi");
  const auto report = closed_winding(state.phi);
  const double s = lift_slope(report.winding, cfg.grid);
  const Vec lifted = geometry::unwrap(state.phi);
  const Vec xs = cfg.grid.coordinates();
  Vec periodic(M);
  for (std::size_t i = 0; i < M; ++i) periodic[i] = lifted[i] - s * xs[i];
  Slopes out{Vec(M), Vec(M)};
  D.first(state.theta, out.theta_x);
  D.first(periodic, out.phi_x);
  for (double& v : out.phi_x) v += s;
  return out;
}

}  // namespace

double stability_number(const SimulationConfig& cfg, const FieldState& state) {
  if (!(cfg.dt > 0.0)) throw DomainError("dt must be positive");
  FieldState polar = state;
  if (polar.theta.empty() && !polar.psi.empty()) {
    for (const auto& q : polar.psi) {
      const auto pa = geometry::polar_angles(q);
      polar.theta.push_back(pa.theta);
      polar.phi.push_back(pa.phi);
    }
  }
  const Differentiator D(cfg.grid.points, geometry::domain_length(cfg.grid.space), cfg.scheme);
  const auto sl = slopes(cfg, polar);
  double lambda = 0.0;
  if (cfg.model == Model::HHM) {
    double drift = 0.0;
    for (std::size_t i = 0; i < polar.theta.size(); ++i)
      drift = std::max(drift, std::abs(std::sinh(polar.theta[i]) * sl.phi_x[i]));
    lambda = D.second_symbol_max() + 2.0 * drift * D.first_symbol_max();
  } else {
    double pot = 0.0;
    for (std::size_t i = 0; i < polar.theta.size(); ++i) {
      const double pt = polar.phi_t.empty() ? 0.0 : polar.phi_t[i];
      pot = std::max(pot, std::abs(std::cosh(2.0 * polar.theta[i]) * (pt * pt - sl.phi_x[i] * sl.phi_x[i])));
    }
    lambda = std::sqrt(D.second_symbol_max()) + std::sqrt(pot);
  }
  return cfg.dt * lambda;
}

double hhm_growth_rate(const SimulationConfig& cfg, const FieldState& state) {
  const Differentiator D(cfg.grid.points, geometry::domain_length(cfg.grid.space), cfg.scheme);
  const auto sl = slopes(cfg, state);
  const auto ks = D.wavenumbers();
  if (ks.empty()) return 0.0;
  const double kmax = ks.back();
  double c2min = INFINITY;
  for (std::size_t i = 0; i < state.theta.size(); ++i) {
    const double ch = std::cosh(state.theta[i]);
    c2min = std::min(c2min, ch * ch * sl.phi_x[i] * sl.phi_x[i]);
  }
  const double k2 = kmax * kmax;
  return std::sqrt(std::max(0.0, k2 * k2 - c2min * k2));
}

DiagnosticRecord diagnose(const SimulationConfig& cfg, const FieldState& state,
                          const std::vector<double>& probe_x) {
  const std::size_t M = cfg.grid.points;
  const double h = cfg.grid.spacing();
  DiagnosticRecord r;
  r.t = state.time;
  const auto report = closed_winding(state.phi);
  r.winding = report.winding;
  r.delta_phi = report.delta_phi;

  double energy = 0.0;
  if (cfg.model == Model::HHM && !state.psi.empty()) {
    Differentiator D(M, geometry::domain_length(cfg.grid.space), cfg.scheme);
    Vec comp(M), d1(M), d2(M), d3(M);
    for (std::size_t i = 0; i < M; ++i) comp[i] = state.psi[i].psi1;
    D.first(comp, d1);
    for (std::size_t i = 0; i < M; ++i) comp[i] = state.psi[i].psi2;
    D.first(comp, d2);
    for (std::size_t i = 0; i < M; ++i) comp[i] = state.psi[i].psi3;
    D.first(comp, d3);
    for (std::size_t i = 0; i < M; ++i) energy += 0.5 * (d1[i] * d1[i] + d2[i] * d2[i] - d3[i] * d3[i]);
  } else {
    const auto sl = slopes(cfg, state);
    for (std::size_t i = 0; i < M; ++i) {
      const double ch = std::cosh(state.theta[i]);
      const double px = sl.phi_x[i], tx = sl.theta_x[i];
      if (cfg.model == Model::HHM) {
        energy += 0.5 * (ch * ch * px * px - tx * tx);
      } else {
        const double pt = state.phi_t.empty() ? 0.0 : state.phi_t[i];
        const double tt = state.theta_t.empty() ? 0.0 : state.theta_t[i];
        energy += ch * ch * (pt * pt + px * px) - (tt * tt + tx * tx);
      }
    }
  }
  r.energy = energy * h;
  r.energy_half = 0.5 * r.energy;

  for (std::size_t i = 0; i < M; ++i) {
    const auto q = state.psi.empty() ? geometry::embed({state.theta[i], state.phi[i]}) : state.psi[i];
    r.constraint_residual = std::max(r.constraint_residual, std::abs(geometry::constraint_residual(q)));
  }
  r.theta_max = *std::max_element(state.theta.begin(), state.theta.end());
  r.theta_min = *std::min_element(state.theta.begin(), state.theta.end());

  const double start = geometry::domain_start(cfg.grid.space);
  const double length = geometry::domain_length(cfg.grid.space);
  for (double x : probe_x) {
    const double rel = std::fmod(std::fmod(x - start, length) + length, length);
    const auto i = static_cast<std::size_t>(std::llround(rel / h)) % M;
    r.probes.push_back({x, state.theta[i], state.phi[i]});
  }
  return r;
}

FieldState step_hhm(const FieldState& state, const SimulationConfig& cfg) {
  if (cfg.model != Model::HHM) throw DomainError("step_hhm: configuration is not for the HHM");
  Integrator it(cfg, state);
  it.step(cfg.dt);
  return it.state();
}

FieldState step_hsm(const FieldState& state, const SimulationConfig& cfg) {
  if (cfg.model != Model::HSM) throw DomainError("step_hsm: configuration is not for the HSM");
  Integrator it(cfg, state);
  it.step(cfg.dt);
  return it.state();
}

RunResult run(const SimulationConfig& cfg, const FieldState& initial, const std::vector<double>& probe_x) {
  if (cfg.grid.points == 0) throw DomainError("grid has no points");
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw DomainError("dt must be positive");
  if (!(cfg.T >= 0.0) || !std::isfinite(cfg.T)) throw DomainError("T must be non-negative");
  if (cfg.cadence == 0) throw DomainError("cadence must be at least 1");

  Integrator it(cfg, initial);
  RunResult result;
  FieldState current = it.state();
  result.records.push_back(diagnose(cfg, current, probe_x));
  const double t_end = initial.time + cfg.T;
  bool recorded = true;
  while (it.time() < t_end - 1e-12 * (1.0 + std::abs(t_end))) {
    const double h = std::min(cfg.dt, t_end - it.time());
    try {
      it.step(h);
    } catch (const SimulationAbort& abort) {
      result.abort = abort;
      if (!recorded) result.records.push_back(diagnose(cfg, current, probe_x));
      result.final_state = std::move(current);
      return result;
    }
    ++result.steps;
    current = it.state();
    recorded = result.steps % cfg.cadence == 0;
    if (recorded) result.records.push_back(diagnose(cfg, current, probe_x));
  }
  if (!recorded) result.records.push_back(diagnose(cfg, current, probe_x));
  result.final_state = std::move(current);
  return result;
}

// ---- initial data -----------------------------------------------------------

FieldState uniform_state(const Grid& grid, Model model, double theta0, double phi0) {
  FieldState s;
  s.theta.assign(grid.points, theta0);
  s.phi.assign(grid.points, phi0);
  if (model == Model::HSM) {
    s.theta_t.assign(grid.points, 0.0);
    s.phi_t.assign(grid.points, 0.0);
  }
  return s;
}

FieldState static_winding_state(const Grid& grid, Model model, double p3, int N) {
  FieldState s = uniform_state(grid, model, std::asinh(p3), 0.0);
  const auto xs = grid.coordinates();
  for (std::size_t i = 0; i < grid.points; ++i) s.phi[i] = N * xs[i];
  return s;
}

FieldState sine_wave_state(const Grid& grid, const waves::SineWave& wave, double t) {
  FieldState s;
  s.time = t;
  const auto xs = grid.coordinates();
  const double a = geometry::domain_start(grid.space);
  const auto dg = [&](double xi) { return wave.dg_dxi(xi); };
  double prev = a;
  double g = 0.0;
  for (double x : xs) {
    const double xi = x - wave.v() * t;
    g += phase::integrate(dg, prev, xi);
    prev = xi;
    s.theta.push_back(std::asinh(wave(xi)));
    s.phi.push_back(g);
  }
  return s;
}

FieldState hsm_blowup_state(const Grid& grid, const waves::HsmBlowupParams& params) {
  FieldState s = static_winding_state(grid, Model::HSM, 0.0, params.N());
  s.time = params.t0();
  s.theta_t.assign(grid.points, params.rho());
  return s;
}

FieldState with_ambient(FieldState state) {
  state.psi.clear();
  for (std::size_t i = 0; i < state.theta.size(); ++i)
    state.psi.push_back(geometry::embed({state.theta[i], state.phi[i]}));
  return state;
}

}  // namespace hyperwind::evolution
