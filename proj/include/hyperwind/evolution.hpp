#pragma once

// Method-of-lines integration of the HHM and HSM field equations with
// classical RK4 in time.
//
//   HHM polar:   theta_t = 2 sinh(theta) theta_x phi_x + cosh(theta) phi_xx
//                phi_t   = sech(theta) theta_xx + sinh(theta) phi_x^2
//   HHM ambient: psi_t = eta (psi_xx x psi)
//   HSM:         theta_tt - theta_xx = -cosh(theta) sinh(theta) (phi_t^2 - phi_x^2)
//                (cosh^2(theta) phi_t)_t = (cosh^2(theta) phi_x)_x

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hyperwind/derivatives.hpp"
#include "hyperwind/geometry.hpp"
#include "hyperwind/wave_families.hpp"

namespace hyperwind::evolution {

enum class Model { HHM, HSM };
enum class Form { Polar, Ambient };
std::string_view to_string(Model m);
std::string_view to_string(Form f);

/// RK4 is stable for dt * |lambda| up to about 2.8 on the imaginary axis.
inline constexpr double kStabilityLimit = 2.8;

struct SimulationConfig {
  Model model = Model::HHM;
  geometry::Grid grid;
  Scheme scheme = Scheme::Spectral;
  Form form = Form::Polar;  ///< HHM only
  bool renormalize = true;  ///< HHM ambient only
  double dt = 1e-3;
  double T = 1.0;
  std::size_t cadence = 1;  ///< steps between diagnostic records
  double constraint_tol = geometry::kConstraintTol;
  bool check_stability = true;
};

/// One time slice. theta and phi are always present (phi is the lift);
/// theta_t and phi_t for the HSM; psi for the ambient HHM form.
struct FieldState {
  double time = 0.0;
  std::vector<double> theta, phi;
  std::vector<double> theta_t, phi_t;
  std::vector<geometry::HyperboloidPoint> psi;
};

enum class AbortKind { BlowUp, Instability };
std::string_view to_string(AbortKind k);

class SimulationAbort : public std::runtime_error {
 public:
  SimulationAbort(AbortKind kind, double time, const std::string& what)
      : std::runtime_error(what), kind_(kind), time_(time) {}
  AbortKind kind() const noexcept { return kind_; }
  double time() const noexcept { return time_; }

 private:
  AbortKind kind_;
  double time_;
};

struct ProbeSample {
  double x = 0, theta = 0, phi = 0;
};

struct DiagnosticRecord {
  double t = 0;
  /// HHM: integral of (1/2)(cosh^2 theta phi_x^2 - theta_x^2).
  /// HSM: integral of cosh^2 theta (phi_t^2 + phi_x^2) - (theta_t^2 + theta_x^2).
  double energy = 0;
  double energy_half = 0;
  double constraint_residual = 0;
  long winding = 0;
  double delta_phi = 0;
  double theta_max = 0;
  double theta_min = 0;
  std::vector<ProbeSample> probes;
};

struct RunResult {
  std::vector<DiagnosticRecord> records;
  FieldState final_state;
  std::optional<SimulationAbort> abort;
  std::size_t steps = 0;
};

/// dt * |lambda_max| of the semi-discrete operator at this state.
double stability_number(const SimulationConfig& cfg, const FieldState& state);

/// Frozen-coefficient growth rate of the HHM linearisation,
/// max over resolved kappa and x of sqrt(kappa^4 - cosh^2 theta phi_x^2 kappa^2)_+.
double hhm_growth_rate(const SimulationConfig& cfg, const FieldState& state);

DiagnosticRecord diagnose(const SimulationConfig& cfg, const FieldState& state,
                          const std::vector<double>& probe_x = {});

/// Owns the differentiation workspace for repeated steps.
class Integrator {
 public:
  Integrator(SimulationConfig cfg, FieldState initial);
  ~Integrator();
  Integrator(Integrator&&) noexcept;
  Integrator& operator=(Integrator&&) noexcept;

  /// One RK4 step of length dt; throws SimulationAbort.
  void step(double dt);
  FieldState state() const;
  double time() const;
  long winding() const;
  const SimulationConfig& config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

FieldState step_hhm(const FieldState& state, const SimulationConfig& cfg);
FieldState step_hsm(const FieldState& state, const SimulationConfig& cfg);

/// Advances to cfg.T. An abort ends the run early; records up to and
/// including the abort time are kept and `abort` is set. Configuration
/// errors (bad grid, stability bound) throw DomainError.
RunResult run(const SimulationConfig& cfg, const FieldState& initial,
              const std::vector<double>& probe_x = {});

// ---- initial data and exact references -----------------------------------

FieldState uniform_state(const geometry::Grid& grid, Model model, double theta0, double phi0);

/// sinh theta = p3, phi = N x. Exact HHM evolution: phi = N x + p3 N^2 t.
FieldState static_winding_state(const geometry::Grid& grid, Model model, double p3, int N);

/// theta = asinh p(x - v t), phi = g(x - v t) from the sine family, with
/// g(xi) the integral of g' from the left end of the domain.
FieldState sine_wave_state(const geometry::Grid& grid, const waves::SineWave& wave, double t = 0.0);

/// theta = 0, theta_t = rho, phi = N x, phi_t = 0 at t = t0.
FieldState hsm_blowup_state(const geometry::Grid& grid, const waves::HsmBlowupParams& params);

/// Lift to ambient coordinates.
FieldState with_ambient(FieldState state);

}  // namespace hyperwind::evolution
