#include <chrono>
#include <fstream>
#include <ostream>

#include "hyperwind/csv.hpp"
#include "hyperwind/errors.hpp"
#include "internal.hpp"

namespace hyperwind::cli {

namespace {

void write_diagnostics(const fs::path& path, const evolution::RunResult& res, std::size_t probes) {
  std::ofstream file(path);
  csv::Writer w(file);
  std::vector<std::string> header{"t", "energy", "constraint_residual", "winding", "theta_max",
                                  "energy_half", "theta_min", "delta_phi"};
  for (std::size_t i = 0; i < probes; ++i) {
    header.push_back("probe" + std::to_string(i) + "_theta");
    header.push_back("probe" + std::to_string(i) + "_phi");
  }
  w.header(header);
  for (const auto& r : res.records) {
    std::vector<double> row{r.t, r.energy, r.constraint_residual, static_cast<double>(r.winding),
                            r.theta_max, r.energy_half, r.theta_min, r.delta_phi};
    for (const auto& p : r.probes) {
      row.push_back(p.theta);
      row.push_back(p.phi);
    }
    w.row(row);
  }
  if (!file) throw UsageError("cannot write " + path.string());
}

void write_final_state(const fs::path& path, const evolution::SimulationConfig& cfg,
                       const evolution::FieldState& s) {
  std::ofstream file(path);
  csv::Writer w(file);
  std::vector<std::string> header{"x", "theta", "phi"};
  const bool velocities = !s.theta_t.empty();
  const bool ambient = !s.psi.empty();
  if (velocities) header.insert(header.end(), {"theta_t", "phi_t"});
  if (ambient) header.insert(header.end(), {"psi1", "psi2", "psi3"});
  w.header(header);
  const auto xs = cfg.grid.coordinates();
  for (std::size_t i = 0; i < s.theta.size(); ++i) {
    std::vector<double> row{xs[i], s.theta[i], s.phi[i]};
    if (velocities) row.insert(row.end(), {s.theta_t[i], s.phi_t[i]});
    if (ambient) row.insert(row.end(), {s.psi[i].psi1, s.psi[i].psi2, s.psi[i].psi3});
    w.row(row);
  }
  if (!file) throw UsageError("cannot write " + path.string());
}

}  // namespace

int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  if (!opt.config) throw UsageError("simulate needs --config <file>");
  const auto spec = parse_simulation(load_json(*opt.config), opt.seed_family);
  const auto seed = build_seed(spec);
  const fs::path dir = prepare_out(opt.out.value_or("."));

  const auto start = std::chrono::steady_clock::now();
  evolution::RunResult res;
  try {
    res = evolution::run(spec.cfg, seed, spec.probes);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  write_diagnostics(dir / "diagnostics.csv", res, spec.probes.size());
  write_final_state(dir / "final_state.csv", spec.cfg, res.final_state);
  write_manifest(dir, {"simulate", spec.resolved, spec.seed, {"diagnostics.csv", "final_state.csv"}}, opt, wall);

  const auto& last = res.records.back();
  out << "steps: " << res.steps << "\n"
      << "t_final: " << csv::format_number(last.t) << "\n"
      << "winding: " << last.winding << "\n";
  if (res.abort) {
    out << "abort: " << evolution::to_string(res.abort->kind()) << " at t = "
        << csv::format_number(res.abort->time()) << "\n";
    err << "simulation aborted: " << res.abort->what() << "\n";
    return kExitAbort;
  }
  return kExitOk;
}

}  // namespace hyperwind::cli
