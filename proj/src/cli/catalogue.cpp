#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <numbers>
#include <ostream>

#include "hyperwind/csv.hpp"
#include "hyperwind/elliptic.hpp"
#include "hyperwind/errors.hpp"
#include "hyperwind/reduction.hpp"
#include "hyperwind/wave_families.hpp"
#include "internal.hpp"

namespace hyperwind::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct Sampled {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Family {
  std::map<std::string, double> defaults;
  /// Default sample range given the resolved parameters.
  std::function<std::pair<double, double>(const std::map<std::string, double>&)> range;
  std::size_t default_n = 201;
  std::vector<std::string> columns;
  /// Validates and returns the per-sample evaluator.
  std::function<std::function<std::vector<double>(double)>(const std::map<std::string, double>&,
                                                          std::pair<double, double>)>
      prepare;
};

int as_int(double x, const char* name) {
  if (x != std::floor(x)) throw UsageError(std::string(name) + " must be an integer");
  return static_cast<int>(x);
}

std::pair<double, double> circle_range(const std::map<std::string, double>&) { return {-kPi, kPi}; }
std::pair<double, double> line_range(const std::map<std::string, double>&) { return {-10.0, 10.0}; }

const std::map<std::string, Family>& families() {
  static const std::map<std::string, Family> table = [] {
    std::map<std::string, Family> f;
    f["hhm-sine"] = {{{"k", 2.0}, {"v", 1.0}, {"N", 1.0}, {"xi0", 0.0}},
                     circle_range, 201, {"xi", "value", "theta", "dg_dxi"},
                     [](const auto& p, auto) {
                       const waves::SineWave w(p.at("k"), p.at("v"), as_int(p.at("N"), "N"), p.at("xi0"));
                       return std::function<std::vector<double>(double)>([w](double xi) {
                         const double val = w(xi);
                         return std::vector<double>{xi, val, std::asinh(val), w.dg_dxi(xi)};
                       });
                     }};
    f["hhm-phase"] = {{{"k", 2.0}, {"v", 0.7}},
                      circle_range, 201, {"xi", "value", "re_xi_loop", "im_xi_loop"},
                      [](const auto& p, auto) {
                        const auto pc = waves::PhaseClosedFormParams::make(p.at("k"), p.at("v"));
                        waves::hhm_phase_closed_form(pc, 0.0);
                        return std::function<std::vector<double>(double)>([pc](double xi) {
                          const auto X = waves::phase_loop(pc, xi);
                          return std::vector<double>{xi, waves::hhm_phase_closed_form(pc, xi), X.real(), X.imag()};
                        });
                      }};
    f["hhm-cnoidal"] = {{{"p1", 0.5}, {"p2", 0.0}, {"p3", -2.0}, {"xi3", 0.0}},
                        [](const auto& p) {
                          const waves::CnoidalWave w(p.at("p1"), p.at("p2"), p.at("p3"), p.at("xi3"));
                          return std::pair{p.at("xi3") - w.period(), p.at("xi3") + w.period()};
                        },
                        201, {"xi", "value", "dg_dxi"},
                        [](const auto& p, auto) {
                          const waves::CnoidalWave w(p.at("p1"), p.at("p2"), p.at("p3"), p.at("xi3"));
                          return std::function<std::vector<double>(double)>([w](double xi) {
                            const double val = w(xi);
                            return std::vector<double>{xi, val, waves::hhm_dg_dxi(val, w.params().k, w.params().v)};
                          });
                        }};
    f["hhm-sech"] = {{{"p1", 0.0}, {"p3", -2.0}, {"xi0", 0.0}},
                     line_range, 201, {"xi", "value", "dg_dxi"},
                     [](const auto& p, auto) {
                       const auto w = waves::SechWave::make(p.at("p1"), p.at("p3"), p.at("xi0"));
                       return std::function<std::vector<double>(double)>([w](double xi) {
                         const double val = w(xi);
                         return std::vector<double>{xi, val, waves::hhm_dg_dxi(val, w.params.k, w.params.v)};
                       });
                     }};
    f["hhm-hamiltonian-profile"] = {{},
                                    line_range, 1001, {"X", "value", "plateau"},
                                    [](const auto&, auto) {
                                      return std::function<std::vector<double>(double)>([](double X) {
                                        return std::vector<double>{X, waves::hhm_hamiltonian_profile(X),
                                                                   waves::hhm_hamiltonian_plateau()};
                                      });
                                    }};
    f["hsm-blowup"] = {{{"N", 1.0}, {"rho", 2.0}, {"t0", 0.0}},
                       [](const auto& p) {
                         const waves::HsmBlowupParams b(as_int(p.at("N"), "N"), p.at("rho"), p.at("t0"));
                         return std::pair{b.t0(), b.t0() + 0.99 * (b.blowup_time() - b.t0())};
                       },
                       201, {"t", "value", "theta_t", "energy"},
                       [](const auto& p, std::pair<double, double> r) {
                         const waves::HsmBlowupParams b(as_int(p.at("N"), "N"), p.at("rho"), p.at("t0"));
                         if (r.first < b.t0() || r.second >= b.blowup_time())
                           throw UsageError("sample range must lie in [t0, t*) with t* = " +
                                            csv::format_number(b.blowup_time()));
                         return std::function<std::vector<double>(double)>([b](double t) {
                           return std::vector<double>{t, waves::hsm_blowup_theta(b, t),
                                                      waves::hsm_blowup_theta_dot(b, t), waves::hsm_blowup_energy(b, t)};
                         });
                       }};
    f["hsm-sine"] = {{{"B", 2.0}, {"N", 1.0}, {"xi0", 0.0}},
                     circle_range, 201, {"xi", "value", "dg_dxi"},
                     [](const auto& p, auto) {
                       const double B = p.at("B");
                       const int N = as_int(p.at("N"), "N");
                       const double xi0 = p.at("xi0");
                       waves::hsm_sine(B, N, xi0, 0.0);
                       return std::function<std::vector<double>(double)>([=](double xi) {
                         const double val = waves::hsm_sine(B, N, xi0, xi);
                         return std::vector<double>{xi, val, waves::hsm_sine_dg_dxi(B, val)};
                       });
                     }};
    auto jk = [](const std::map<std::string, double>& p) {
      const auto m = reduction::match_JK(p.at("q"), p.at("rho"));
      if (const auto* bad = std::get_if<reduction::Inadmissible>(&m)) throw UsageError("inadmissible: " + bad->reason);
      const auto& ok = std::get<reduction::JKMatch>(m);
      return std::pair{std::sqrt(ok.j_squared), std::sqrt(ok.k_squared)};
    };
    f["hsm-elliptic"] = {{{"q", -4.0}, {"rho", 1.0}, {"v", 2.0}, {"xi0", 0.0}},
                         [jk](const auto& p) {
                           const auto [J, K] = jk(p);
                           const double period = waves::hsm_elliptic_period(J, K, 1.0, p.at("v"));
                           return std::pair{p.at("xi0") - 0.5 * period, p.at("xi0") + 0.5 * period};
                         },
                         201, {"xi", "value"},
                         [jk](const auto& p, auto) {
                           const auto [J, K] = jk(p);
                           const double v = p.at("v"), xi0 = p.at("xi0");
                           waves::hsm_elliptic(J, K, 1.0, v, xi0, xi0);
                           return std::function<std::vector<double>(double)>([=](double xi) {
                             return std::vector<double>{xi, waves::hsm_elliptic(J, K, 1.0, v, xi0, xi)};
                           });
                         }};
    f["hsm-tanh"] = {{{"p0", 1.0}, {"c", 1.0}, {"v", 2.0}, {"R", 0.0}, {"xi0", 0.0}},
                     line_range, 201, {"xi", "value", "dg_dxi"},
                     [](const auto& p, auto) {
                       const double p0 = p.at("p0"), c = p.at("c"), v = p.at("v"), R = p.at("R"), xi0 = p.at("xi0");
                       waves::hsm_tanh_asymptotic_slope(p0, c, v, R);
                       return std::function<std::vector<double>(double)>([=](double xi) {
                         return std::vector<double>{xi, waves::hsm_tanh(p0, c, v, xi0, xi),
                                                    waves::hsm_tanh_dg_dxi(p0, c, v, R, xi - xi0)};
                       });
                     }};
    return f;
  }();
  return table;
}

}  // namespace

int cmd_catalogue(const std::string& family_id, json params, const Options& opt, std::ostream& out,
                  std::ostream& err) {
  const auto& table = families();
  const auto it = table.find(family_id);
  if (it == table.end()) {
    std::string list;
    for (const auto& [name, _] : table) list += (list.empty() ? "" : ", ") + name;
    throw UsageError("unknown family '" + family_id + "'; known: " + list);
  }
  const Family& fam = it->second;

  std::map<std::string, double> p = fam.defaults;
  std::optional<double> xmin, xmax;
  std::size_t n = fam.default_n;
  for (const auto& [key, value] : params.items()) {
    if (!value.is_number()) throw UsageError("parameter " + key + " must be a number");
    const double x = value.get<double>();
    if (key == "xmin") xmin = x;
    else if (key == "xmax") xmax = x;
    else if (key == "n") {
      if (x < 1 || x != std::floor(x)) throw UsageError("n must be a positive integer");
      n = static_cast<std::size_t>(x);
    } else if (fam.defaults.count(key)) p[key] = x;
    else throw UsageError("family " + family_id + " takes no parameter " + key);
  }

  const auto start = std::chrono::steady_clock::now();
  Sampled s;
  s.columns = fam.columns;
  std::pair<double, double> range;
  try {
    range = fam.range(p);
    if (xmin) range.first = *xmin;
    if (xmax) range.second = *xmax;
    if (!(range.second >= range.first)) throw UsageError("xmax must not be below xmin");
    const auto eval = fam.prepare(p, range);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = n == 1 ? range.first
                              : range.first + (range.second - range.first) * static_cast<double>(i) /
                                                  static_cast<double>(n - 1);
      s.rows.push_back(eval(x));
    }
  } catch (const DomainError& e) {
    throw UsageError(family_id + ": " + e.what());
  } catch (const BlowUpError& e) {
    throw UsageError(family_id + ": " + e.what());
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  auto emit = [&](std::ostream& os) {
    csv::Writer w(os);
    w.header(s.columns);
    for (const auto& row : s.rows) w.row(row);
  };

  json resolved;
  resolved["family"] = family_id;
  resolved["params"] = json::object();
  for (const auto& [k, v] : p) resolved["params"][k] = v;
  resolved["params"]["xmin"] = range.first;
  resolved["params"]["xmax"] = range.second;
  resolved["params"]["n"] = n;

  if (!opt.out) {
    emit(out);
    return kExitOk;
  }
  const fs::path dir = prepare_out(*opt.out);
  const std::string name = "catalogue_" + family_id + ".csv";
  std::ofstream file(dir / name);
  emit(file);
  if (!file) throw UsageError("cannot write " + (dir / name).string());
  write_manifest(dir, {"catalogue", resolved, json{{"family", family_id}}, {name}}, opt, wall);
  err << "wrote " << (dir / name).string() << "\n";
  return kExitOk;
}

}  // namespace hyperwind::cli
