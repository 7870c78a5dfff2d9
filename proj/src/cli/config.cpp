#include <cmath>
#include <set>

#include "hyperwind/errors.hpp"
#include "internal.hpp"

namespace hyperwind::cli {

namespace {

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }

const json* find(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& obj, const std::string& ptr, const std::string& key,
              std::optional<double> fallback = std::nullopt) {
  const json* v = find(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    throw SchemaError(child(ptr, key), "required number is missing");
  }
  if (!v->is_number()) throw SchemaError(child(ptr, key), "must be a number");
  const double x = v->get<double>();
  if (!std::isfinite(x)) throw SchemaError(child(ptr, key), "must be finite");
  return x;
}

long integer(const json& obj, const std::string& ptr, const std::string& key, std::optional<long> fallback = std::nullopt) {
  const json* v = find(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    throw SchemaError(child(ptr, key), "required integer is missing");
  }
  if (v->is_number_integer()) return v->get<long>();
  if (v->is_number_float()) {
    const double x = v->get<double>();
    if (std::isfinite(x) && x == std::floor(x)) return static_cast<long>(x);
  }
  throw SchemaError(child(ptr, key), "must be an integer");
}

std::string text(const json& obj, const std::string& ptr, const std::string& key,
                 const std::set<std::string>& allowed, std::optional<std::string> fallback = std::nullopt) {
  const json* v = find(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    throw SchemaError(child(ptr, key), "required string is missing");
  }
  if (!v->is_string()) throw SchemaError(child(ptr, key), "must be a string");
  auto s = v->get<std::string>();
  if (!allowed.empty() && !allowed.count(s)) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw SchemaError(child(ptr, key), "'" + s + "' is not one of " + list);
  }
  return s;
}

bool boolean(const json& obj, const std::string& ptr, const std::string& key, bool fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw SchemaError(child(ptr, key), "must be true or false");
  return v->get<bool>();
}

void only_keys(const json& obj, const std::string& ptr, const std::set<std::string>& keys) {
  for (const auto& [k, _] : obj.items())
    if (!keys.count(k)) throw SchemaError(child(ptr, k), "unknown field");
}

json parse_seed(const json& doc, const std::optional<std::string>& override_family, evolution::Model model) {
  const std::string ptr = "/seed";
  json seed = doc.contains("seed") ? doc.at("seed") : json::object();
  if (!seed.is_object()) throw SchemaError(ptr, "must be an object");
  if (override_family) seed["family"] = *override_family;
  const auto family = text(seed, ptr, "family", {"hhm-sine", "static-winding", "hsm-blowup", "uniform"});
  json out;
  out["family"] = family;
  if (family == "hhm-sine") {
    if (model != evolution::Model::HHM) throw SchemaError(child(ptr, "family"), "hhm-sine seeds the HHM only");
    only_keys(seed, ptr, {"family", "k", "v", "N", "xi0"});
    out["k"] = number(seed, ptr, "k");
    out["v"] = number(seed, ptr, "v");
    out["N"] = integer(seed, ptr, "N", 1);
    out["xi0"] = number(seed, ptr, "xi0", 0.0);
  } else if (family == "static-winding") {
    only_keys(seed, ptr, {"family", "p3", "N"});
    out["p3"] = number(seed, ptr, "p3");
    out["N"] = integer(seed, ptr, "N", 1);
  } else if (family == "hsm-blowup") {
    if (model != evolution::Model::HSM) throw SchemaError(child(ptr, "family"), "hsm-blowup seeds the HSM only");
    only_keys(seed, ptr, {"family", "N", "rho", "t0"});
    out["N"] = integer(seed, ptr, "N", 1);
    out["rho"] = number(seed, ptr, "rho", 2.0);
    out["t0"] = number(seed, ptr, "t0", 0.0);
  } else {
    only_keys(seed, ptr, {"family", "theta", "phi"});
    out["theta"] = number(seed, ptr, "theta", 0.0);
    out["phi"] = number(seed, ptr, "phi", 0.0);
  }
  return out;
}

}  // namespace

SimulationSpec parse_simulation(const json& raw, const std::optional<std::string>& seed_family) {
  const json doc = unwrap_manifest(raw);
  if (!doc.is_object()) throw SchemaError("", "config must be a JSON object");
  only_keys(doc, "", {"model", "grid", "scheme", "form", "renormalize", "dt", "T", "cadence",
                      "constraint_tol", "check_stability", "seed", "probes"});
  SimulationSpec spec;
  auto& cfg = spec.cfg;
  const auto model = text(doc, "", "model", {"hhm", "hsm"});
  cfg.model = model == "hhm" ? evolution::Model::HHM : evolution::Model::HSM;

  if (!doc.contains("grid")) throw SchemaError("/grid", "required object is missing");
  const json& grid = doc.at("grid");
  if (!grid.is_object()) throw SchemaError("/grid", "must be an object");
  only_keys(grid, "/grid", {"points", "domain", "half_length"});
  const long points = integer(grid, "/grid", "points");
  if (points <= 0) throw SchemaError("/grid/points", "must be a positive integer");
  const auto domain = text(grid, "/grid", "domain", {"circle", "line"}, "circle");
  cfg.grid.points = static_cast<std::size_t>(points);
  double half_length = geometry::kDefaultHalfLength;
  if (domain == "line") {
    half_length = number(grid, "/grid", "half_length", geometry::kDefaultHalfLength);
    if (!(half_length > 0.0)) throw SchemaError("/grid/half_length", "must be positive");
    cfg.grid.space = geometry::TruncatedLine{half_length};
  } else {
    cfg.grid.space = geometry::Circle{};
  }

  const auto scheme = text(doc, "", "scheme", {"spectral", "fd4"}, "spectral");
  cfg.scheme = scheme == "spectral" ? evolution::Scheme::Spectral : evolution::Scheme::FourthOrderCentered;
  if (cfg.scheme == evolution::Scheme::FourthOrderCentered && points < 5)
    throw SchemaError("/grid/points", "the fd4 scheme needs at least 5 points");
  const auto form = text(doc, "", "form", {"polar", "ambient"}, "polar");
  cfg.form = form == "polar" ? evolution::Form::Polar : evolution::Form::Ambient;
  if (cfg.model == evolution::Model::HSM && cfg.form == evolution::Form::Ambient)
    throw SchemaError("/form", "the ambient form is available for the HHM only");
  cfg.renormalize = boolean(doc, "", "renormalize", true);
  cfg.dt = number(doc, "", "dt");
  if (!(cfg.dt > 0.0)) throw SchemaError("/dt", "must be positive");
  cfg.T = number(doc, "", "T");
  if (!(cfg.T >= 0.0)) throw SchemaError("/T", "must be non-negative");
  const long cadence = integer(doc, "", "cadence", 1);
  if (cadence <= 0) throw SchemaError("/cadence", "must be a positive integer");
  cfg.cadence = static_cast<std::size_t>(cadence);
  cfg.constraint_tol = number(doc, "", "constraint_tol", geometry::kConstraintTol);
  if (!(cfg.constraint_tol > 0.0)) throw SchemaError("/constraint_tol", "must be positive");
  cfg.check_stability = boolean(doc, "", "check_stability", true);

  spec.seed = parse_seed(doc, seed_family, cfg.model);

  if (doc.contains("probes")) {
    const json& probes = doc.at("probes");
    if (!probes.is_array()) throw SchemaError("/probes", "must be an array of numbers");
    for (std::size_t i = 0; i < probes.size(); ++i) {
      if (!probes[i].is_number()) throw SchemaError("/probes/" + std::to_string(i), "must be a number");
      spec.probes.push_back(probes[i].get<double>());
    }
  }

  json& r = spec.resolved;
  r["model"] = model;
  r["grid"] = {{"points", points}, {"domain", domain}};
  if (domain == "line") r["grid"]["half_length"] = half_length;
  r["scheme"] = scheme;
  r["form"] = form;
  r["renormalize"] = cfg.renormalize;
  r["dt"] = cfg.dt;
  r["T"] = cfg.T;
  r["cadence"] = cfg.cadence;
  r["constraint_tol"] = cfg.constraint_tol;
  r["check_stability"] = cfg.check_stability;
  r["seed"] = spec.seed;
  r["probes"] = spec.probes;
  return spec;
}

evolution::FieldState build_seed(const SimulationSpec& spec) {
  const auto& s = spec.seed;
  const auto& grid = spec.cfg.grid;
  const auto family = s.at("family").get<std::string>();
  try {
    evolution::FieldState state;
    if (family == "hhm-sine") {
      const waves::SineWave wave(s.at("k").get<double>(), s.at("v").get<double>(), s.at("N").get<int>(),
                                 s.at("xi0").get<double>());
      state = evolution::sine_wave_state(grid, wave);
    } else if (family == "static-winding") {
      state = evolution::static_winding_state(grid, spec.cfg.model, s.at("p3").get<double>(), s.at("N").get<int>());
    } else if (family == "hsm-blowup") {
      const waves::HsmBlowupParams params(s.at("N").get<int>(), s.at("rho").get<double>(), s.at("t0").get<double>());
      state = evolution::hsm_blowup_state(grid, params);
    } else {
      state = evolution::uniform_state(grid, spec.cfg.model, s.at("theta").get<double>(), s.at("phi").get<double>());
    }
    if (spec.cfg.model == evolution::Model::HHM && spec.cfg.form == evolution::Form::Ambient)
      state = evolution::with_ambient(std::move(state));
    return state;
  } catch (const DomainError& e) {
    throw SchemaError("/seed", e.what());
  }
}

}  // namespace hyperwind::cli
