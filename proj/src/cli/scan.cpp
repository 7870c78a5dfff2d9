#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "hyperwind/csv.hpp"
#include "hyperwind/polynomial.hpp"
#include "hyperwind/reduction.hpp"
#include "internal.hpp"

namespace hyperwind::cli {

namespace {

using reduction::Axis;

Axis parse_axis(const json& doc, const std::string& name, Axis fallback) {
  if (!doc.contains(name)) return fallback;
  const json& a = doc.at(name);
  const std::string ptr = "/" + name;
  if (!a.is_object()) throw SchemaError(ptr, "expected {min, max, n}");
  for (const auto& [key, _] : a.items())
    if (key != "min" && key != "max" && key != "n") throw SchemaError(ptr + "/" + key, "unknown key");
  Axis out = fallback;
  if (a.contains("min")) {
    if (!a["min"].is_number()) throw SchemaError(ptr + "/min", "expected a number");
    out.lo = a["min"].get<double>();
  }
  if (a.contains("max")) {
    if (!a["max"].is_number()) throw SchemaError(ptr + "/max", "expected a number");
    out.hi = a["max"].get<double>();
  }
  if (a.contains("n")) {
    if (!a["n"].is_number_integer() || a["n"].get<long long>() < 1)
      throw SchemaError(ptr + "/n", "expected a positive integer");
    out.n = a["n"].get<std::size_t>();
  }
  if (!std::isfinite(out.lo) || !std::isfinite(out.hi) || out.hi < out.lo)
    throw SchemaError(ptr, "need finite min <= max");
  return out;
}

json axis_json(const Axis& a) { return {{"min", a.lo}, {"max", a.hi}, {"n", a.n}}; }

std::size_t checked_product(std::initializer_list<std::size_t> ns) {
  long double total = 1;
  for (auto n : ns) total *= static_cast<long double>(n);
  if (total > static_cast<long double>(kMaxScanTuples))
    throw UsageError("scan of " + csv::format_number(static_cast<double>(total)) +
                     " tuples exceeds the limit of " + std::to_string(kMaxScanTuples));
  return static_cast<std::size_t>(total);
}

double parse_tol(const json& doc) {
  if (!doc.contains("tol")) return reduction::kDefaultRootTol;
  if (!doc["tol"].is_number() || !(doc["tol"].get<double>() > 0)) throw SchemaError("/tol", "expected a positive number");
  return doc["tol"].get<double>();
}

std::string case_cell(char c) { return c ? std::string(1, c) : std::string(); }

}  // namespace

int cmd_scan(const std::string& kind_flag, const Options& opt, std::ostream& out, std::ostream& err) {
  json doc = opt.config ? unwrap_manifest(load_json(*opt.config)) : json::object();
  if (!doc.is_object()) throw SchemaError("", "expected an object");
  std::string kind = kind_flag;
  if (kind.empty()) kind = doc.contains("kind") ? doc["kind"].get<std::string>() : "hhm";
  if (kind != "hhm" && kind != "hsm") throw UsageError("scan kind must be hhm or hsm, got '" + kind + "'");

  const std::set<std::string> allowed =
      kind == "hhm" ? std::set<std::string>{"kind", "k", "v", "c", "Q", "tol"}
                    : std::set<std::string>{"kind", "q", "rho", "tol"};
  for (const auto& [key, _] : doc.items())
    if (!allowed.count(key)) throw SchemaError("/" + key, "unknown key for a " + kind + " scan");

  const auto start = std::chrono::steady_clock::now();
  std::ostringstream table;
  csv::Writer w(table);
  json resolved{{"kind", kind}};
  std::vector<std::string> summary;

  if (kind == "hhm") {
    reduction::HhmScanSpec spec;
    spec.k = parse_axis(doc, "k", {-3, 3, 10});
    spec.v = parse_axis(doc, "v", {-3, 3, 10});
    spec.c = parse_axis(doc, "c", {-2, 2, 10});
    spec.Q = parse_axis(doc, "Q", {-2, 2, 10});
    spec.tol = parse_tol(doc);
    spec.threads = opt.threads;
    checked_product({spec.k.n, spec.v.n, spec.c.n, spec.Q.n});
    resolved["k"] = axis_json(spec.k);
    resolved["v"] = axis_json(spec.v);
    resolved["c"] = axis_json(spec.c);
    resolved["Q"] = axis_json(spec.Q);
    resolved["tol"] = spec.tol;

    const auto report = reduction::winding_feasibility_scan(spec);
    w.header({"k", "v", "c", "Q", "root_kind", "verdict", "case", "feasible_on_R", "winding_on_circle"});
    for (const auto& r : report.rows)
      w.cells({csv::format_number(r.k), csv::format_number(r.v), csv::format_number(r.c), csv::format_number(r.Q),
               std::string(reduction::to_string(r.kind)), std::string(reduction::to_string(r.verdict)),
               case_cell(r.case_letter), r.feasible_on_R ? "1" : "0", r.winding_on_circle ? "1" : "0"});
    summary.push_back("tuples: " + std::to_string(report.rows.size()));
    summary.push_back("no_winding_on_R: " + std::to_string(report.no_winding_on_R));
    summary.push_back("inadmissible: " + std::to_string(report.inadmissible));
    for (int i = 0; i < 6; ++i)
      summary.push_back(std::string("case_") + static_cast<char>('a' + i) + ": " + std::to_string(report.by_case[i]));
    summary.push_back("feasible_on_R: " + std::to_string(report.feasible_on_R));
    summary.push_back("winding_on_circle: " + std::to_string(report.winding_on_circle));
  } else {
    reduction::HsmScanSpec spec;
    spec.q = parse_axis(doc, "q", {-6, 0, 200});
    spec.rho = parse_axis(doc, "rho", {-1, 1, 200});
    spec.tol = parse_tol(doc);
    spec.threads = opt.threads;
    checked_product({spec.q.n, spec.rho.n});
    resolved["q"] = axis_json(spec.q);
    resolved["rho"] = axis_json(spec.rho);
    resolved["tol"] = spec.tol;

    const auto report = reduction::hsm_jk_scan(spec);
    w.header({"q", "rho", "admissible", "failed_condition", "J2", "K2", "root_kind", "line_profile"});
    for (const auto& r : report.rows)
      w.cells({csv::format_number(r.q), csv::format_number(r.rho), r.admissible ? "1" : "0",
               std::to_string(r.failed_condition), csv::format_number(r.j_squared), csv::format_number(r.k_squared),
               std::string(reduction::to_string(r.kind)), std::string(reduction::to_string(r.line_profile))});
    summary.push_back("tuples: " + std::to_string(report.rows.size()));
    summary.push_back("admissible: " + std::to_string(report.admissible));
    summary.push_back("tanh_kink: " + std::to_string(report.tanh_kink));
    summary.push_back("periodic: " + std::to_string(report.periodic));
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (const auto& line : summary) table << "# " << line << '\n';

  if (!opt.out) {
    out << table.str();
    return kExitOk;
  }
  const fs::path dir = prepare_out(*opt.out);
  const std::string name = "scan_" + kind + ".csv";
  std::ofstream file(dir / name);
  file << table.str();
  if (!file) throw UsageError("cannot write " + (dir / name).string());
  write_manifest(dir, {"scan", resolved, json(nullptr), {name}}, opt, wall);
  for (const auto& line : summary) out << line << '\n';
  err << "wrote " << (dir / name).string() << "\n";
  return kExitOk;
}

}  // namespace hyperwind::cli
