#include "hyperwind/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <ostream>

#include "hyperwind/errors.hpp"
#include "internal.hpp"

namespace hyperwind::cli {

namespace {

const char* const kCatalogueFlags[] = {"k",  "v",  "N", "xi0", "p1", "p2", "p3",   "xi3",  "B", "q",
                                       "rho", "p0", "c", "R",   "t0", "L",  "xmin", "xmax", "n"};

std::size_t env_threads() {
  if (const char* s = std::getenv("HYPERWIND_THREADS")) {
    try {
      const long n = std::stol(s);
      if (n >= 1) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("HYPERWIND_THREADS must be a positive integer, got '") + s + "'");
  }
  return 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hyperwind: winding travelling waves and evolution on the hyperbolic plane", "hyperwind"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Options opt;
  opt.argv = args;
  std::string config, out_dir;
  long threads = 0;
  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config) sub->add_option("--config", config, "JSON config or manifest.json of an earlier run");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads (default HYPERWIND_THREADS or 1)");
  };

  auto* catalogue = app.add_subcommand("catalogue", "sample a closed-form family to CSV");
  std::string family;
  catalogue->add_option("family", family, "family id")->required();
  std::map<std::string, double> cat_values;
  for (const char* name : kCatalogueFlags) catalogue->add_option(std::string("--") + name, cat_values[name]);
  add_common(catalogue, true);

  auto* simulate = app.add_subcommand("simulate", "evolve initial data and record diagnostics");
  std::string seed_family;
  simulate->add_option("--seed-family", seed_family, "override seed.family");
  add_common(simulate, true);

  auto* scan = app.add_subcommand("scan", "existence scans over parameter grids");
  std::string kind;
  scan->add_option("--kind", kind, "hhm or hsm");
  add_common(scan, true);

  auto* plot = app.add_subcommand("plot", "write a gnuplot script for a CSV table");
  std::string table, preset = "auto", xcol;
  std::vector<std::string> ycols;
  bool svg = false;
  plot->add_option("table", table, "CSV file")->required();
  plot->add_option("--preset", preset, "figure1, energy or auto");
  plot->add_option("--x", xcol, "x column");
  plot->add_option("--y", ycols, "y columns");
  plot->add_flag("--svg", svg, "svg terminal instead of png");
  add_common(plot, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!config.empty()) opt.config = config;
    if (!out_dir.empty()) opt.out = out_dir;
    if (threads < 0) throw UsageError("--threads must be positive");
    opt.threads = threads > 0 ? static_cast<std::size_t>(threads) : env_threads();

    if (catalogue->parsed()) {
      json params = json::object();
      if (opt.config) {
        const json doc = unwrap_manifest(load_json(*opt.config));
        if (doc.contains("family") && doc["family"] != family)
          throw UsageError("config is for family " + doc["family"].dump());
        if (doc.contains("params")) params = doc["params"];
      }
      for (const char* name : kCatalogueFlags)
        if (catalogue->count(std::string("--") + name)) params[name] = cat_values[name];
      return cmd_catalogue(family, params, opt, out, err);
    }
    if (simulate->parsed()) {
      if (!seed_family.empty()) opt.seed_family = seed_family;
      return cmd_simulate(opt, out, err);
    }
    if (scan->parsed()) return cmd_scan(kind, opt, out, err);
    return cmd_plot(table, preset, xcol, ycols, svg, opt, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace hyperwind::cli
