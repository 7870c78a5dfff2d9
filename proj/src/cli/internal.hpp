#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperwind/cli.hpp"
#include "hyperwind/evolution.hpp"

namespace hyperwind::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

/// Bad flags, bad config or inadmissible parameters: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Config field failing validation, located by JSON pointer.
class SchemaError : public UsageError {
 public:
  SchemaError(const std::string& pointer, const std::string& what)
      : UsageError("schema error at " + (pointer.empty() ? std::string("/") : pointer) + ": " + what),
        pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::size_t kMaxScanTuples = 100000000;

struct Options {
  std::optional<fs::path> config;
  std::optional<fs::path> out;
  std::size_t threads = 1;
  std::optional<std::string> seed_family;
  std::vector<std::string> argv;
};

json load_json(const fs::path& path);
/// A manifest carries the resolved config under "config"; plain configs pass through.
json unwrap_manifest(const json& doc);

struct Manifest {
  std::string command;
  json config;
  json seed;
  std::vector<std::string> outputs;
};
void write_manifest(const fs::path& dir, const Manifest& m, const Options& opt, double wall_seconds);

/// Output directory, created if needed.
fs::path prepare_out(const fs::path& dir);

// ---- simulation config --------------------------------------------------

struct SimulationSpec {
  evolution::SimulationConfig cfg;
  json seed;
  std::vector<double> probes;
  json resolved;
};

SimulationSpec parse_simulation(const json& doc, const std::optional<std::string>& seed_family);
evolution::FieldState build_seed(const SimulationSpec& spec);

// ---- commands ---------------------------------------------------------------

/// params: family parameters and the sample spec (xmin, xmax, n).
int cmd_catalogue(const std::string& family, json params, const Options& opt, std::ostream& out,
                  std::ostream& err);
int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_scan(const std::string& kind, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_plot(const fs::path& table, const std::string& preset, const std::string& x,
             const std::vector<std::string>& y, bool svg, const Options& opt, std::ostream& out,
             std::ostream& err);

}  // namespace hyperwind::cli
