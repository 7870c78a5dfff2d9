#include <fstream>

#include "internal.hpp"

namespace hyperwind::cli {

json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path.string() + ": invalid JSON: " + e.what());
  }
}

json unwrap_manifest(const json& doc) {
  if (doc.is_object() && doc.contains("command") && doc.contains("config")) return doc.at("config");
  return doc;
}

fs::path prepare_out(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_manifest(const fs::path& dir, const Manifest& m, const Options& opt, double wall_seconds) {
  json doc;
  doc["command"] = m.command;
  doc["config"] = m.config;
  doc["seed"] = m.seed;
  doc["outputs"] = m.outputs;
  doc["version"] = kVersion;
  doc["threads"] = opt.threads;
  doc["argv"] = opt.argv;
  doc["wall_clock_seconds"] = wall_seconds;
  std::ofstream out(dir / "manifest.json");
  out << doc.dump(2) << '\n';
  if (!out) throw UsageError("cannot write " + (dir / "manifest.json").string());
}

}  // namespace hyperwind::cli
