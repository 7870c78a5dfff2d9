#include <chrono>
#include <fstream>
#include <ostream>

#include "hyperwind/csv.hpp"
#include "hyperwind/errors.hpp"
#include "internal.hpp"

namespace hyperwind::cli {

namespace {

std::string gp_string(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') out += '\'';
    out += ch;
  }
  return out + "'";
}

}  // namespace

int cmd_plot(const fs::path& table_path, const std::string& preset, const std::string& x_flag,
             const std::vector<std::string>& y_flag, bool svg, const Options& opt, std::ostream& out,
             std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  csv::Table table;
  try {
    table = csv::read(table_path);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (table.columns.size() < 2) throw UsageError(table_path.string() + " needs at least two columns");

  std::string x = x_flag;
  std::vector<std::string> y = y_flag;
  std::string title;
  if (preset == "figure1") {
    if (x.empty()) x = "X";
    if (y.empty()) {
      y = {"value"};
      if (table.has_column("plateau")) y.push_back("plateau");
    }
    title = "Hamiltonian density profile";
  } else if (preset == "energy") {
    if (x.empty()) x = "t";
    if (y.empty()) y = {"energy"};
    title = "energy";
  } else if (preset == "auto") {
    if (x.empty()) x = table.columns.front();
    if (y.empty())
      for (const auto& c : table.columns)
        if (c != x) y.push_back(c);
    title = table_path.filename().string();
  } else {
    throw UsageError("unknown preset '" + preset + "'; known: figure1, energy, auto");
  }

  std::vector<std::size_t> ycols;
  std::size_t xcol = 0;
  try {
    xcol = table.column(x);
    for (const auto& name : y) ycols.push_back(table.column(name));
  } catch (const DomainError& e) {
    throw UsageError(table_path.string() + ": " + e.what());
  }

  const fs::path dir = opt.out ? prepare_out(*opt.out) : table_path.parent_path().empty() ? fs::path(".")
                                                                                          : table_path.parent_path();
  const std::string stem = table_path.stem().string();
  const std::string script_name = stem + ".gp";
  const std::string image_name = stem + (svg ? ".svg" : ".png");
  const fs::path data = fs::absolute(table_path);

  std::ofstream gp(dir / script_name);
  gp << "# gnuplot script; data is read from the CSV at plot time\n";
  gp << (svg ? "set terminal svg size 800,500\n" : "set terminal pngcairo size 800,500\n");
  gp << "set output " << gp_string((dir / image_name).string()) << "\n";
  gp << "set datafile separator ','\n";
  gp << "set datafile commentschars '#'\n";
  gp << "set key autotitle columnhead\n";
  gp << "set title " << gp_string(title) << "\n";
  gp << "set xlabel " << gp_string(x) << "\n";
  gp << "set grid\n";
  gp << "plot ";
  for (std::size_t i = 0; i < ycols.size(); ++i) {
    if (i) gp << ", \\\n     ";
    gp << gp_string(data.string()) << " using " << xcol + 1 << ":" << ycols[i] + 1 << " with lines";
  }
  gp << "\n";
  if (!gp) throw UsageError("cannot write " + (dir / script_name).string());

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json resolved{{"table", data.string()}, {"preset", preset}, {"x", x}, {"y", y}, {"svg", svg}};
  if (opt.out) write_manifest(dir, {"plot", resolved, json(nullptr), {script_name}}, opt, wall);
  out << (dir / script_name).string() << "\n";
  err << "run: gnuplot " << (dir / script_name).string() << "\n";
  return kExitOk;
}

}  // namespace hyperwind::cli
