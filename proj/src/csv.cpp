#include "hyperwind/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <ostream>

#include "hyperwind/errors.hpp"

namespace hyperwind::csv {

std::string format_number(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string quote(std::string_view cell) {
  if (cell.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(cell);
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

void Writer::header(const std::vector<std::string>& names) { cells(names); }

void Writer::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_number(values[i]);
  }
  out_ << '\n';
}

void Writer::cells(const std::vector<std::string>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << quote(values[i]);
  }
  out_ << '\n';
}

std::size_t Table::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw DomainError("column '" + std::string(name) + "' not found");
  return static_cast<std::size_t>(it - columns.begin());
}

bool Table::has_column(std::string_view name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cell));
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  out.push_back(std::move(cell));
  return out;
}

}  // namespace

Table read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw DomainError(path.string() + " is empty");
  t.columns = split_line(line);
  for (auto& c : t.columns) {
    const auto first = c.find_first_not_of(' ');
    c = first == std::string::npos ? "" : c.substr(first);
  }
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_line(line);
    if (cells.size() != t.columns.size())
      throw DomainError(path.string() + ": row with " + std::to_string(cells.size()) + " cells, header has " +
                        std::to_string(t.columns.size()));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

}  // namespace hyperwind::csv
