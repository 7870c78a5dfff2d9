#pragma once

// Locale-independent CSV with round-trippable numbers.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hyperwind::csv {

/// Shortest form carrying 17 significant digits, '.' decimal separator.
std::string format_number(double x);

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  /// Mixed row; text cells are quoted when they contain ',', '"' or newlines.
  void cells(const std::vector<std::string>& values);

 private:
  std::ostream& out_;
};

std::string quote(std::string_view cell);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Index of a column; throws DomainError when absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
};

/// Reads a header row and the data rows. Throws DomainError on a missing
/// file or ragged rows.
Table read(const std::filesystem::path& path);

}  // namespace hyperwind::csv
