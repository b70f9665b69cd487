#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace lm05 {

// 12 significant digits, locale-independent ('.' decimal point), identical
// bytes for identical values.  Throws std::domain_error on non-finite input.
std::string format_value(double v);

using CsvCell = std::variant<long long, double, std::string>;

// Fixed-header table; every row must match the header width and contain only
// finite numbers.  Rows are emitted in insertion order, so callers generate
// them in the documented sort order.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<CsvCell>& cells);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;
  void write_file(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::string> rows_;
};

}  // namespace lm05
