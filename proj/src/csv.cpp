#include "lm05/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace lm05 {

namespace {

void check_field(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty csv field");
  if (s.find_first_of(",\r\n\"") != std::string::npos)
    throw std::invalid_argument("csv field needs quoting: " + s);
}

std::string cell_text(const CsvCell& cell) {
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* v = std::get_if<double>(&cell)) return format_value(*v);
  const auto& s = std::get<std::string>(cell);
  check_field(s);
  return s;
}

}  // namespace

std::string format_value(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite value in output");
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  if (res.ec != std::errc())
    throw std::domain_error("value formatting failed");
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw std::invalid_argument("empty csv header");
  for (const auto& h : header_) check_field(h);
}

void CsvTable::add_row(const std::vector<CsvCell>& cells) {
  if (cells.size() != header_.size())
    throw std::invalid_argument("csv row width does not match header");
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cell_text(cells[i]);
  }
  rows_.push_back(std::move(line));
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& r : rows_) {
    out += r;
    out += '\n';
  }
  return out;
}

void CsvTable::write_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  const std::string data = str();
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace lm05
