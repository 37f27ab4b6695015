#include "gausslab/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace gausslab {

std::string format_numeric(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  if (header.empty()) throw std::invalid_argument("csv: empty header");
  for (size_t i = 0; i < header.size(); ++i) {
    if (i > 0) content_ += ',';
    content_ += header[i];
  }
  content_ += '\n';
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw std::invalid_argument("csv: row width does not match header");
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) content_ += ',';
    content_ += cells[i];
  }
  content_ += '\n';
}

void CsvTable::add_numeric_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_numeric(v));
  add_row(cells);
}

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("csv: cannot open " + path);
  out << content_;
}

std::uint64_t stable_hash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace gausslab
