#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gausslab {

// 17 significant digits, '.' decimal, locale-free: the round-trip-exact
// format used for every numeric CSV column.
std::string format_numeric(double v);

// Deterministic CSV assembly: header plus rows, numeric cells already
// formatted.  Content is built in memory so byte-level comparison between
// runs is possible without touching the filesystem.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<std::string>& cells);
  void add_numeric_row(const std::vector<double>& values);

  const std::string& content() const { return content_; }
  void write(const std::string& path) const;

 private:
  size_t columns_;
  std::string content_;
};

// FNV-1a over the raw bytes; stable across platforms and runs.
std::uint64_t stable_hash(const std::string& bytes);

}  // namespace gausslab
