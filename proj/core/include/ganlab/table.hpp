#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ganlab {

/// Rectangular numeric table with key/value metadata echoed into the CSV
/// as #-prefixed header comments.
class ResultTable {
 public:
  explicit ResultTable(std::vector<std::string> header);

  void add_row(std::vector<double> row);
  void add_meta(const std::string& key, const std::string& value);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& meta() const { return meta_; }

  int column(const std::string& name) const;  // -1 when absent

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::pair<std::string, std::string>> meta_;
};

/// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double value);

/// Writes comment lines, the column header, then rows; comma separators and
/// newline line endings. Byte-identical output for identical tables.
void write_csv(const ResultTable& table, const std::string& path);

enum class PlotKind {
  LogLogScatter,  // first column x, remaining columns grouped scatter + fit line
  TimeSeries,     // first column time, remaining columns as series
};

/// Derived convenience plot; never feeds back into the CSV contents.
void write_svg(const ResultTable& table, const std::string& path, PlotKind kind);

}  // namespace ganlab
