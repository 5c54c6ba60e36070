#pragma once

#include <string>
#include <vector>

#include "fgbc/gbc.hpp"

namespace fgbc {

/// Rows of preformatted cells; rendered as CSV or whitespace .dat.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  std::string csv() const;
  /// gnuplot-ready: '#' header line, space separated columns.
  std::string dat() const;
};

/// Round-trip formatting of a double.
std::string num(double x);

std::string to_json(const GbcReport& r);
std::string to_json(const CorollaryReport& r);
std::string to_json(const PointwiseReport& r);
std::string to_json(const HopfResult& r);
std::string to_json(const std::vector<ZeroTable>& tables);

Table zero_table(const std::vector<ZeroTable>& tables);
Table lhs_table(const GbcReport& r);
Table pointwise_table(const PointwiseReport& r);

/// Writes a file, creating parent directories.
void write_file(const std::string& path, const std::string& content);

}  // namespace fgbc
