#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "l0lms/cli/csv.hpp"

namespace l0lms::cli {

struct ComparePoint {
  std::string key;  // grid value, first column
  double theory = 0.0;
  double sim = 0.0;
  double gap_db = 0.0;  // 10 log10(sim / theory)
};

struct CompareReport {
  std::string key_column;
  std::vector<ComparePoint> points;
  /// Grid points with an empty or non-positive value on either side.
  std::vector<std::string> unusable;
  double max_abs_gap_db = 0.0;
  double mean_gap_db = 0.0;
  double tolerance_db = 0.0;
  bool pass = false;
};

/// Joins the two tables on their first column.  The theory side reads
/// msd_theory (else msd_sim), the sim side reads msd_sim (else msd_theory);
/// a column with no values counts as absent.
/// Throws ConfigError listing the grid points missing from either file.
/// Unusable points make the comparison fail.
CompareReport compare(const CsvTable& theory, const CsvTable& sim, double tolerance_db);

void print_report(std::ostream& os, const CompareReport& r);

}  // namespace l0lms::cli
