#include "l0lms/cli/compare.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "l0lms/cli/config.hpp"

namespace l0lms::cli {

namespace {

bool has_values(const CsvTable& t, std::size_t col) {
  for (const auto& row : t.rows) {
    if (col < row.size() && !row[col].empty()) return true;
  }
  return false;
}

// A column that exists but is empty throughout (msd_sim of a theory-only run)
// yields to the fallback.
std::size_t value_column(const CsvTable& t, const char* preferred, const char* fallback) {
  const auto p = t.find_column(preferred);
  const auto f = t.find_column(fallback);
  if (p && (has_values(t, *p) || !f)) return *p;
  if (f) return *f;
  throw ConfigError(std::string("CSV has neither '") + preferred + "' nor '" + fallback + "'");
}

// Keys are matched numerically so that 1e-07 and 9.9999999999999995e-08
// name the same grid point.
struct KeyLess {
  bool operator()(double a, double b) const {
    if (std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b))) return false;
    return a < b;
  }
};

}  // namespace

CompareReport compare(const CsvTable& theory, const CsvTable& sim, double tolerance_db) {
  if (theory.header.empty() || sim.header.empty()) throw ConfigError("CSV has no header");
  if (theory.header.front() != sim.header.front()) {
    throw ConfigError("grid mismatch: key columns '" + theory.header.front() + "' and '" +
                      sim.header.front() + "' differ");
  }
  const std::size_t tc = value_column(theory, "msd_theory", "msd_sim");
  const std::size_t sc = value_column(sim, "msd_sim", "msd_theory");

  // Several rows may share a key (a marker row duplicating a grid value); the
  // first occurrence wins on both sides.
  std::map<double, std::size_t, KeyLess> srows;
  for (std::size_t i = 0; i < sim.rows.size(); ++i) srows.emplace(sim.number(i, 0), i);
  std::map<double, std::size_t, KeyLess> trows;
  for (std::size_t i = 0; i < theory.rows.size(); ++i) trows.emplace(theory.number(i, 0), i);

  std::string missing;
  for (const auto& [k, i] : trows) {
    if (!srows.count(k)) missing += " " + theory.rows[i][0] + " (sim)";
  }
  for (const auto& [k, i] : srows) {
    if (!trows.count(k)) missing += " " + sim.rows[i][0] + " (theory)";
  }
  if (!missing.empty()) throw ConfigError("grid mismatch, missing points:" + missing);

  CompareReport r;
  r.key_column = theory.header.front();
  r.tolerance_db = tolerance_db;
  double sum = 0.0;
  for (const auto& [k, i] : trows) {
    const std::size_t j = srows.at(k);
    const double th = theory.number(i, tc);
    const double si = sim.number(j, sc);
    if (!(th > 0.0) || !(si > 0.0)) {
      r.unusable.push_back(theory.rows[i][0]);
      continue;
    }
    const double gap = 10.0 * std::log10(si / th);
    r.points.push_back({theory.rows[i][0], th, si, gap});
    r.max_abs_gap_db = std::max(r.max_abs_gap_db, std::abs(gap));
    sum += gap;
  }
  if (!r.points.empty()) r.mean_gap_db = sum / static_cast<double>(r.points.size());
  r.pass = r.unusable.empty() && !r.points.empty() && r.max_abs_gap_db <= tolerance_db;
  return r;
}

void print_report(std::ostream& os, const CompareReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-24s %-24s %-24s %10s\n", r.key_column.c_str(), "theory",
                "sim", "gap_dB");
  os << buf;
  for (const auto& p : r.points) {
    std::snprintf(buf, sizeof buf, "%-24s %-24.17g %-24.17g %10.4f\n", p.key.c_str(), p.theory,
                  p.sim, p.gap_db);
    os << buf;
  }
  for (const auto& u : r.unusable) os << u << ": no usable value\n";
  std::snprintf(buf, sizeof buf, "max |gap| %.4f dB, mean gap %.4f dB, tolerance %.4f dB: %s\n",
                r.max_abs_gap_db, r.mean_gap_db, r.tolerance_db, r.pass ? "PASS" : "FAIL");
  os << buf;
}

}  // namespace l0lms::cli
