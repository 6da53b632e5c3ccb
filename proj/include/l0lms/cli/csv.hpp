#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace l0lms::cli {

/// 17 significant digits; NaN becomes an empty cell.
std::string format_real(double v);
/// 10 log10(v) with 4 decimals; empty for NaN or v <= 0.
std::string format_db(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> find_column(std::string_view name) const;
  /// Throws Error when the column is absent.
  std::size_t column(std::string_view name) const;
  /// Cell as a number; NaN for an empty cell.  Throws on malformed numbers.
  double number(std::size_t row, std::size_t col) const;
};

/// Throws Error when the file cannot be written.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace l0lms::cli
