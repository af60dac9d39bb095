#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace kaprekar {

using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

/// A rectangular record set that serializes identically to CSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws DomainError when the row width does not match the header.
  void add_row(std::vector<Cell> row);
};

/// 12 significant digits, '.' separator, negative zero printed as 0.
std::string format_real(double value);

/// Header line plus one line per row, '\n' terminated. Strings containing
/// separators or quotes are quoted.
std::string to_csv(const Table& table);

/// Array of objects keyed by column name, in column order. Reals carry the
/// same 12 significant digits as the CSV.
std::string to_json(const Table& table);

/// Writes `contents` to `path`, throwing IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& contents);

/// Lowercase hex SHA-256 of `contents`.
std::string sha256_hex(const std::string& contents);

}  // namespace kaprekar
