#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cochlea::io {

/// Table with one header row. Cells are kept as text; numbers are formatted
/// with enough digits to round-trip exactly.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::size_t column(const std::string& name) const;  ///< throws if missing
  double number(std::size_t row, const std::string& name) const;
};

std::string format_number(double value);
std::string format_number(long long value);

/// RFC 4180: CRLF line ends, fields quoted when they contain , " CR or LF.
std::string to_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& value);

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace cochlea::io
