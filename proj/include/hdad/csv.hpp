#pragma once

#include <string>
#include <vector>

namespace hdad {

// Minimal RFC-4180 CSV table: a header row plus string-valued records.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column_index(const std::string& name) const;  // throws Error if absent
  bool has_column(const std::string& name) const;
};

// Parses a CSV file. Handles quoted fields, escaped quotes (""), embedded
// commas/newlines, and CRLF line endings. Ragged rows raise Error with the
// offending 1-based data row number.
CsvTable read_csv(const std::string& path);

// Writes a CSV file, quoting fields only when they contain separators,
// quotes, or newlines.
void write_csv(const CsvTable& table, const std::string& path);

std::string csv_escape(const std::string& field);

}  // namespace hdad
