#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace acqgraph {

// One parsed CSV file. row_lines[i] is the physical line (1-based) on which
// rows[i] starts, for error reporting on multi-line quoted fields.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> row_lines;
};

// RFC-4180: quoted fields may contain commas, newlines and doubled quotes.
// Accepts LF and CRLF, skips a UTF-8 BOM. Every row must have exactly as many
// fields as the header; violations raise DataError with "<origin>:<line>".
CsvTable parse_csv(std::string_view text, const std::string& origin);
CsvTable read_csv_file(const std::string& path);

// Minimal quoting on output: a field is quoted only when it needs to be.
std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace acqgraph
