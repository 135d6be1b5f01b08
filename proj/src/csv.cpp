#include "acqgraph/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "acqgraph/errors.hpp"

namespace acqgraph {

namespace {

[[noreturn]] void fail(const std::string& origin, std::size_t line,
                       const std::string& message) {
    throw DataError(origin + ":" + std::to_string(line) + ": " + message);
}

}  // namespace

CsvTable parse_csv(std::string_view text, const std::string& origin) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }

    CsvTable table;
    std::vector<std::string> fields;
    std::string field;
    std::size_t line = 1;
    std::size_t row_start_line = 1;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool row_has_content = false;

    auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_row = [&] {
        end_field();
        if (table.header.empty()) {
            table.header = std::move(fields);
        } else {
            if (fields.size() != table.header.size()) {
                fail(origin, row_start_line,
                     "expected " + std::to_string(table.header.size()) +
                         " fields, got " + std::to_string(fields.size()));
            }
            table.rows.push_back(std::move(fields));
            table.row_lines.push_back(row_start_line);
        }
        fields.clear();
        row_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty() || field_was_quoted) {
                    fail(origin, line, "quote inside unquoted field");
                }
                in_quotes = true;
                field_was_quoted = true;
                row_has_content = true;
                break;
            case ',':
                end_field();
                row_has_content = true;
                break;
            case '\r':
                if (i + 1 >= text.size() || text[i + 1] != '\n') {
                    fail(origin, line, "bare carriage return");
                }
                break;
            case '\n':
                if (row_has_content || !fields.empty() || !field.empty() ||
                    field_was_quoted) {
                    end_row();
                }
                ++line;
                row_start_line = line;
                break;
            default:
                if (field_was_quoted) {
                    fail(origin, line, "data after closing quote");
                }
                field.push_back(c);
                row_has_content = true;
                break;
        }
    }
    if (in_quotes) {
        fail(origin, row_start_line, "unterminated quoted field");
    }
    if (row_has_content || !fields.empty() || !field.empty()) {
        end_row();
    }
    if (table.header.empty()) {
        throw DataError(origin + ": missing header row");
    }
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    return parse_csv(read_text_file(path), path);
}

std::string csv_escape(std::string_view field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(fields[i]);
    }
    out << '\n';
}

std::string format_double(double value) {
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) break;
    }
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace acqgraph
