#pragma once

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tges/error.hpp"

namespace tges::io {

struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
    std::vector<std::size_t> columns;  // 1-based start column of each field
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

/// Reads comma-separated rows; blank lines are skipped. Double-quoted fields may
/// contain commas. No escapes inside quotes beyond "" for a literal quote.
inline std::vector<CsvRow> read_csv(std::istream& in, const std::string& source) {
    std::vector<CsvRow> rows;
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        if (trim(text).empty()) continue;
        CsvRow row;
        row.line = line_no;
        std::string field;
        std::size_t start = 1;
        bool quoted = false;
        for (std::size_t i = 0; i < text.size(); ++i) {
            const char c = text[i];
            if (quoted) {
                if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    field += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                row.fields.emplace_back(trim(field));
                row.columns.push_back(start);
                field.clear();
                start = i + 2;
            } else {
                field += c;
            }
        }
        if (quoted) throw ParseError(source, line_no, start, "unterminated quoted field");
        row.fields.emplace_back(trim(field));
        row.columns.push_back(start);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline double parse_double(const std::string& text, const std::string& source, std::size_t line,
                           std::size_t column) {
    if (text.empty()) throw ParseError(source, line, column, "empty numeric field");
    // strtod accepts what from_chars for double does on older libstdc++, and more.
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(begin, &end);
    if (end != begin + text.size() || errno == ERANGE) {
        throw ParseError(source, line, column, "not a decimal number: '" + text + "'");
    }
    return value;
}

inline long parse_int(const std::string& text, const std::string& source, std::size_t line, std::size_t column) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError(source, line, column, "not an integer: '" + text + "'");
    }
    return value;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    return in;
}

/// Writes `content` to a temporary sibling and renames it over `path`.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << content;
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

/// Shortest round-trippable decimal representation.
inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace tges::io
