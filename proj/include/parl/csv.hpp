#pragma once

#include <string>
#include <vector>

namespace parl::csv {

/// RFC-4180 field quoting: fields containing commas, quotes, or newlines are
/// wrapped in double quotes with embedded quotes doubled.
std::string escape(const std::string& field);

std::string join_row(const std::vector<std::string>& fields);

/// Parse one CSV document (quoted fields, CRLF or LF) into rows of fields.
std::vector<std::vector<std::string>> parse(const std::string& text);

/// Whole-file helpers; throw std::runtime_error with the path on I/O failure.
void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace parl::csv
