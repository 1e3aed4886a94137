#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vcsc::csv {

/// Splits one comma-delimited record. Double-quoted fields may contain commas
/// and doubled quotes. A trailing carriage return is stripped.
std::vector<std::string> split_record(std::string_view line);

/// Reads the next non-empty line; returns false at end of stream.
bool next_line(std::istream& in, std::string& line);

std::string trim(std::string_view s);

/// Strict decimal parse: the whole field must be consumed and the value finite.
std::optional<double> parse_double(std::string_view s);

/// Shortest representation that round-trips exactly through parse_double.
std::string format_double(double v);

/// Fixed-point rendering with `digits` decimals ("0.567").
std::string format_fixed(double v, int digits);

/// Quotes a field if it contains a comma, quote or newline.
std::string escape(std::string_view field);

}  // namespace vcsc::csv
