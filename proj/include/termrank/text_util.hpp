#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace termrank {

// ASCII-only lowercasing; multibyte UTF-8 sequences pass through untouched.
std::string to_lower_ascii(std::string_view s);

std::string trim(std::string_view s);

// Splits on a single delimiter, keeping empty fields.
std::vector<std::string> split(std::string_view s, char delim);

// Splits on whitespace runs, dropping empty fields.
std::vector<std::string> split_ws(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Fixed-point decimal formatting ("%.Nf"); used for reproducible dumps.
std::string format_fixed(double value, int decimals);

// Shortest form that parses back to the identical double ("%.17g").
std::string format_exact(double value);

// strtod that rejects trailing garbage and empty input.
double parse_double(std::string_view s, const std::string& what);

long long parse_int(std::string_view s, const std::string& what);

}  // namespace termrank
