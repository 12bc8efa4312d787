#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace poolopt {

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view line, char sep);

// Full-token numeric parse; rejects partial matches and non-finite values.
std::optional<double> parse_number(std::string_view token);

// Shortest round-trip representation (std::to_chars).
std::string fmt_double(double v);

// Type-7 quantile (linear interpolation) over an unsorted sample.
double quantile(std::vector<double> values, double p);
double median(std::vector<double> values);

}  // namespace poolopt
