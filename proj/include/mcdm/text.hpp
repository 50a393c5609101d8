#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace mcdm {

/// 17 significant digits; round-trips bit-exactly through parse_double.
std::string format_double(double value);

/// Strict parse: the whole (trimmed) text must be a decimal or scientific number.
std::optional<double> parse_double(std::string_view text);

std::string_view trim(std::string_view text) noexcept;

/// Double-quoted DOT identifier with embedded quotes and backslashes escaped.
std::string dot_quote(std::string_view text);

}  // namespace mcdm
