#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace citenet {

/// Shortest-independent, locale-free rendering with 17 significant digits.
/// Every emitted real goes through here so outputs are byte-stable.
std::string format_real(double value);

/// Fixed-point rendering with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

std::optional<double> parse_real(std::string_view text);
std::optional<std::int64_t> parse_int(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace citenet
