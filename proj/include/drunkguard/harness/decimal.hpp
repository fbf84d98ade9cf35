#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace drunkguard::harness {

/// Parses an unsigned decimal such as "12", "0.5" or "2.125" into an integer
/// scaled by 10^6 ("2.125" -> 2'125'000). At most six fractional digits; no
/// sign, exponent or whitespace. nullopt when malformed or overflowing.
[[nodiscard]] std::optional<std::int64_t> parse_micro_decimal(std::string_view text);

/// Shortest rendering of a micro-scaled value: 2'500'000 -> "2.5", 0 -> "0".
[[nodiscard]] std::string format_micro_decimal(std::int64_t micro);

}  // namespace drunkguard::harness
