#include "drunkguard/harness/decimal.hpp"

#include <limits>

namespace drunkguard::harness {

std::optional<std::int64_t> parse_micro_decimal(std::string_view text) {
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() || (dot != std::string_view::npos && frac.empty()) || frac.size() > 6) {
    return std::nullopt;
  }

  std::int64_t value = 0;
  for (char c : whole) {
    if (c < '0' || c > '9') return std::nullopt;
    if (value > (kMax - (c - '0')) / 10) return std::nullopt;
    value = value * 10 + (c - '0');
  }
  if (value > kMax / 1'000'000) return std::nullopt;
  value *= 1'000'000;

  std::int64_t scale = 100'000;
  for (char c : frac) {
    if (c < '0' || c > '9') return std::nullopt;
    value += (c - '0') * scale;
    scale /= 10;
  }
  return value;
}

std::string format_micro_decimal(std::int64_t micro) {
  std::string out = std::to_string(micro / 1'000'000);
  std::int64_t frac = micro % 1'000'000;
  if (frac == 0) return out;
  std::string digits = std::to_string(frac);
  digits.insert(0, 6 - digits.size(), '0');
  while (digits.back() == '0') digits.pop_back();
  return out + "." + digits;
}

}  // namespace drunkguard::harness
