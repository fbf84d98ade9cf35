#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace drunkguard::net {

struct Address {
  std::string host;
  std::uint16_t port = 0;

  [[nodiscard]] std::string to_string() const { return host + ":" + std::to_string(port); }

  friend bool operator==(const Address&, const Address&) = default;
};

/// Parses "host:port" (port 1..65535). Throws std::invalid_argument.
[[nodiscard]] Address parse_address(std::string_view text);

}  // namespace drunkguard::net
