#include "drunkguard/net/address.hpp"

#include <charconv>
#include <stdexcept>

namespace drunkguard::net {

Address parse_address(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw std::invalid_argument("expected host:port, got '" + std::string(text) + "'");
  }
  const std::string_view port_text = text.substr(colon + 1);
  unsigned port = 0;
  auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port == 0 ||
      port > 65535) {
    throw std::invalid_argument("invalid port in '" + std::string(text) + "'");
  }
  return Address{std::string(text.substr(0, colon)), static_cast<std::uint16_t>(port)};
}

}  // namespace drunkguard::net
