#include "drunkguard/telemetry/mqtt.hpp"

#include "drunkguard/telemetry/http_update.hpp"

namespace drunkguard::telemetry {

namespace {

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      cp = c;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= s.size()) {
      return false;
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    i += extra + 1;
  }
  return true;
}

}  // namespace

net::Bytes encode_remaining_length(std::size_t length) {
  if (length > kMaxRemainingLength) {
    throw EncodeError("remaining length exceeds 268435455");
  }
  net::Bytes out;
  do {
    auto byte = static_cast<std::uint8_t>(length % 128);
    length /= 128;
    if (length > 0) byte |= 0x80;
    out.push_back(byte);
  } while (length > 0);
  return out;
}

net::Bytes encode_publish(const PublishPacket& packet) {
  const std::string& topic = packet.topic;
  if (topic.empty() || topic.size() > kMaxTopicBytes) {
    throw EncodeError("topic must be 1-128 bytes");
  }
  if (topic.find_first_of("#+") != std::string::npos) {
    throw EncodeError("topic must not contain wildcards");
  }
  if (topic.find('\0') != std::string::npos || !valid_utf8(topic)) {
    throw EncodeError("topic must be valid UTF-8 without NUL");
  }
  if (packet.payload.size() > kMaxRemainingLength - 2 - topic.size()) {
    throw EncodeError("packet exceeds maximum remaining length");
  }
  const std::size_t remaining = 2 + topic.size() + packet.payload.size();

  net::Bytes out;
  out.reserve(1 + 4 + remaining);
  out.push_back(0x30);
  const net::Bytes len = encode_remaining_length(remaining);
  out.insert(out.end(), len.begin(), len.end());
  out.push_back(static_cast<std::uint8_t>(topic.size() >> 8));
  out.push_back(static_cast<std::uint8_t>(topic.size() & 0xFF));
  out.insert(out.end(), topic.begin(), topic.end());
  out.insert(out.end(), packet.payload.begin(), packet.payload.end());
  return out;
}

}  // namespace drunkguard::telemetry
