#pragma once

#include "drunkguard/net/transport.hpp"

#include <cstddef>
#include <string>

namespace drunkguard::telemetry {

/// Largest value the four-byte MQTT remaining-length field can carry.
inline constexpr std::size_t kMaxRemainingLength = 268'435'455;
inline constexpr std::size_t kMaxTopicBytes = 128;

/// QoS 0 PUBLISH; no retain, no DUP, no packet id.
struct PublishPacket {
  std::string topic;
  net::Bytes payload;
};

/// MQTT variable-length integer: 7 bits per byte, continuation bit 0x80.
[[nodiscard]] net::Bytes encode_remaining_length(std::size_t length);

/// 0x30 | remaining length | topic length (u16 BE) | topic | payload.
/// Throws EncodeError on an empty, oversized, non-UTF-8 or wildcard topic, or
/// when the packet exceeds kMaxRemainingLength.
[[nodiscard]] net::Bytes encode_publish(const PublishPacket& packet);

}  // namespace drunkguard::telemetry
