#pragma once

#include "drunkguard/fusion/engine.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace drunkguard::telemetry {

class EncodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One row of a cloud channel: field1 alcohol flag, field2 whole BPM (empty
/// when absent), field3 drowsy flag, field4 decision code.
struct ChannelUpdate {
  std::string api_key;
  bool alcohol = false;
  std::optional<std::int64_t> bpm;
  bool drowsy = false;
  fusion::Decision decision = fusion::Decision::Normal;
};

/// Renders the channel-update GET request:
///   GET /update?api_key=K&field1=..&field2=..&field3=..&field4=.. HTTP/1.1\r\n
///   Host: H\r\nConnection: close\r\n\r\n
/// Throws EncodeError for a key that is not 1-32 alphanumerics, a negative
/// BPM, or a host containing whitespace or control characters.
[[nodiscard]] std::string encode_http_update(const ChannelUpdate& update, const std::string& host);

/// Query-string body shared with the MQTT payload: field1=..&field2=..&...
[[nodiscard]] std::string encode_fields(const ChannelUpdate& update);

}  // namespace drunkguard::telemetry
