#include "drunkguard/telemetry/http_update.hpp"

#include <algorithm>
#include <cctype>

namespace drunkguard::telemetry {

namespace {

void check(const ChannelUpdate& u) {
  const bool key_ok = !u.api_key.empty() && u.api_key.size() <= 32 &&
                      std::all_of(u.api_key.begin(), u.api_key.end(), [](unsigned char c) {
                        return std::isalnum(c) != 0 && c < 0x80;
                      });
  if (!key_ok) {
    throw EncodeError("api_key must be 1-32 ASCII alphanumerics");
  }
  if (u.bpm && *u.bpm < 0) {
    throw EncodeError("bpm must be non-negative");
  }
}

}  // namespace

std::string encode_fields(const ChannelUpdate& u) {
  check(u);
  std::string out;
  out += "field1=";
  out += u.alcohol ? '1' : '0';
  out += "&field2=";
  if (u.bpm) out += std::to_string(*u.bpm);
  out += "&field3=";
  out += u.drowsy ? '1' : '0';
  out += "&field4=";
  out += std::to_string(static_cast<int>(u.decision));
  return out;
}

std::string encode_http_update(const ChannelUpdate& u, const std::string& host) {
  const bool host_ok = !host.empty() && std::all_of(host.begin(), host.end(), [](unsigned char c) {
    return c > 0x20 && c < 0x7f;
  });
  if (!host_ok) {
    throw EncodeError("host must be non-empty printable ASCII without spaces");
  }
  std::string out = "GET /update?api_key=" + u.api_key + "&" + encode_fields(u);
  out += " HTTP/1.1\r\nHost: ";
  out += host;
  out += "\r\nConnection: close\r\n\r\n";
  return out;
}

}  // namespace drunkguard::telemetry
