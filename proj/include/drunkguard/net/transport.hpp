#pragma once

#include "drunkguard/net/address.hpp"

#include <chrono>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace drunkguard::net {

using Bytes = std::vector<std::uint8_t>;

struct SendOutcome {
  bool ok = false;
  std::string error;  // empty when ok
};

/// One-shot delivery of a byte string to an endpoint: connect, write, close.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual SendOutcome send(const Address& to, std::span<const std::uint8_t> bytes) = 0;
};

/// Real TCP client. The call returns once the peer has closed its side or the
/// timeout passes, so a cooperating peer has consumed the bytes by then.
class TcpTransport final : public Transport {
 public:
  explicit TcpTransport(std::chrono::milliseconds timeout = std::chrono::milliseconds(1000))
      : timeout_(timeout) {}

  SendOutcome send(const Address& to, std::span<const std::uint8_t> bytes) override;

 private:
  std::chrono::milliseconds timeout_;
};

/// In-memory endpoint double. Each address follows a script of accept/refuse
/// outcomes; once the script runs out the default applies. Thread-safe.
class ScriptedTransport final : public Transport {
 public:
  explicit ScriptedTransport(bool accept_by_default = true) : default_(accept_by_default) {}

  void script(const Address& to, std::vector<bool> outcomes);
  SendOutcome send(const Address& to, std::span<const std::uint8_t> bytes) override;

  /// Payloads accepted at `to`, in arrival order.
  [[nodiscard]] std::vector<Bytes> received(const Address& to) const;
  [[nodiscard]] std::size_t attempts(const Address& to) const;

 private:
  struct Endpoint {
    std::deque<bool> script;
    std::vector<Bytes> received;
    std::size_t attempts = 0;
  };

  bool default_;
  mutable std::mutex mutex_;
  std::map<std::string, Endpoint> endpoints_;
};

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

}  // namespace drunkguard::net
