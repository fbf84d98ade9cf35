#include "drunkguard/net/transport.hpp"

namespace drunkguard::net {

void ScriptedTransport::script(const Address& to, std::vector<bool> outcomes) {
  std::lock_guard lock(mutex_);
  auto& ep = endpoints_[to.to_string()];
  ep.script.assign(outcomes.begin(), outcomes.end());
}

SendOutcome ScriptedTransport::send(const Address& to, std::span<const std::uint8_t> bytes) {
  std::lock_guard lock(mutex_);
  auto& ep = endpoints_[to.to_string()];
  ++ep.attempts;
  bool accept = default_;
  if (!ep.script.empty()) {
    accept = ep.script.front();
    ep.script.pop_front();
  }
  if (!accept) {
    return SendOutcome{false, "connection refused (scripted)"};
  }
  ep.received.emplace_back(bytes.begin(), bytes.end());
  return SendOutcome{true, {}};
}

std::vector<Bytes> ScriptedTransport::received(const Address& to) const {
  std::lock_guard lock(mutex_);
  const auto it = endpoints_.find(to.to_string());
  return it == endpoints_.end() ? std::vector<Bytes>{} : it->second.received;
}

std::size_t ScriptedTransport::attempts(const Address& to) const {
  std::lock_guard lock(mutex_);
  const auto it = endpoints_.find(to.to_string());
  return it == endpoints_.end() ? 0 : it->second.attempts;
}

}  // namespace drunkguard::net
