#pragma once

#include "drunkguard/net/address.hpp"
#include "drunkguard/net/transport.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace drunkguard::net {

/// Accepts TCP connections one at a time and hands each connection's full byte
/// stream (read until the client closes) to the handler before closing it.
class TcpListener {
 public:
  using Handler = std::function<void(Bytes)>;

  /// Binds host:port; port 0 picks an ephemeral port. Throws std::runtime_error.
  TcpListener(const std::string& host, std::uint16_t port, Handler handler);
  ~TcpListener();

  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  [[nodiscard]] std::uint16_t port() const { return port_; }
  [[nodiscard]] Address address() const { return Address{host_, port_}; }

  void stop();

 private:
  void serve();

  std::string host_;
  std::uint16_t port_ = 0;
  int fd_ = -1;
  Handler handler_;
  std::atomic<bool> stopping_{false};
  std::thread thread_;
};

/// In-process loopback endpoint that records every payload it receives.
class LoopbackSink {
 public:
  LoopbackSink();

  [[nodiscard]] Address address() const { return listener_.address(); }
  [[nodiscard]] std::vector<Bytes> received() const;

  /// Blocks until at least n payloads arrived or the timeout passes.
  bool wait_for(std::size_t n, std::chrono::milliseconds timeout) const;

  void stop() { listener_.stop(); }

 private:
  mutable std::mutex mutex_;
  mutable std::condition_variable cv_;
  std::vector<Bytes> received_;
  TcpListener listener_;
};

}  // namespace drunkguard::net
