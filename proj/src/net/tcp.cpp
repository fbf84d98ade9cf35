#include "drunkguard/net/tcp_listener.hpp"
#include "drunkguard/net/transport.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace drunkguard::net {

namespace {

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  ~Fd() { reset(); }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;

  [[nodiscard]] int get() const { return fd_; }
  int release() {
    const int fd = fd_;
    fd_ = -1;
    return fd;
  }
  void reset(int fd = -1) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = fd;
  }

 private:
  int fd_;
};

struct AddrInfoDeleter {
  void operator()(addrinfo* ai) const { ::freeaddrinfo(ai); }
};

std::string errno_text(int err) { return std::strerror(err); }

bool set_nonblocking(int fd, bool on) {
  const int flags = ::fcntl(fd, F_GETFL, 0);
  if (flags < 0) return false;
  return ::fcntl(fd, F_SETFL, on ? (flags | O_NONBLOCK) : (flags & ~O_NONBLOCK)) == 0;
}

// Non-blocking connect bounded by timeout; returns errno-style code (0 = ok).
int connect_with_timeout(int fd, const sockaddr* sa, socklen_t len, int timeout_ms) {
  if (!set_nonblocking(fd, true)) return errno;
  if (::connect(fd, sa, len) == 0) return set_nonblocking(fd, false) ? 0 : errno;
  if (errno != EINPROGRESS) return errno;

  pollfd pfd{fd, POLLOUT, 0};
  const int rc = ::poll(&pfd, 1, timeout_ms);
  if (rc == 0) return ETIMEDOUT;
  if (rc < 0) return errno;
  int err = 0;
  socklen_t err_len = sizeof(err);
  if (::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &err_len) != 0) return errno;
  if (err != 0) return err;
  return set_nonblocking(fd, false) ? 0 : errno;
}

bool send_all(int fd, std::span<const std::uint8_t> bytes, std::string& error) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t n = ::send(fd, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      error = "send: " + errno_text(errno);
      return false;
    }
    sent += static_cast<std::size_t>(n);
  }
  return true;
}

// Reads until the peer closes or the timeout elapses; the data is discarded.
void drain(int fd, int timeout_ms) {
  char buf[512];
  for (;;) {
    pollfd pfd{fd, POLLIN, 0};
    if (::poll(&pfd, 1, timeout_ms) <= 0) return;
    const ssize_t n = ::recv(fd, buf, sizeof(buf), 0);
    if (n <= 0) return;
  }
}

}  // namespace

SendOutcome TcpTransport::send(const Address& to, std::span<const std::uint8_t> bytes) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* raw = nullptr;
  const std::string port = std::to_string(to.port);
  if (const int rc = ::getaddrinfo(to.host.c_str(), port.c_str(), &hints, &raw); rc != 0) {
    return SendOutcome{false, std::string("resolve: ") + ::gai_strerror(rc)};
  }
  std::unique_ptr<addrinfo, AddrInfoDeleter> list(raw);

  const int timeout_ms = static_cast<int>(timeout_.count());
  std::string last_error = "no usable address";
  for (const addrinfo* ai = list.get(); ai != nullptr; ai = ai->ai_next) {
    Fd fd(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
    if (fd.get() < 0) {
      last_error = "socket: " + errno_text(errno);
      continue;
    }
    if (const int err = connect_with_timeout(fd.get(), ai->ai_addr, ai->ai_addrlen, timeout_ms);
        err != 0) {
      last_error = "connect: " + errno_text(err);
      continue;
    }
    std::string error;
    if (!send_all(fd.get(), bytes, error)) {
      return SendOutcome{false, error};
    }
    ::shutdown(fd.get(), SHUT_WR);
    drain(fd.get(), timeout_ms);
    return SendOutcome{true, {}};
  }
  return SendOutcome{false, last_error};
}

TcpListener::TcpListener(const std::string& host, std::uint16_t port, Handler handler)
    : host_(host), handler_(std::move(handler)) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* raw = nullptr;
  const std::string port_text = std::to_string(port);
  if (const int rc = ::getaddrinfo(host.c_str(), port_text.c_str(), &hints, &raw); rc != 0) {
    throw std::runtime_error(std::string("resolve ") + host + ": " + ::gai_strerror(rc));
  }
  std::unique_ptr<addrinfo, AddrInfoDeleter> list(raw);

  Fd fd(::socket(list->ai_family, list->ai_socktype, list->ai_protocol));
  if (fd.get() < 0) throw std::runtime_error("socket: " + errno_text(errno));
  const int one = 1;
  ::setsockopt(fd.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(fd.get(), list->ai_addr, list->ai_addrlen) != 0) {
    throw std::runtime_error("bind " + host + ":" + port_text + ": " + errno_text(errno));
  }
  if (::listen(fd.get(), 16) != 0) throw std::runtime_error("listen: " + errno_text(errno));

  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(fd.get(), reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);

  fd_ = fd.release();
  thread_ = std::thread([this] { serve(); });
}

TcpListener::~TcpListener() { stop(); }

void TcpListener::stop() {
  if (stopping_.exchange(true)) {
    return;
  }
  if (thread_.joinable()) thread_.join();
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

void TcpListener::serve() {
  while (!stopping_) {
    pollfd pfd{fd_, POLLIN, 0};
    if (::poll(&pfd, 1, 50) <= 0) continue;
    Fd conn(::accept(fd_, nullptr, nullptr));
    if (conn.get() < 0) continue;

    Bytes data;
    char buf[4096];
    while (!stopping_) {
      pollfd cp{conn.get(), POLLIN, 0};
      const int rc = ::poll(&cp, 1, 50);
      if (rc == 0) continue;
      if (rc < 0) break;
      const ssize_t n = ::recv(conn.get(), buf, sizeof(buf), 0);
      if (n <= 0) break;
      data.insert(data.end(), buf, buf + n);
    }
    handler_(std::move(data));
  }
}

LoopbackSink::LoopbackSink()
    : listener_("127.0.0.1", 0, [this](Bytes payload) {
        {
          std::lock_guard lock(mutex_);
          received_.push_back(std::move(payload));
        }
        cv_.notify_all();
      }) {}

std::vector<Bytes> LoopbackSink::received() const {
  std::lock_guard lock(mutex_);
  return received_;
}

bool LoopbackSink::wait_for(std::size_t n, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mutex_);
  return cv_.wait_for(lock, timeout, [&] { return received_.size() >= n; });
}

}  // namespace drunkguard::net
