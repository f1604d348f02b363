#include "server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <openssl/evp.h>
#include <openssl/sha.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <optional>
#include <stdexcept>

#include "geo/session.hpp"

namespace geo::serve {

namespace {

bool send_all(int fd, const void* data, size_t n) {
  const char* p = static_cast<const char*>(data);
  while (n > 0) {
    const ssize_t k = ::send(fd, p, n, MSG_NOSIGNAL);
    if (k < 0 && errno == EINTR) continue;
    if (k <= 0) return false;
    p += k;
    n -= static_cast<size_t>(k);
  }
  return true;
}

class Reader {
 public:
  explicit Reader(int fd) : fd_(fd) {}

  // Reads until `n` bytes are buffered; false on EOF or error.
  bool fill(size_t n) {
    while (buf_.size() - pos_ < n) {
      char tmp[4096];
      const ssize_t k = ::recv(fd_, tmp, sizeof tmp, 0);
      if (k < 0 && errno == EINTR) continue;
      if (k <= 0) return false;
      if (pos_ > 0 && pos_ == buf_.size()) {
        buf_.clear();
        pos_ = 0;
      }
      buf_.append(tmp, static_cast<size_t>(k));
    }
    return true;
  }

  std::string take(size_t n) {
    std::string out = buf_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  std::string_view peek(size_t n) const { return std::string_view(buf_).substr(pos_, n); }

  std::optional<std::string> line(size_t limit) {
    while (true) {
      const size_t nl = buf_.find('\n', pos_);
      if (nl != std::string::npos) {
        std::string out = buf_.substr(pos_, nl - pos_);
        pos_ = nl + 1;
        if (!out.empty() && out.back() == '\r') out.pop_back();
        return out;
      }
      if (buf_.size() - pos_ > limit) return std::nullopt;
      if (!fill(buf_.size() - pos_ + 1)) return std::nullopt;
    }
  }

 private:
  int fd_;
  std::string buf_;
  size_t pos_ = 0;
};

constexpr size_t kMaxMessage = 8u << 20;

std::string websocket_accept(const std::string& key) {
  const std::string src = key + "258EAFA5-E914-47DA-95CA-C5AB0DC85B11";
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(src.data()), src.size(), digest);
  unsigned char out[64];
  const int n = EVP_EncodeBlock(out, digest, SHA_DIGEST_LENGTH);
  return std::string(reinterpret_cast<char*>(out), static_cast<size_t>(n));
}

bool send_frame(int fd, int opcode, const std::string& payload) {
  std::string head;
  head.push_back(static_cast<char>(0x80 | opcode));
  const size_t n = payload.size();
  if (n < 126) {
    head.push_back(static_cast<char>(n));
  } else if (n <= 0xFFFF) {
    head.push_back(126);
    head.push_back(static_cast<char>(n >> 8));
    head.push_back(static_cast<char>(n & 0xFF));
  } else {
    head.push_back(127);
    for (int i = 7; i >= 0; --i) head.push_back(static_cast<char>((static_cast<uint64_t>(n) >> (8 * i)) & 0xFF));
  }
  return send_all(fd, head.data(), head.size()) && send_all(fd, payload.data(), payload.size());
}

void serve_websocket(int fd, Reader& in, Session& session) {
  std::string key;
  while (auto line = in.line(16384)) {
    if (line->empty()) break;
    const auto colon = line->find(':');
    if (colon == std::string::npos) continue;
    std::string name = line->substr(0, colon);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    if (name == "sec-websocket-key") {
      key = line->substr(colon + 1);
      key.erase(0, key.find_first_not_of(' '));
      key.erase(key.find_last_not_of(' ') + 1);
    }
  }
  if (key.empty()) {
    const std::string bad = "HTTP/1.1 400 Bad Request\r\nContent-Length: 0\r\nConnection: close\r\n\r\n";
    send_all(fd, bad.data(), bad.size());
    return;
  }
  const std::string reply = "HTTP/1.1 101 Switching Protocols\r\nUpgrade: websocket\r\nConnection: Upgrade\r\n"
                            "Sec-WebSocket-Accept: " + websocket_accept(key) + "\r\n\r\n";
  if (!send_all(fd, reply.data(), reply.size())) return;

  std::string message;
  while (true) {
    if (!in.fill(2)) return;
    const std::string h = in.take(2);
    const bool fin = h[0] & 0x80;
    const int opcode = h[0] & 0x0F;
    const bool masked = h[1] & 0x80;
    uint64_t len = h[1] & 0x7F;
    if (len == 126) {
      if (!in.fill(2)) return;
      const std::string l = in.take(2);
      len = (static_cast<uint64_t>(static_cast<unsigned char>(l[0])) << 8) | static_cast<unsigned char>(l[1]);
    } else if (len == 127) {
      if (!in.fill(8)) return;
      const std::string l = in.take(8);
      len = 0;
      for (char c : l) len = (len << 8) | static_cast<unsigned char>(c);
    }
    if (len > kMaxMessage || message.size() + len > kMaxMessage) {
      send_frame(fd, 8, std::string("\x03\xf1", 2));
      return;
    }
    std::string mask_key(4, '\0');
    if (masked) {
      if (!in.fill(4)) return;
      mask_key = in.take(4);
    }
    if (!in.fill(len)) return;
    std::string payload = in.take(len);
    if (masked)
      for (size_t i = 0; i < payload.size(); ++i) payload[i] ^= mask_key[i % 4];

    if (opcode == 8) {
      send_frame(fd, 8, payload.substr(0, 2));
      return;
    }
    if (opcode == 9) {
      if (!send_frame(fd, 10, payload)) return;
      continue;
    }
    if (opcode == 10) continue;
    message += payload;
    if (!fin) continue;
    for (const auto& r : session.handle(message))
      if (!send_frame(fd, 1, r)) return;
    message.clear();
  }
}

void serve_lines(int fd, Reader& in, Session& session) {
  while (auto line = in.line(kMaxMessage)) {
    if (line->find_first_not_of(" \t") == std::string::npos) continue;
    for (const auto& r : session.handle(*line)) {
      const std::string out = r + "\n";
      if (!send_all(fd, out.data(), out.size())) return;
    }
  }
}

}  // namespace

Server::~Server() { stop(); }

std::uint16_t Server::listen(const std::string& host, std::uint16_t port) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) throw std::runtime_error("invalid host " + host);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(listen_fd_, 16) < 0) {
    const std::string err = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port) + ": " + err);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  if (::pipe(wake_) < 0) throw std::runtime_error("pipe failed");
  return ntohs(addr.sin_port);
}

void Server::run() {
  pollfd fds[2] = {{listen_fd_, POLLIN, 0}, {wake_[0], POLLIN, 0}};
  while (!stopping_) {
    const int k = ::poll(fds, 2, -1);
    if (k < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (fds[1].revents) break;
    if (!(fds[0].revents & POLLIN)) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    std::lock_guard lock(mutex_);
    if (stopping_) {
      ::close(fd);
      break;
    }
    clients_.push_back(fd);
    workers_.emplace_back([this, fd] { serve_connection(fd); });
  }
}

void Server::serve_connection(int fd) {
  Session session;
  Reader in(fd);
  if (in.fill(1)) {
    if (in.peek(1) == "G" && in.fill(4) && in.peek(4) == "GET ") serve_websocket(fd, in, session);
    else serve_lines(fd, in, session);
  }
  std::lock_guard lock(mutex_);
  auto it = std::find(clients_.begin(), clients_.end(), fd);
  if (it != clients_.end()) {
    clients_.erase(it);
    ::close(fd);
  }
}

void Server::stop() {
  if (stopping_.exchange(true)) {
    return;
  }
  if (wake_[1] >= 0) {
    const char c = 1;
    [[maybe_unused]] auto n = ::write(wake_[1], &c, 1);
  }
  std::vector<std::thread> workers;
  {
    std::lock_guard lock(mutex_);
    for (int fd : clients_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (auto& t : workers)
    if (t.joinable()) t.join();
  if (listen_fd_ >= 0) ::close(listen_fd_);
  for (int& fd : wake_)
    if (fd >= 0) ::close(fd), fd = -1;
  listen_fd_ = -1;
}

}  // namespace geo::serve
