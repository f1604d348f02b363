#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace geo::serve {

/// TCP front end for Session. A connection speaks newline-delimited JSON,
/// or WebSocket text frames when it opens with an HTTP upgrade request.
/// Each connection owns one session and is served by its own thread.
class Server {
 public:
  Server() = default;
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;
  ~Server();

  /// Binds and listens; port 0 picks a free port. Returns the bound port.
  /// Throws std::runtime_error when the port cannot be bound.
  std::uint16_t listen(const std::string& host, std::uint16_t port);
  /// Accept loop; returns after stop().
  void run();
  /// Closes the listener and all open connections. Safe from any thread.
  void stop();

 private:
  void serve_connection(int fd);

  int listen_fd_ = -1;
  int wake_[2] = {-1, -1};
  std::atomic<bool> stopping_{false};
  std::mutex mutex_;
  std::vector<int> clients_;
  std::vector<std::thread> workers_;
};

}  // namespace geo::serve
