#include "ocp/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "ocp/protocol.hpp"

namespace ocp {

LineServer::LineServer(Engine& engine, int port) : engine_(engine) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) fail(Errc::bind_failure, std::strerror(errno));

  int on = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &on, sizeof(on));

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(static_cast<uint16_t>(port));
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
    std::string why = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    fail(Errc::bind_failure, "port " + std::to_string(port) + ": " + why);
  }
  if (::listen(listen_fd_, 8) < 0) {
    std::string why = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    fail(Errc::bind_failure, why);
  }

  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

LineServer::~LineServer() { shutdown(); }

void LineServer::shutdown() {
  if (listen_fd_ >= 0) {
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
}

void LineServer::run() {
  bool quit = false;
  while (!quit && listen_fd_ >= 0) {
    int client = ::accept(listen_fd_, nullptr, nullptr);
    if (client < 0) {
      if (errno == EINTR) continue;
      break;  // listener closed
    }
    serve_connection(client, quit);
    ::close(client);
  }
}

void LineServer::serve_connection(int client_fd, bool& quit) {
  ProtocolHandler handler(engine_);
  std::string buffer;
  char chunk[4096];
  while (true) {
    size_t newline;
    while ((newline = buffer.find('\n')) != std::string::npos) {
      std::string line = buffer.substr(0, newline);
      buffer.erase(0, newline + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string response = handler.handle(line) + "\n";
      size_t sent = 0;
      while (sent < response.size()) {
        ssize_t n = ::send(client_fd, response.data() + sent, response.size() - sent, 0);
        if (n <= 0) return;
        sent += static_cast<size_t>(n);
      }
      if (handler.quit_requested()) {
        quit = true;
        return;
      }
    }
    ssize_t n = ::recv(client_fd, chunk, sizeof(chunk), 0);
    if (n <= 0) return;
    buffer.append(chunk, static_cast<size_t>(n));
  }
}

}  // namespace ocp
