#ifndef OCP_SERVER_HPP
#define OCP_SERVER_HPP

#include <string>

#include "ocp/engine.hpp"

namespace ocp {

// Blocking single-threaded TCP server speaking the line protocol. Clients
// are served one at a time; QUIT flushes the log and shuts the server down.
class LineServer {
 public:
  // Binds immediately; port 0 picks an ephemeral port. Throws bind_failure.
  LineServer(Engine& engine, int port);
  ~LineServer();

  LineServer(const LineServer&) = delete;
  LineServer& operator=(const LineServer&) = delete;

  int port() const { return port_; }

  // Accept loop; returns after a QUIT request.
  void run();

  // Unblocks run() from another thread.
  void shutdown();

 private:
  void serve_connection(int client_fd, bool& quit);

  Engine& engine_;
  int listen_fd_ = -1;
  int port_ = 0;
};

}  // namespace ocp

#endif
