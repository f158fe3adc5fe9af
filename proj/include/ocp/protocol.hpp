#ifndef OCP_PROTOCOL_HPP
#define OCP_PROTOCOL_HPP

#include <string>

#include "ocp/engine.hpp"

namespace ocp {

// Line protocol: one request line in, one response line out.
//
//   SESSION-OPEN <user>          -> OK session=<id>
//   SESSION-CLOSE <id>           -> OK
//   AUTH? <id> <repo> <kind> <op>-> OK allow | OK deny <reason>
//   EVENT <type> <id> [payload]  -> OK actions=<n> failures=<m>
//   RENDER <view> session=<id>   -> OK <byte-length> <body, newlines escaped>
//   TICK                         -> OK tick=<n> rerendered=<k>
//   REFRESH <view>               -> OK rerendered=1
//   QUIT                         -> OK bye
//
// Errors answer `ERR <reason>`; malformed requests answer `ERR parse`.
class ProtocolHandler {
 public:
  explicit ProtocolHandler(Engine& engine) : engine_(engine) {}

  std::string handle(const std::string& line);
  bool quit_requested() const { return quit_; }

 private:
  Engine& engine_;
  bool quit_ = false;
};

}  // namespace ocp

#endif
