#include "ocp/protocol.hpp"

#include <sstream>

#include "ocp/dsl.hpp"

namespace ocp {

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

uint64_t parse_session_id(const std::string& word) {
  size_t idx = 0;
  uint64_t id = std::stoull(word, &idx);
  if (idx != word.size()) throw std::invalid_argument(word);
  return id;
}

}  // namespace

std::string ProtocolHandler::handle(const std::string& line) {
  std::vector<std::string> words = split_words(line);
  if (words.empty()) return "ERR parse";
  const std::string& verb = words[0];

  try {
    if (verb == "QUIT") {
      quit_ = true;
      engine_.flush_log();
      return "OK bye";
    }
    if (verb == "SESSION-OPEN") {
      if (words.size() != 2) return "ERR parse";
      uint64_t id = engine_.open_session(words[1]);
      return "OK session=" + std::to_string(id);
    }
    if (verb == "SESSION-CLOSE") {
      if (words.size() != 2) return "ERR parse";
      engine_.close_session(parse_session_id(words[1]));
      return "OK";
    }
    if (verb == "AUTH?") {
      if (words.size() != 5) return "ERR parse";
      Decision d = engine_.check_access(parse_session_id(words[1]), words[2],
                                        access_kind_from_name(words[3]),
                                        access_op_from_name(words[4]));
      return d.allow ? "OK allow" : "OK deny " + d.reason;
    }
    if (verb == "EVENT") {
      if (words.size() < 3) return "ERR parse";
      EventType type = event_type_from_name(words[1]);
      uint64_t id = parse_session_id(words[2]);
      std::string payload;
      for (size_t i = 3; i < words.size(); ++i) {
        if (i > 3) payload += ' ';
        payload += words[i];
      }
      DispatchResult r = engine_.dispatch_event(type, id, payload);
      return "OK actions=" + std::to_string(r.actions.size()) +
             " failures=" + std::to_string(r.failures.size());
    }
    if (verb == "RENDER") {
      if (words.size() != 3 || words[2].rfind("session=", 0) != 0) return "ERR parse";
      uint64_t id = parse_session_id(words[2].substr(8));
      RenderedView rv = engine_.render_view(words[1], id);
      return "OK " + std::to_string(rv.body.size()) + " " + escape_text(rv.body);
    }
    if (verb == "TICK") {
      if (words.size() != 1) return "ERR parse";
      uint64_t before = engine_.rerenders().size();
      engine_.execute(TickStmt{});
      uint64_t fired = engine_.rerenders().size() - before;
      return "OK tick=" + std::to_string(engine_.ticks()) +
             " rerendered=" + std::to_string(fired);
    }
    if (verb == "REFRESH") {
      if (words.size() != 2) return "ERR parse";
      engine_.execute(RefreshStmt{words[1]});
      return "OK rerendered=1";
    }
    return "ERR parse";
  } catch (const EngineError& e) {
    return std::string("ERR ") + errc_name(e.code());
  } catch (const ParseError&) {
    return "ERR parse";
  } catch (const std::exception&) {
    return "ERR parse";
  }
}

}  // namespace ocp
