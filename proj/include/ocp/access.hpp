#ifndef OCP_ACCESS_HPP
#define OCP_ACCESS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ocp/profile.hpp"

namespace ocp {

enum class Role { administrator, manager, ordinary, web_designer, content_manager };

Role role_from_name(const std::string& name);
const char* role_name(Role role);

enum class AccessKind { data, metadata };
enum class AccessOp { read, write };

AccessKind access_kind_from_name(const std::string& name);
AccessOp access_op_from_name(const std::string& name);
const char* access_kind_name(AccessKind k);
const char* access_op_name(AccessOp op);

// Rights of one matrix row: which of read/write are allowed.
struct Rights {
  bool read = false;
  bool write = false;

  bool allows(AccessOp op) const { return op == AccessOp::read ? read : write; }
  static Rights parse(const std::string& text);  // none | r | w | rw
};

// Role -> (repository, kind, op) decision table. The wildcard rows carry the
// baseline hierarchy (administrators full, managers rw data / r metadata,
// ordinary nothing). Ordinary users see only what `grant` statements add;
// the two specializations inherit ordinary's grants plus full access to
// their own repository.
class AccessMatrix {
 public:
  AccessMatrix();

  void grant(Role role, AccessOp op, AccessKind kind, const std::string& repo);
  void override_row(Role role, AccessKind kind, Rights rights);
  void set_special_repo(Role role, std::string repo);
  const std::string& special_repo(Role role) const;

  bool allows(Role role, const std::string& repo, AccessKind kind, AccessOp op) const;

 private:
  bool granted(Role role, const std::string& repo, AccessKind kind, AccessOp op) const;

  std::map<Role, std::map<AccessKind, Rights>> rows_;
  std::map<Role, std::set<std::tuple<std::string, AccessKind, AccessOp>>> grants_;
  std::string web_designer_repo_ = "interface-elements";
  std::string content_manager_repo_ = "content";
};

struct Session {
  uint64_t id = 0;
  std::string user;
  UserProfile profile;  // immutable snapshot for the session lifetime
  uint64_t opened_at = 0;
  uint64_t closed_at = 0;
  bool open = true;
};

// The system session (id 0) backs timer events; it is always open and runs
// as administrator.
inline constexpr uint64_t kSystemSession = 0;

class SessionManager {
 public:
  SessionManager();

  Session& open(const std::string& user, UserProfile profile, uint64_t pos);
  void close(uint64_t id, uint64_t pos);
  const Session* find(uint64_t id) const;
  const Session& require(uint64_t id) const;
  const std::map<uint64_t, Session>& all() const { return sessions_; }

 private:
  std::map<uint64_t, Session> sessions_;
  uint64_t next_id_ = 1;
};

struct Decision {
  bool allow = false;
  std::string reason;  // closed-session | no-grant when denied

  static Decision allowed() { return {true, {}}; }
  static Decision denied(std::string why) { return {false, std::move(why)}; }
};

Decision authorize(const AccessMatrix& matrix, const Session& session, const std::string& repo,
                   AccessKind kind, AccessOp op);

enum class EventType { login, data_change, view_request, timer };

EventType event_type_from_name(const std::string& name);
const char* event_type_name(EventType t);

struct ScriptBinding {
  EventType event = EventType::login;
  std::optional<Role> role_guard;
  std::vector<std::pair<std::string, std::string>> coordinate_guards;
  std::string scenario;
};

}  // namespace ocp

#endif
