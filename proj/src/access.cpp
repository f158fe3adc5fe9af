#include "ocp/access.hpp"

#include "ocp/errors.hpp"

namespace ocp {

Role role_from_name(const std::string& name) {
  if (name == "administrator") return Role::administrator;
  if (name == "manager") return Role::manager;
  if (name == "ordinary") return Role::ordinary;
  if (name == "web-designer") return Role::web_designer;
  if (name == "content-manager") return Role::content_manager;
  fail(Errc::bad_spec, "unknown role '" + name + "'");
}

const char* role_name(Role role) {
  switch (role) {
    case Role::administrator: return "administrator";
    case Role::manager: return "manager";
    case Role::ordinary: return "ordinary";
    case Role::web_designer: return "web-designer";
    case Role::content_manager: return "content-manager";
  }
  return "?";
}

AccessKind access_kind_from_name(const std::string& name) {
  if (name == "data") return AccessKind::data;
  if (name == "metadata") return AccessKind::metadata;
  fail(Errc::parse, "unknown access kind '" + name + "'");
}

AccessOp access_op_from_name(const std::string& name) {
  if (name == "read") return AccessOp::read;
  if (name == "write") return AccessOp::write;
  fail(Errc::parse, "unknown access op '" + name + "'");
}

const char* access_kind_name(AccessKind k) { return k == AccessKind::data ? "data" : "metadata"; }
const char* access_op_name(AccessOp op) { return op == AccessOp::read ? "read" : "write"; }

Rights Rights::parse(const std::string& text) {
  if (text == "none") return {false, false};
  if (text == "r") return {true, false};
  if (text == "w") return {false, true};
  if (text == "rw") return {true, true};
  fail(Errc::parse, "rights must be none|r|w|rw, got '" + text + "'");
}

AccessMatrix::AccessMatrix() {
  rows_[Role::administrator][AccessKind::data] = {true, true};
  rows_[Role::administrator][AccessKind::metadata] = {true, true};
  rows_[Role::manager][AccessKind::data] = {true, true};
  rows_[Role::manager][AccessKind::metadata] = {true, false};
  rows_[Role::ordinary][AccessKind::data] = {false, false};
  rows_[Role::ordinary][AccessKind::metadata] = {false, false};
  rows_[Role::web_designer][AccessKind::data] = {false, false};
  rows_[Role::web_designer][AccessKind::metadata] = {false, false};
  rows_[Role::content_manager][AccessKind::data] = {false, false};
  rows_[Role::content_manager][AccessKind::metadata] = {false, false};
}

void AccessMatrix::grant(Role role, AccessOp op, AccessKind kind, const std::string& repo) {
  grants_[role].insert({repo, kind, op});
}

void AccessMatrix::override_row(Role role, AccessKind kind, Rights rights) {
  rows_[role][kind] = rights;
}

void AccessMatrix::set_special_repo(Role role, std::string repo) {
  if (role == Role::web_designer) web_designer_repo_ = std::move(repo);
  else if (role == Role::content_manager) content_manager_repo_ = std::move(repo);
  else fail(Errc::bad_spec, std::string(role_name(role)) + " has no special repository");
}

const std::string& AccessMatrix::special_repo(Role role) const {
  if (role == Role::web_designer) return web_designer_repo_;
  if (role == Role::content_manager) return content_manager_repo_;
  fail(Errc::bad_spec, std::string(role_name(role)) + " has no special repository");
}

bool AccessMatrix::granted(Role role, const std::string& repo, AccessKind kind,
                           AccessOp op) const {
  auto it = grants_.find(role);
  if (it == grants_.end()) return false;
  return it->second.count({repo, kind, op}) > 0 || it->second.count({"*", kind, op}) > 0;
}

bool AccessMatrix::allows(Role role, const std::string& repo, AccessKind kind,
                          AccessOp op) const {
  if (rows_.at(role).at(kind).allows(op)) return true;
  if (granted(role, repo, kind, op)) return true;
  if (role == Role::web_designer || role == Role::content_manager) {
    if (repo == special_repo(role)) return true;  // full data + metadata access
    // specializations keep the ordinary baseline elsewhere
    if (rows_.at(Role::ordinary).at(kind).allows(op)) return true;
    if (granted(Role::ordinary, repo, kind, op)) return true;
  }
  return false;
}

SessionManager::SessionManager() {
  Session system;
  system.id = kSystemSession;
  system.user = "system";
  system.profile.user = "system";
  system.profile.role = "administrator";
  system.open = true;
  sessions_.emplace(kSystemSession, std::move(system));
}

Session& SessionManager::open(const std::string& user, UserProfile profile, uint64_t pos) {
  Session s;
  s.id = next_id_++;
  s.user = user;
  s.profile = std::move(profile);
  s.opened_at = pos;
  uint64_t id = s.id;
  return sessions_.emplace(id, std::move(s)).first->second;
}

void SessionManager::close(uint64_t id, uint64_t pos) {
  auto it = sessions_.find(id);
  if (it == sessions_.end()) fail(Errc::unknown_session, "session " + std::to_string(id));
  if (!it->second.open) fail(Errc::already_closed, "session " + std::to_string(id));
  it->second.open = false;
  it->second.closed_at = pos;
}

const Session* SessionManager::find(uint64_t id) const {
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : &it->second;
}

const Session& SessionManager::require(uint64_t id) const {
  const Session* s = find(id);
  if (!s) fail(Errc::unknown_session, "session " + std::to_string(id));
  return *s;
}

Decision authorize(const AccessMatrix& matrix, const Session& session, const std::string& repo,
                   AccessKind kind, AccessOp op) {
  if (!session.open) return Decision::denied("closed-session");
  Role role = role_from_name(session.profile.role);
  if (matrix.allows(role, repo, kind, op)) return Decision::allowed();
  return Decision::denied("no-grant");
}

EventType event_type_from_name(const std::string& name) {
  if (name == "login") return EventType::login;
  if (name == "data-change") return EventType::data_change;
  if (name == "view-request") return EventType::view_request;
  if (name == "timer") return EventType::timer;
  fail(Errc::parse, "unknown event type '" + name + "'");
}

const char* event_type_name(EventType t) {
  switch (t) {
    case EventType::login: return "login";
    case EventType::data_change: return "data-change";
    case EventType::view_request: return "view-request";
    case EventType::timer: return "timer";
  }
  return "?";
}

}  // namespace ocp
