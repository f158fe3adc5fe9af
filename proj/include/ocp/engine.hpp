#ifndef OCP_ENGINE_HPP
#define OCP_ENGINE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ocp/access.hpp"
#include "ocp/config.hpp"
#include "ocp/eval.hpp"
#include "ocp/profile.hpp"
#include "ocp/repository.hpp"
#include "ocp/statement.hpp"
#include "ocp/views.hpp"

namespace ocp {

struct LogRecord {
  uint64_t position = 0;
  std::string repo;  // repository context the statement was applied under
  std::string text;  // canonical statement text
};

// One change-stream entry. Every applied statement produces exactly one
// event (operation "none" when no data object changed), so event positions
// are contiguous log positions.
struct ChangeEvent {
  uint64_t position = 0;
  std::string repository;
  std::string operation = "none";
  std::optional<ObjectRef> ref;
  std::string concept_name;
  std::string predicate;
  bool content_critical = false;
};

struct RerenderRecord {
  uint64_t position = 0;
  std::string view;
  std::string reason;  // register | automatic | periodic | manual
};

struct DispatchResult {
  struct Failure {
    std::string scenario;
    size_t step = 0;  // 1-based index of the failing step
    std::string reason;
  };
  std::vector<std::string> actions;
  std::vector<Failure> failures;
};

// The single-writer command engine: repositories, profile registry, access
// gate, views and the append-only log. All mutations flow through
// execute(), which assigns a log position, persists the canonical statement
// text and drives change propagation.
class Engine {
 public:
  explicit Engine(EngineConfig config = {});

  // --- command input ---
  void load_file(const std::string& path);
  void load_text(const std::string& source, const std::string& filename = "<input>");
  uint64_t execute(const Statement& stmt);
  uint64_t execute_in(const Statement& stmt, const std::string& repo_ctx);
  uint64_t execute_text(const std::string& text);

  // --- repositories ---
  bool has_repo(const std::string& name) const { return repos_.count(name) > 0; }
  Repository& repo(const std::string& name);
  const Repository& repo(const std::string& name) const;
  Repository& current_repo() { return repo(current_repo_); }
  const std::string& current_repo_name() const { return current_repo_; }
  std::vector<std::string> repo_names() const;

  // --- tower ---
  std::vector<uint64_t> extension_of(const std::string& repo_name, const ObjectRef& meta_ref);
  Described describe_object(const std::string& repo_name, const ObjectRef& ref);

  // --- profiles ---
  ProfileRegistry& profiles() { return profiles_; }
  const ProfileRegistry& profiles() const { return profiles_; }

  // --- sessions / access gate ---
  uint64_t open_session(const std::string& user, DispatchResult* login_result = nullptr);
  void close_session(uint64_t id);
  const Session& session(uint64_t id) const { return sessions_.require(id); }
  Decision check_access(uint64_t session_id, const std::string& repo_name, AccessKind kind,
                        AccessOp op) const;
  DispatchResult dispatch_event(EventType type, uint64_t session_id,
                                const std::string& payload = "");
  AccessMatrix& access_matrix() { return matrix_; }
  const AccessMatrix& access_matrix() const { return matrix_; }
  const std::vector<ScriptBinding>& bindings() const { return bindings_; }
  const std::map<std::string, Scenario>& scenarios() const { return scenarios_; }

  // --- views / publishing ---
  const ViewDefinition& view(const std::string& name) const;
  std::vector<std::string> view_names() const;
  RenderedView render_view(const std::string& view_name, uint64_t session_id);
  const RenderedView& materialized(const std::string& view_name, const std::string& device) const;
  const std::map<std::string, std::map<std::string, RenderedView>>& materialized_views() const {
    return rendered_;
  }
  std::vector<std::string> visible_views(uint64_t session_id) const;
  std::vector<std::string> on_change(const ChangeEvent& event);
  uint64_t ticks() const { return ticks_; }
  const std::vector<RerenderRecord>& rerenders() const { return rerenders_; }

  // --- log / replay ---
  const std::vector<LogRecord>& log() const { return log_; }
  uint64_t position() const { return log_.size(); }
  void attach_log_file(const std::string& path);
  void load_log_file(const std::string& path, std::optional<uint64_t> to = std::nullopt);
  void replay_records(const std::vector<LogRecord>& records,
                      std::optional<uint64_t> to = std::nullopt);
  void flush_log();
  static std::vector<LogRecord> read_log_file(const std::string& path);

  const EngineConfig& config() const { return config_; }

 private:
  struct Effects {
    std::optional<ChangeEvent> event;
    bool is_tick = false;
    std::optional<std::string> refresh_view;
    std::optional<std::string> new_view;
  };

  Effects apply(const Statement& stmt, const std::string& repo_ctx, uint64_t pos);
  Effects apply_one(const RepositoryStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const ContentCriticalStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const EnumStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const ConceptStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const IndividualStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const StateStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const MetaStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const PredicateStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const ConstantStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const FactStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const ScenarioStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const CoordinateStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const GeneralizedStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const CostModelStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const ProfileUserStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const RoleAssignStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const GrantStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const BindStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const ViewStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const TickStmt& s, Repository& ctx, uint64_t pos);
  Effects apply_one(const RefreshStmt& s, Repository& ctx, uint64_t pos);

  void append_log(uint64_t pos, const std::string& repo_ctx, std::string text);
  Repository& ensure_repo(const std::string& name, uint64_t pos);

  Value ground_term(Repository& r, const TermExpr& t) const;
  std::map<std::string, Value> ground_assigns(Repository& r, const AssignList& assigns) const;
  GeneralizedValue make_generalized(const GvSpec& spec) const;

  void register_view(const ViewStmt& stmt, uint64_t pos);
  void rerender(const std::string& view_name, const std::string& reason, uint64_t pos);
  bool view_depends_on(const ViewDefinition& v, const ChangeEvent& event) const;
  std::string registration_of(const Session& s) const;
  bool visibility_allows(const ViewDefinition& v, const Session& s) const;

  EngineConfig config_;
  std::map<std::string, std::unique_ptr<Repository>> repos_;
  std::string current_repo_ = "main";

  ProfileRegistry profiles_;
  AccessMatrix matrix_;
  SessionManager sessions_;
  std::map<std::string, Scenario> scenarios_;
  std::vector<ScriptBinding> bindings_;

  std::map<std::string, ViewDefinition> views_;
  std::map<std::string, std::map<std::string, RenderedView>> rendered_;  // view -> device
  std::vector<RerenderRecord> rerenders_;
  uint64_t ticks_ = 0;
  uint64_t last_event_position_ = 0;

  std::vector<LogRecord> log_;
  std::unique_ptr<std::ofstream> log_file_;
};

}  // namespace ocp

#endif
