#ifndef OCP_STATEMENT_HPP
#define OCP_STATEMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ocp/formula.hpp"
#include "ocp/frames.hpp"
#include "ocp/schema.hpp"
#include "ocp/value.hpp"

namespace ocp {

// One engine command. Every state change — whether typed by a user, loaded
// from a model file, or synthesized by a scenario step — is a Statement; the
// persistence log stores their canonical text.

struct RepositoryStmt { std::string name; };
struct ContentCriticalStmt { std::string concept_name; };
struct EnumStmt {
  std::string name;
  std::vector<std::string> values;
};
struct ConceptStmt { ConceptDef def; };
// Assignment right-hand sides are terms: literals, bare enum symbols, or
// Concept[identity] references grounded at apply time.
using AssignList = std::vector<std::pair<std::string, TermExpr>>;

struct IndividualStmt {
  std::string concept_name;
  AssignList assigns;
};
struct StateStmt {
  std::string concept_name;
  std::vector<Value> identity;
  std::string cause;
  AssignList updates;
};
struct MetaStmt {
  std::string name;
  int32_t level = 1;  // the meta object's own level (defined over level-1)
  std::optional<std::string> over_concept;  // exclusive with over_level
  std::optional<int32_t> over_level;
  Formula where;
  std::vector<std::pair<std::string, std::string>> descriptors;
};
struct PredicateStmt { std::string name; };
struct ConstantStmt {
  std::string name;
  TermExpr value;  // literal or symbolic ref
};
struct FactStmt {
  std::string predicate;
  TermExpr subject;
  TermExpr object;
  bool retract = false;
};
struct ScenarioStmt {
  std::string name;
  Formula guard;
  std::vector<ScenarioStep> steps;
};
struct CoordinateStmt {
  std::string name;
  std::vector<std::string> values;
};
struct GvSpec {
  std::vector<std::string> coords;
  std::vector<std::pair<std::vector<std::string>, Value>> entries;
};
struct GeneralizedStmt {
  std::string name;
  GvSpec spec;
};
struct CostStageSpec {
  int64_t duration = 0;
  std::optional<std::string> overhead_ref;  // named generalized value
  GvSpec overhead;                          // inline spec otherwise
};
struct CostModelStmt {
  std::string name;
  std::vector<CostStageSpec> stages;
};
struct ProfileUserStmt {
  std::string user;
  std::vector<std::pair<std::string, std::string>> coordinates;
};
struct RoleAssignStmt {
  std::string user;
  std::string role;
};
struct GrantStmt {
  std::string role;
  std::string op;    // read | write
  std::string kind;  // data | metadata
  std::string repo;
};
struct BindStmt {
  std::string event;
  std::optional<std::string> role_guard;
  std::vector<std::pair<std::string, std::string>> coordinate_guards;
  std::string scenario;
};
struct ViewTemplateSpec {
  std::string device;
  std::vector<std::string> sections = {"header", "columns", "rows", "summary"};
  int64_t max_rows = 100;
  bool multimedia = false;
};
struct ViewStmt {
  std::string name;
  std::string repo;
  std::string from_concept;
  std::optional<Formula> where;
  std::vector<std::string> projection;
  std::string mode = "automatic";  // automatic | periodic | manual
  int64_t interval = 0;
  std::string visibility = "public";  // public | registered | corporate
  std::vector<ViewTemplateSpec> templates;
};
struct TickStmt {};
struct RefreshStmt { std::string view; };

using Statement =
    std::variant<RepositoryStmt, ContentCriticalStmt, EnumStmt, ConceptStmt, IndividualStmt,
                 StateStmt, MetaStmt, PredicateStmt, ConstantStmt, FactStmt, ScenarioStmt,
                 CoordinateStmt, GeneralizedStmt, CostModelStmt, ProfileUserStmt, RoleAssignStmt,
                 GrantStmt, BindStmt, ViewStmt, TickStmt, RefreshStmt>;

// Canonical single-line text; parsing it yields an equal statement.
std::string to_dsl(const Statement& stmt);

}  // namespace ocp

#endif
