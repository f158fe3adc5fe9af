#include "ocp/statement.hpp"

namespace ocp {

namespace {

std::string quoted(const std::string& s) { return "\"" + escape_text(s) + "\""; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string assigns_text(const AssignList& assigns) {
  std::string out;
  for (size_t i = 0; i < assigns.size(); ++i) {
    if (i) out += ", ";
    out += assigns[i].first + " = " + to_text(assigns[i].second);
  }
  return out;
}

std::string gv_spec_text(const GvSpec& spec) {
  std::string out = "over (" + join(spec.coords, ", ") + ") { ";
  for (size_t i = 0; i < spec.entries.size(); ++i) {
    if (i) out += ", ";
    const auto& [tuple, v] = spec.entries[i];
    if (spec.coords.empty()) {
      out += to_text(v);
    } else if (tuple.size() == 1) {
      out += tuple[0] + ": " + to_text(v);
    } else {
      out += "(" + join(tuple, ", ") + "): " + to_text(v);
    }
  }
  return out + " }";
}

struct Printer {
  std::string operator()(const RepositoryStmt& s) const { return "repository " + s.name; }
  std::string operator()(const ContentCriticalStmt& s) const {
    return "content-critical " + s.concept_name;
  }
  std::string operator()(const EnumStmt& s) const {
    return "enum " + s.name + " { " + join(s.values, ", ") + " }";
  }
  std::string operator()(const ConceptStmt& s) const {
    std::string out = "concept " + s.def.name + " { ";
    for (size_t i = 0; i < s.def.attributes.size(); ++i) {
      if (i) out += "; ";
      const auto& a = s.def.attributes[i];
      out += a.name + ": " + type_name(a.range);
      if (s.def.is_identifying(a.name)) out += " key";
    }
    return out + " }";
  }
  std::string operator()(const IndividualStmt& s) const {
    return "individual " + s.concept_name + " { " + assigns_text(s.assigns) + " }";
  }
  std::string operator()(const StateStmt& s) const {
    std::vector<std::string> key;
    for (const auto& v : s.identity) key.push_back(to_text(v));
    return "state " + s.concept_name + "[" + join(key, ", ") + "] cause " + quoted(s.cause) +
           " { " + assigns_text(s.updates) + " }";
  }
  std::string operator()(const MetaStmt& s) const {
    std::string out = "meta " + s.name + " level " + std::to_string(s.level) + " over ";
    if (s.over_concept) out += *s.over_concept;
    else out += "level " + std::to_string(s.over_level.value_or(s.level - 1));
    out += " where " + to_text(s.where);
    if (!s.descriptors.empty()) {
      out += " { ";
      for (size_t i = 0; i < s.descriptors.size(); ++i) {
        if (i) out += ", ";
        out += s.descriptors[i].first + " = " + quoted(s.descriptors[i].second);
      }
      out += " }";
    }
    return out;
  }
  std::string operator()(const PredicateStmt& s) const { return "predicate " + s.name; }
  std::string operator()(const ConstantStmt& s) const {
    return "constant " + s.name + " = " + to_text(s.value);
  }
  std::string operator()(const FactStmt& s) const {
    return std::string(s.retract ? "retract " : "fact ") + s.predicate + "(" +
           to_text(s.subject) + ", " + to_text(s.object) + ")";
  }
  std::string operator()(const ScenarioStmt& s) const {
    std::string out = "scenario " + s.name + " when " + to_text(s.guard) + " do ";
    for (size_t i = 0; i < s.steps.size(); ++i) {
      if (i) out += "; ";
      out += to_text(s.steps[i]);
    }
    return out;
  }
  std::string operator()(const CoordinateStmt& s) const {
    return "coordinate " + s.name + " { " + join(s.values, ", ") + " }";
  }
  std::string operator()(const GeneralizedStmt& s) const {
    return "generalized " + s.name + " " + gv_spec_text(s.spec);
  }
  std::string operator()(const CostModelStmt& s) const {
    std::string out = "cost model " + s.name + " { ";
    for (size_t i = 0; i < s.stages.size(); ++i) {
      if (i) out += "; ";
      const auto& st = s.stages[i];
      out += "stage l=" + std::to_string(st.duration) + " q";
      if (st.overhead_ref) out += "=" + *st.overhead_ref;
      else out += " " + gv_spec_text(st.overhead);
    }
    return out + " }";
  }
  std::string operator()(const ProfileUserStmt& s) const {
    std::string out = "profile user " + quoted(s.user) + " { ";
    for (size_t i = 0; i < s.coordinates.size(); ++i) {
      if (i) out += ", ";
      out += s.coordinates[i].first + " = " + s.coordinates[i].second;
    }
    return out + " }";
  }
  std::string operator()(const RoleAssignStmt& s) const {
    return "role for " + quoted(s.user) + " = " + s.role;
  }
  std::string operator()(const GrantStmt& s) const {
    return "grant " + s.role + " " + s.op + " " + s.kind + " " + s.repo;
  }
  std::string operator()(const BindStmt& s) const {
    std::string out = "bind on " + s.event;
    std::vector<std::string> guards;
    if (s.role_guard) guards.push_back("role " + *s.role_guard);
    for (const auto& [c, v] : s.coordinate_guards) guards.push_back(c + " = " + v);
    if (!guards.empty()) out += " when " + join(guards, ", ");
    return out + " run " + s.scenario;
  }
  std::string operator()(const ViewStmt& s) const {
    std::string out = "view " + s.name + " over " + s.repo + " { from " + s.from_concept;
    if (s.where) out += " where " + to_text(*s.where);
    out += "; project (" + join(s.projection, ", ") + ")";
    out += "; update " + s.mode;
    if (s.mode == "periodic") out += " " + std::to_string(s.interval);
    out += "; visibility " + s.visibility;
    for (const auto& t : s.templates) {
      out += "; template " + t.device + " { sections = [" + join(t.sections, ", ") +
             "]; max-rows = " + std::to_string(t.max_rows) +
             "; multimedia = " + (t.multimedia ? "true" : "false") + " }";
    }
    return out + " }";
  }
  std::string operator()(const TickStmt&) const { return "tick"; }
  std::string operator()(const RefreshStmt& s) const { return "refresh " + s.view; }
};

}  // namespace

std::string to_dsl(const Statement& stmt) { return std::visit(Printer{}, stmt); }

}  // namespace ocp
