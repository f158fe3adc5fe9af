#include "ocp/frames.hpp"

namespace ocp {

std::string to_text(const ScenarioStep& s) {
  switch (s.kind) {
    case ScenarioStep::Kind::assert_frame:
      return "assert-frame(" + s.predicate + ", " + to_text(s.args[0]) + ", " +
             to_text(s.args[1]) + ")";
    case ScenarioStep::Kind::transition_state: {
      std::string out = "transition-state(" + s.concept_name + "[";
      for (size_t i = 0; i < s.identity.size(); ++i) {
        if (i) out += ", ";
        out += to_text(s.identity[i]);
      }
      out += "], \"" + escape_text(s.cause) + "\", { ";
      for (size_t i = 0; i < s.updates.size(); ++i) {
        if (i) out += ", ";
        out += s.updates[i].first + " = " + to_text(s.updates[i].second);
      }
      return out + " })";
    }
    case ScenarioStep::Kind::render_view:
      return "render-view(\"" + escape_text(s.view) + "\")";
    case ScenarioStep::Kind::deny:
      return "deny(\"" + escape_text(s.reason) + "\")";
  }
  return "?";
}

}  // namespace ocp
