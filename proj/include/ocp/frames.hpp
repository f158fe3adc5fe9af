#ifndef OCP_FRAMES_HPP
#define OCP_FRAMES_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ocp/formula.hpp"
#include "ocp/value.hpp"

namespace ocp {

// The semantic-network language: dyadic predicate names plus named constants
// bound to literals or object refs.
struct Language {
  std::set<std::string> predicates;
  std::map<std::string, Value> constants;
};

// Assignment of pair sets to predicates; the index of frame evaluation.
// Ground values only; std::set keeps a canonical order.
struct Interpretation {
  std::map<std::string, std::set<std::pair<Value, Value>>> facts;

  bool holds(const std::string& predicate, const Value& subject, const Value& object) const {
    auto it = facts.find(predicate);
    return it != facts.end() && it->second.count({subject, object}) > 0;
  }
};

// One scenario step. Arguments are stored as unresolved terms and grounded
// when the step runs under a session.
struct ScenarioStep {
  enum class Kind { assert_frame, transition_state, render_view, deny };

  Kind kind = Kind::deny;
  std::string predicate;            // assert_frame
  std::vector<TermExpr> args;       // assert_frame: subject, object
  std::string concept_name;         // transition_state
  std::vector<Value> identity;      // transition_state target
  std::string cause;                // transition_state
  std::vector<std::pair<std::string, TermExpr>> updates;  // transition_state
  std::string view;                 // render_view
  std::string reason;               // deny
};

std::string to_text(const ScenarioStep& s);

struct Scenario {
  std::string name;
  Formula guard;                    // closed up to reserved constants
  std::vector<ScenarioStep> steps;  // nonempty
  std::string repository;           // owning repository for guard/step resolution
};

}  // namespace ocp

#endif
