#ifndef OCP_ERRORS_HPP
#define OCP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ocp {

enum class Errc {
  // schema / calculus
  duplicate_concept,
  bad_spec,
  duplicate_identity,
  unknown_concept,
  type_mismatch,
  unknown_individual,
  identity_mutation,
  infinite_domain,
  unbound_variable,
  unknown_domain,
  no_witness,
  ambiguous,
  out_of_domain,
  // metadata tower
  unknown_level,
  name_clash,
  unknown_object,
  // frame network
  duplicate_name,
  unknown_predicate,
  unresolved_term,
  // profile engine
  unknown_coordinate,
  value_out_of_range,
  unresolved_cost,
  // access gate
  unknown_user,
  unknown_session,
  already_closed,
  closed_session,
  no_grant,
  script_failure,
  // publisher
  bad_definition,
  duplicate_view,
  unknown_view,
  denied,
  out_of_order_event,
  corrupt_log,
  bind_failure,
  load_error,
  // protocol
  parse,
};

// Stable kebab-case name, used in protocol ERR lines and test assertions.
const char* errc_name(Errc code);

class EngineError : public std::runtime_error {
 public:
  EngineError(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw EngineError(code, msg);
}

}  // namespace ocp

#endif
