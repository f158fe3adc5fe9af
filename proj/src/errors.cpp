#include "ocp/errors.hpp"

namespace ocp {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::duplicate_concept: return "duplicate-concept";
    case Errc::bad_spec: return "bad-spec";
    case Errc::duplicate_identity: return "duplicate-identity";
    case Errc::unknown_concept: return "unknown-concept";
    case Errc::type_mismatch: return "type-mismatch";
    case Errc::unknown_individual: return "unknown-individual";
    case Errc::identity_mutation: return "identity-mutation";
    case Errc::infinite_domain: return "infinite-domain";
    case Errc::unbound_variable: return "unbound-variable";
    case Errc::unknown_domain: return "unknown-domain";
    case Errc::no_witness: return "no-witness";
    case Errc::ambiguous: return "ambiguous";
    case Errc::out_of_domain: return "out-of-domain";
    case Errc::unknown_level: return "unknown-level";
    case Errc::name_clash: return "name-clash";
    case Errc::unknown_object: return "unknown-object";
    case Errc::duplicate_name: return "duplicate-name";
    case Errc::unknown_predicate: return "unknown-predicate";
    case Errc::unresolved_term: return "unresolved-term";
    case Errc::unknown_coordinate: return "unknown-coordinate";
    case Errc::value_out_of_range: return "value-out-of-range";
    case Errc::unresolved_cost: return "unresolved-cost";
    case Errc::unknown_user: return "unknown-user";
    case Errc::unknown_session: return "unknown-session";
    case Errc::already_closed: return "already-closed";
    case Errc::closed_session: return "closed-session";
    case Errc::no_grant: return "no-grant";
    case Errc::script_failure: return "script-failure";
    case Errc::bad_definition: return "bad-definition";
    case Errc::duplicate_view: return "duplicate-view";
    case Errc::unknown_view: return "unknown-view";
    case Errc::denied: return "denied";
    case Errc::out_of_order_event: return "out-of-order-event";
    case Errc::corrupt_log: return "corrupt-log";
    case Errc::bind_failure: return "bind-failure";
    case Errc::load_error: return "load-error";
    case Errc::parse: return "parse";
  }
  return "unknown";
}

}  // namespace ocp
