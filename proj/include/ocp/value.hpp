#ifndef OCP_VALUE_HPP
#define OCP_VALUE_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "ocp/errors.hpp"

namespace ocp {

// Reference to an object in the tower: level 0 = individuals (id = oid),
// level j >= 1 = meta objects (id unique within its level).
struct ObjectRef {
  int32_t level = 0;
  uint64_t id = 0;

  auto operator<=>(const ObjectRef&) const = default;
};

// One runtime value. monostate marks an unset attribute; enum values are
// carried as their text symbol. Variant order fixes the canonical cross-kind
// ordering (null < bool < int < text < ref), which keeps all comparisons
// total and every formula decidable.
using Value = std::variant<std::monostate, bool, int64_t, std::string, ObjectRef>;

inline Value null_value() { return Value(std::monostate{}); }

inline bool is_null(const Value& v) { return std::holds_alternative<std::monostate>(v); }

// Canonical text form; round-trips through the DSL literal syntax.
std::string to_text(const Value& v);

// Escapes a string body for a double-quoted DSL literal.
std::string escape_text(const std::string& s);
std::string unescape_text(const std::string& s);

// Table lookup ||<f,x>|| = f(x); throws out_of_domain when x is not in the
// definition area of f.
const Value& apply_mapping(const std::map<Value, Value>& f, const Value& x);

}  // namespace ocp

#endif
