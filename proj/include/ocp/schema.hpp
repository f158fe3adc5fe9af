#ifndef OCP_SCHEMA_HPP
#define OCP_SCHEMA_HPP

#include <string>
#include <vector>

#include "ocp/value.hpp"

namespace ocp {

// Attribute range. Enum carries its value list inline; concept_ref points at
// another concept whose extent supplies the (finite) value set.
struct TypeTag {
  enum class Kind { boolean, integer, text, enumeration, concept_ref };

  Kind kind = Kind::text;
  std::string name;                 // enum or referenced-concept name
  std::vector<std::string> values;  // enumeration only; nonempty, duplicate-free

  static TypeTag boolean() { return {Kind::boolean, {}, {}}; }
  static TypeTag integer() { return {Kind::integer, {}, {}}; }
  static TypeTag text() { return {Kind::text, {}, {}}; }
  static TypeTag enumeration(std::string n, std::vector<std::string> vals) {
    return {Kind::enumeration, std::move(n), std::move(vals)};
  }
  static TypeTag concept_ref(std::string n) { return {Kind::concept_ref, std::move(n), {}}; }

  bool operator==(const TypeTag&) const = default;
};

std::string type_name(const TypeTag& t);

struct AttributeDef {
  std::string name;
  TypeTag range;
};

struct ConceptDef {
  std::string name;
  std::vector<AttributeDef> attributes;  // ordered; names unique
  std::vector<std::string> identifying;  // nonempty subset of attribute names

  const AttributeDef* find_attribute(const std::string& attr) const;
  bool is_identifying(const std::string& attr) const;

  // Checks the structural invariants; throws bad_spec on violation.
  void validate() const;
};

}  // namespace ocp

#endif
