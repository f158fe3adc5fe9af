#include "ocp/schema.hpp"

#include <algorithm>
#include <set>

namespace ocp {

std::string type_name(const TypeTag& t) {
  switch (t.kind) {
    case TypeTag::Kind::boolean: return "bool";
    case TypeTag::Kind::integer: return "int";
    case TypeTag::Kind::text: return "text";
    case TypeTag::Kind::enumeration: return t.name;
    case TypeTag::Kind::concept_ref: return t.name;
  }
  return "?";
}

const AttributeDef* ConceptDef::find_attribute(const std::string& attr) const {
  for (const auto& a : attributes)
    if (a.name == attr) return &a;
  return nullptr;
}

bool ConceptDef::is_identifying(const std::string& attr) const {
  return std::find(identifying.begin(), identifying.end(), attr) != identifying.end();
}

void ConceptDef::validate() const {
  if (name.empty()) fail(Errc::bad_spec, "concept name empty");
  std::set<std::string> seen;
  for (const auto& a : attributes) {
    if (!seen.insert(a.name).second)
      fail(Errc::bad_spec, "duplicate attribute '" + a.name + "' in concept " + name);
    if (a.range.kind == TypeTag::Kind::enumeration) {
      if (a.range.values.empty())
        fail(Errc::bad_spec, "enum '" + a.range.name + "' has no values");
      std::set<std::string> vals(a.range.values.begin(), a.range.values.end());
      if (vals.size() != a.range.values.size())
        fail(Errc::bad_spec, "enum '" + a.range.name + "' has duplicate values");
    }
  }
  if (identifying.empty()) fail(Errc::bad_spec, "concept " + name + " has no identifying attributes");
  for (const auto& k : identifying)
    if (!find_attribute(k))
      fail(Errc::bad_spec, "identifying attribute '" + k + "' not declared in concept " + name);
}

}  // namespace ocp
