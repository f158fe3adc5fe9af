#ifndef OCP_META_HPP
#define OCP_META_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ocp/formula.hpp"
#include "ocp/value.hpp"

namespace ocp {

// Descriptor vocabulary is fixed; arbitrary keys are rejected at parse time.
inline const std::vector<std::string>& descriptor_keys() {
  static const std::vector<std::string> keys = {
      "dimensions", "integrity-constraints", "access-rights", "display-hints"};
  return keys;
}

// A level-(j+1) predicate character over level-j objects. The extension is a
// cache stamped with the log position it was computed at; any lower-level
// write with a later position makes it stale.
struct MetaObject {
  uint64_t id = 0;
  std::string name;
  int32_t level = 1;                      // j+1
  Formula defining;                       // over level j, self variable "x"
  std::optional<std::string> over_concept;  // level 1 only: restrict domain to a concept extent
  std::map<std::string, std::string> descriptors;

  std::vector<uint64_t> extension;        // level-j object ids, ascending
  uint64_t cached_at = 0;                 // log position of last recomputation
};

}  // namespace ocp

#endif
