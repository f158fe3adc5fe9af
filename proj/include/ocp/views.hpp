#ifndef OCP_VIEWS_HPP
#define OCP_VIEWS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ocp/formula.hpp"
#include "ocp/repository.hpp"

namespace ocp {

struct ViewTemplate {
  std::vector<std::string> sections = {"header", "columns", "rows", "summary"};
  int64_t max_rows = 100;
  bool multimedia = false;
};

enum class UpdateMode { automatic, periodic, manual };

struct UpdatePolicy {
  UpdateMode mode = UpdateMode::automatic;
  int64_t interval = 0;  // >= 1 when periodic
};

enum class Visibility { public_site, registered, corporate };

const char* visibility_name(Visibility v);

struct ViewDefinition {
  std::string name;
  std::string repository;
  std::string from_concept;
  Formula where;  // resolved; self variable "x"
  std::vector<std::string> projection;
  std::map<std::string, ViewTemplate> templates;  // device value -> template
  UpdatePolicy policy;
  Visibility visibility = Visibility::public_site;

  // Static dependency over-approximation, computed at registration.
  std::set<std::string> source_concepts;
  std::set<std::string> source_predicates;
};

// A materialized or per-session render. The body is a canonical text
// document, a pure function of (definition, profile coordinates, snapshot).
struct RenderedView {
  std::string view;
  std::string device;
  std::vector<std::pair<std::string, std::string>> profile_lines;  // personalized renders
  std::string body;
  uint64_t position = 0;
};

// Builds the canonical body. Rows are the comprehension result projected and
// ordered by oid; the template drives section order, truncation and the
// multimedia flag.
std::string render_body(const Repository& repo, const ViewDefinition& view,
                        const std::string& device, const ViewTemplate& tmpl,
                        const std::vector<std::pair<std::string, std::string>>& profile_lines,
                        uint64_t as_of);

}  // namespace ocp

#endif
