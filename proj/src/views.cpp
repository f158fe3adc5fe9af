#include "ocp/views.hpp"

#include "ocp/eval.hpp"

namespace ocp {

const char* visibility_name(Visibility v) {
  switch (v) {
    case Visibility::public_site: return "public";
    case Visibility::registered: return "registered";
    case Visibility::corporate: return "corporate";
  }
  return "?";
}

std::string render_body(const Repository& repo, const ViewDefinition& view,
                        const std::string& device, const ViewTemplate& tmpl,
                        const std::vector<std::pair<std::string, std::string>>& profile_lines,
                        uint64_t as_of) {
  auto matches = comprehend(repo, view.where, "x", DomainSpec::named(view.from_concept));

  std::string body;
  for (const auto& section : tmpl.sections) {
    if (section == "header") {
      body += "view: " + view.name + "\n";
      body += "device: " + device + "\n";
      for (const auto& [label, value] : profile_lines) body += label + ": " + value + "\n";
      body += "as-of: " + std::to_string(as_of) + "\n";
    } else if (section == "columns") {
      body += "columns:";
      for (size_t i = 0; i < view.projection.size(); ++i)
        body += (i ? " | " : " ") + view.projection[i];
      body += "\n";
    } else if (section == "rows") {
      int64_t emitted = 0;
      for (const auto& element : matches) {
        if (emitted >= tmpl.max_rows) break;
        uint64_t oid = std::get<ObjectRef>(element).id;
        body += "row:";
        for (size_t i = 0; i < view.projection.size(); ++i) {
          Value v = repo.attribute_value(oid, view.projection[i]);
          body += (i ? " | " : " ") + to_text(v);
        }
        body += "\n";
        ++emitted;
      }
    } else if (section == "summary") {
      body += "count: " + std::to_string(matches.size()) + "\n";
    } else if (section == "multimedia") {
      if (tmpl.multimedia) body += "multimedia: enabled\n";
    }
  }
  return body;
}

}  // namespace ocp
