#ifndef OCP_CONFIG_HPP
#define OCP_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ocp {

// Engine settings, loadable from a plain `key = value` file. Unknown keys
// are rejected so typos surface early.
struct EngineConfig {
  int port = 7070;
  std::string log_path;
  int32_t max_level = 3;

  // Coordinate names wired into rendering and visibility.
  std::string device_coordinate = "e";
  std::string registration_coordinate = "p";
  std::string preferences_coordinate = "s";
  std::vector<std::string> registered_values = {"registered", "corporate"};
  std::string corporate_value = "corporate";

  // role -> kind -> rights (none|r|w|rw), applied over the baseline matrix.
  std::map<std::string, std::map<std::string, std::string>> matrix_overrides;
  // role -> repository for the web-designer / content-manager specializations.
  std::map<std::string, std::string> special_repos;
  // repository -> content-critical concepts, applied when the repository is created.
  std::map<std::string, std::vector<std::string>> content_critical;

  static EngineConfig from_file(const std::string& path);
  static EngineConfig from_text(const std::string& text, const std::string& filename = "<config>");
};

}  // namespace ocp

#endif
