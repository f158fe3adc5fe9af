#include "ocp/config.hpp"

#include <fstream>
#include <sstream>

#include "ocp/errors.hpp"

namespace ocp {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

EngineConfig EngineConfig::from_text(const std::string& text, const std::string& filename) {
  EngineConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      fail(Errc::load_error, filename + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));

    if (key == "port") cfg.port = std::stoi(value);
    else if (key == "log") cfg.log_path = value;
    else if (key == "max-level") cfg.max_level = std::stoi(value);
    else if (key == "device-coordinate") cfg.device_coordinate = value;
    else if (key == "registration-coordinate") cfg.registration_coordinate = value;
    else if (key == "preferences-coordinate") cfg.preferences_coordinate = value;
    else if (key == "registered-values") cfg.registered_values = split_list(value);
    else if (key == "corporate-value") cfg.corporate_value = value;
    else if (key.rfind("matrix.", 0) == 0) {
      std::string rest = key.substr(7);
      size_t dot = rest.find('.');
      if (dot == std::string::npos)
        fail(Errc::load_error, filename + ":" + std::to_string(lineno) +
                                   ": matrix override needs matrix.<role>.<kind>");
      cfg.matrix_overrides[rest.substr(0, dot)][rest.substr(dot + 1)] = value;
    } else if (key.rfind("special-repo.", 0) == 0) {
      cfg.special_repos[key.substr(13)] = value;
    } else if (key.rfind("content-critical.", 0) == 0) {
      cfg.content_critical[key.substr(17)] = split_list(value);
    } else {
      fail(Errc::load_error, filename + ":" + std::to_string(lineno) + ": unknown key '" + key +
                                 "'");
    }
  }
  return cfg;
}

EngineConfig EngineConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::load_error, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str(), path);
}

}  // namespace ocp
