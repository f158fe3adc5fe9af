#include "ocp/value.hpp"

namespace ocp {

std::string escape_text(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_text(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      ++i;
      switch (s[i]) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        default: out += s[i];
      }
    } else {
      out += s[i];
    }
  }
  return out;
}

std::string to_text(const Value& v) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(int64_t n) const { return std::to_string(n); }
    std::string operator()(const std::string& s) const { return "\"" + escape_text(s) + "\""; }
    std::string operator()(const ObjectRef& r) const {
      return "@" + std::to_string(r.level) + ":" + std::to_string(r.id);
    }
  };
  return std::visit(Visitor{}, v);
}

const Value& apply_mapping(const std::map<Value, Value>& f, const Value& x) {
  auto it = f.find(x);
  if (it == f.end()) fail(Errc::out_of_domain, to_text(x) + " not in definition area");
  return it->second;
}

}  // namespace ocp
