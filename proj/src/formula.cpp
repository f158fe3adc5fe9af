#include "ocp/formula.hpp"

namespace ocp {

std::string to_text(const DomainSpec& d) {
  if (d.kind == DomainSpec::Kind::level) return "level " + std::to_string(d.level);
  return d.name;
}

const char* compare_op_text(CompareOp op) {
  switch (op) {
    case CompareOp::eq: return "=";
    case CompareOp::ne: return "!=";
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
  }
  return "=";
}

std::string to_text(const TermExpr& t) {
  switch (t.kind) {
    case TermExpr::Kind::literal: return to_text(t.literal);
    case TermExpr::Kind::name:
    case TermExpr::Kind::variable:
    case TermExpr::Kind::constant: return t.name;
    case TermExpr::Kind::attribute: return t.name + "." + t.attribute;
    case TermExpr::Kind::symbolic_ref: {
      std::string out = t.ref_concept + "[";
      for (size_t i = 0; i < t.ref_identity.size(); ++i) {
        if (i) out += ", ";
        out += to_text(t.ref_identity[i]);
      }
      return out + "]";
    }
  }
  return "?";
}

std::string to_text(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::constant: return f.truth ? "true" : "false";
    case Formula::Kind::frame:
      return f.predicate + "(" + to_text(f.terms[0]) + ", " + to_text(f.terms[1]) + ")";
    case Formula::Kind::compare:
      return to_text(f.terms[0]) + " " + compare_op_text(f.op) + " " + to_text(f.terms[1]);
    case Formula::Kind::logical_not: return "not (" + to_text(f.children[0]) + ")";
    case Formula::Kind::logical_and: {
      std::string out = "(";
      for (size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += " and ";
        out += to_text(f.children[i]);
      }
      return out + ")";
    }
    case Formula::Kind::logical_or: {
      std::string out = "(";
      for (size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += " or ";
        out += to_text(f.children[i]);
      }
      return out + ")";
    }
    case Formula::Kind::exists:
      return "exists " + f.var + " in " + to_text(f.domain) + ": (" + to_text(f.children[0]) + ")";
    case Formula::Kind::forall:
      return "forall " + f.var + " in " + to_text(f.domain) + ": (" + to_text(f.children[0]) + ")";
  }
  return "?";
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  auto visit_term = [&](const TermExpr& t) {
    switch (t.kind) {
      case TermExpr::Kind::name:
      case TermExpr::Kind::variable:
        if (!bound.count(t.name)) out.insert(t.name);
        break;
      case TermExpr::Kind::attribute:
        if (!bound.count(t.name)) out.insert(t.name);
        break;
      default: break;
    }
  };
  for (const auto& t : f.terms) visit_term(t);
  if (f.kind == Formula::Kind::exists || f.kind == Formula::Kind::forall) {
    bool was_bound = bound.count(f.var) > 0;
    bound.insert(f.var);
    collect_free(f.children[0], bound, out);
    if (!was_bound) bound.erase(f.var);
  } else {
    for (const auto& c : f.children) collect_free(c, bound, out);
  }
}

}  // namespace

std::set<std::string> free_names(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> mentioned_predicates(const Formula& f) {
  std::set<std::string> out;
  if (f.kind == Formula::Kind::frame) out.insert(f.predicate);
  for (const auto& c : f.children) {
    auto sub = mentioned_predicates(c);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

std::set<std::string> mentioned_domains(const Formula& f) {
  std::set<std::string> out;
  if (f.kind == Formula::Kind::exists || f.kind == Formula::Kind::forall) {
    if (f.domain.kind == DomainSpec::Kind::named) out.insert(f.domain.name);
  }
  for (const auto& t : f.terms)
    if (t.kind == TermExpr::Kind::symbolic_ref) out.insert(t.ref_concept);
  for (const auto& c : f.children) {
    auto sub = mentioned_domains(c);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

}  // namespace ocp
