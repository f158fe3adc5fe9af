#include "support/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace oracle {

using namespace ocp;

Value attribute_of(const Repository& repo, const ObjectRef& ref, const std::string& attr) {
  if (ref.level == 0) {
    const auto& history = repo.history(ref.id);
    const auto& latest = history.back().values;
    auto it = latest.find(attr);
    return it == latest.end() ? null_value() : it->second;
  }
  const MetaObject* meta = repo.find_meta(ref.level, ref.id);
  if (!meta) throw std::runtime_error("oracle: dangling meta ref");
  if (attr == "name") return Value(meta->name);
  if (attr == "level") return Value(static_cast<int64_t>(meta->level));
  if (attr == "extension-size") {
    DomainSpec domain = meta->over_concept ? DomainSpec::named(*meta->over_concept)
                                           : DomainSpec::tower_level(meta->level - 1);
    return Value(static_cast<int64_t>(filter(repo, meta->defining, "x", domain).size()));
  }
  auto it = meta->descriptors.find(attr);
  return it == meta->descriptors.end() ? null_value() : Value(it->second);
}

namespace {

int kind_rank(const Value& v) { return static_cast<int>(v.index()); }

}  // namespace

int compare_values(const Value& a, const Value& b) {
  if (kind_rank(a) != kind_rank(b)) return kind_rank(a) < kind_rank(b) ? -1 : 1;
  if (std::holds_alternative<std::monostate>(a)) return 0;
  if (const auto* ba = std::get_if<bool>(&a)) {
    bool bb = std::get<bool>(b);
    return *ba == bb ? 0 : (!*ba ? -1 : 1);
  }
  if (const auto* ia = std::get_if<int64_t>(&a)) {
    int64_t ib = std::get<int64_t>(b);
    return *ia == ib ? 0 : (*ia < ib ? -1 : 1);
  }
  if (const auto* sa = std::get_if<std::string>(&a)) {
    const auto& sb = std::get<std::string>(b);
    return sa->compare(sb) < 0 ? -1 : (*sa == sb ? 0 : 1);
  }
  const auto& ra = std::get<ObjectRef>(a);
  const auto& rb = std::get<ObjectRef>(b);
  if (ra.level != rb.level) return ra.level < rb.level ? -1 : 1;
  return ra.id == rb.id ? 0 : (ra.id < rb.id ? -1 : 1);
}

std::vector<Value> elements_of(const Repository& repo, const DomainSpec& domain) {
  std::vector<Value> out;
  if (domain.kind == DomainSpec::Kind::level) {
    if (domain.level == 0) {
      for (uint64_t oid : repo.all_oids()) out.emplace_back(ObjectRef{0, oid});
    } else {
      for (const auto& m : repo.level_objects(domain.level))
        out.emplace_back(ObjectRef{domain.level, m.id});
    }
    return out;
  }
  if (repo.find_concept(domain.name)) {
    for (uint64_t oid : repo.extent(domain.name)) out.emplace_back(ObjectRef{0, oid});
    return out;
  }
  if (const auto* values = repo.find_enum(domain.name)) {
    std::vector<std::string> sorted(*values);
    std::sort(sorted.begin(), sorted.end());
    for (const auto& v : sorted) out.emplace_back(v);
    return out;
  }
  throw std::runtime_error("oracle: unknown domain " + domain.name);
}

namespace {

// var := element, skipping subtrees where a quantifier shadows var.
Formula substitute(const Repository& repo, const Formula& phi, const std::string& var,
                   const Value& element) {
  Formula out = phi;
  for (auto& t : out.terms) {
    if (t.kind == TermExpr::Kind::variable && t.name == var) {
      t = TermExpr::lit(element);
    } else if (t.kind == TermExpr::Kind::attribute && t.name == var) {
      const auto* ref = std::get_if<ObjectRef>(&element);
      if (!ref) throw std::runtime_error("oracle: attribute access on a scalar");
      t = TermExpr::lit(attribute_of(repo, *ref, t.attribute));
    }
  }
  if ((out.kind == Formula::Kind::exists || out.kind == Formula::Kind::forall) &&
      out.var == var) {
    return out;  // shadowed below this point
  }
  for (auto& c : out.children) c = substitute(repo, c, var, element);
  return out;
}

Value ground_term(const Repository& repo, const TermExpr& t) {
  switch (t.kind) {
    case TermExpr::Kind::literal:
      return t.literal;
    case TermExpr::Kind::constant:
    case TermExpr::Kind::name: {
      auto it = repo.language().constants.find(t.name);
      if (it == repo.language().constants.end())
        throw std::runtime_error("oracle: free name " + t.name);
      return it->second;
    }
    case TermExpr::Kind::symbolic_ref: {
      const Individual* ind = repo.find_individual(t.ref_concept, t.ref_identity);
      if (!ind) throw std::runtime_error("oracle: unknown individual");
      return Value(ObjectRef{0, ind->oid});
    }
    default:
      throw std::runtime_error("oracle: unsubstituted variable " + t.name);
  }
}

bool decide_closed(const Repository& repo, const Formula& phi) {
  switch (phi.kind) {
    case Formula::Kind::constant:
      return phi.truth;
    case Formula::Kind::frame: {
      Value subject = ground_term(repo, phi.terms[0]);
      Value object = ground_term(repo, phi.terms[1]);
      auto it = repo.interpretation().facts.find(phi.predicate);
      if (it == repo.interpretation().facts.end()) return false;
      for (const auto& [s, o] : it->second)
        if (compare_values(s, subject) == 0 && compare_values(o, object) == 0) return true;
      return false;
    }
    case Formula::Kind::compare: {
      int c = compare_values(ground_term(repo, phi.terms[0]), ground_term(repo, phi.terms[1]));
      switch (phi.op) {
        case CompareOp::eq: return c == 0;
        case CompareOp::ne: return c != 0;
        case CompareOp::lt: return c < 0;
        case CompareOp::le: return c <= 0;
      }
      return false;
    }
    case Formula::Kind::logical_not:
      return !decide_closed(repo, phi.children[0]);
    case Formula::Kind::logical_and: {
      bool all = true;
      for (const auto& c : phi.children) all = all && decide_closed(repo, c);
      return all;
    }
    case Formula::Kind::logical_or: {
      bool any = false;
      for (const auto& c : phi.children) any = any || decide_closed(repo, c);
      return any;
    }
    case Formula::Kind::exists: {
      for (const auto& e : elements_of(repo, phi.domain))
        if (decide_closed(repo, substitute(repo, phi.children[0], phi.var, e))) return true;
      return false;
    }
    case Formula::Kind::forall: {
      for (const auto& e : elements_of(repo, phi.domain))
        if (!decide_closed(repo, substitute(repo, phi.children[0], phi.var, e))) return false;
      return true;
    }
  }
  return false;
}

}  // namespace

bool holds(const Repository& repo, const Formula& phi, const std::string& var,
           const Value& element) {
  return decide_closed(repo, substitute(repo, phi, var, element));
}

std::vector<Value> filter(const Repository& repo, const Formula& phi, const std::string& var,
                          const DomainSpec& domain) {
  std::vector<Value> out;
  for (const auto& e : elements_of(repo, domain))
    if (holds(repo, phi, var, e)) out.push_back(e);
  return out;
}

}  // namespace oracle
