#include "ocp/eval.hpp"

#include <algorithm>

namespace ocp {

namespace {

const std::vector<std::string>& meta_attributes() {
  static const std::vector<std::string> attrs = {
      "name", "level", "extension-size",
      "dimensions", "integrity-constraints", "access-rights", "display-hints"};
  return attrs;
}

void resolve_walk(Formula& f, const ResolveScope& scope, std::set<std::string>& bound) {
  auto resolve_term = [&](TermExpr& t) {
    switch (t.kind) {
      case TermExpr::Kind::name: {
        if (bound.count(t.name) || t.name == scope.self_var) {
          t.kind = TermExpr::Kind::variable;
          return;
        }
        if (!scope.self_var.empty()) {
          bool has_attr =
              (scope.self_concept && scope.self_concept->find_attribute(t.name)) ||
              (scope.self_is_meta && is_meta_attribute(t.name));
          if (has_attr) {
            t.attribute = t.name;
            t.name = scope.self_var;
            t.kind = TermExpr::Kind::attribute;
            return;
          }
        }
        if ((scope.repo && scope.repo->language().constants.count(t.name)) ||
            scope.dynamic_constants.count(t.name)) {
          t.kind = TermExpr::Kind::constant;
          return;
        }
        fail(Errc::unbound_variable, "'" + t.name + "' is not bound, not an attribute of the "
                                     "comprehension variable, and not a declared constant");
      }
      case TermExpr::Kind::variable:
        if (!bound.count(t.name) && t.name != scope.self_var)
          fail(Errc::unbound_variable, "'" + t.name + "'");
        return;
      case TermExpr::Kind::attribute:
        if (!bound.count(t.name) && t.name != scope.self_var)
          fail(Errc::unbound_variable, "'" + t.name + "' in " + t.name + "." + t.attribute);
        return;
      default:
        return;
    }
  };
  for (auto& t : f.terms) resolve_term(t);
  if (f.kind == Formula::Kind::exists || f.kind == Formula::Kind::forall) {
    bool was_bound = bound.count(f.var) > 0;
    bound.insert(f.var);
    resolve_walk(f.children[0], scope, bound);
    if (!was_bound) bound.erase(f.var);
  } else {
    for (auto& c : f.children) resolve_walk(c, scope, bound);
  }
}

Value meta_attribute_value(const Repository& repo, const MetaObject& meta,
                           const std::string& attr, std::optional<uint64_t> pin) {
  if (attr == "name") return Value(meta.name);
  if (attr == "level") return Value(static_cast<int64_t>(meta.level));
  if (attr == "extension-size")
    return Value(static_cast<int64_t>(compute_extension(repo, meta, pin).size()));
  auto it = meta.descriptors.find(attr);
  if (it != meta.descriptors.end()) return Value(it->second);
  return null_value();
}

}  // namespace

bool is_meta_attribute(const std::string& attr) {
  const auto& attrs = meta_attributes();
  return std::find(attrs.begin(), attrs.end(), attr) != attrs.end();
}

void resolve_formula(Formula& f, const ResolveScope& scope) {
  std::set<std::string> bound;
  resolve_walk(f, scope, bound);
}

Value eval_term(const TermExpr& t, const EvalContext& ctx) {
  switch (t.kind) {
    case TermExpr::Kind::literal:
      return t.literal;
    case TermExpr::Kind::name:
    case TermExpr::Kind::variable: {
      auto it = ctx.bindings.find(t.name);
      if (it != ctx.bindings.end()) return it->second;
      if (t.kind == TermExpr::Kind::name) {
        auto dc = ctx.dynamic_constants.find(t.name);
        if (dc != ctx.dynamic_constants.end()) return dc->second;
        if (ctx.repo) {
          auto c = ctx.repo->language().constants.find(t.name);
          if (c != ctx.repo->language().constants.end()) return c->second;
        }
      }
      fail(Errc::unbound_variable, "'" + t.name + "'");
    }
    case TermExpr::Kind::constant: {
      auto dc = ctx.dynamic_constants.find(t.name);
      if (dc != ctx.dynamic_constants.end()) return dc->second;
      if (ctx.repo) {
        auto c = ctx.repo->language().constants.find(t.name);
        if (c != ctx.repo->language().constants.end()) return c->second;
      }
      fail(Errc::unresolved_term, "constant '" + t.name + "'");
    }
    case TermExpr::Kind::attribute: {
      auto it = ctx.bindings.find(t.name);
      if (it == ctx.bindings.end()) fail(Errc::unbound_variable, "'" + t.name + "'");
      const auto* ref = std::get_if<ObjectRef>(&it->second);
      if (!ref)
        fail(Errc::type_mismatch, "'" + t.name + "' is not an object; cannot read attribute '" +
                                      t.attribute + "'");
      if (!ctx.repo) fail(Errc::unresolved_term, "no repository in scope");
      if (ref->level == 0) return ctx.repo->attribute_value(ref->id, t.attribute, ctx.pin);
      const MetaObject* meta = ctx.repo->find_meta(ref->level, ref->id);
      if (!meta) fail(Errc::unknown_object, "meta @" + std::to_string(ref->level) + ":" +
                                                std::to_string(ref->id));
      return meta_attribute_value(*ctx.repo, *meta, t.attribute, ctx.pin);
    }
    case TermExpr::Kind::symbolic_ref: {
      if (!ctx.repo) fail(Errc::unresolved_term, "no repository in scope");
      uint64_t oid = ctx.repo->require_oid(t.ref_concept, t.ref_identity);
      return Value(ObjectRef{0, oid});
    }
  }
  fail(Errc::unresolved_term, "malformed term");
}

bool eval_formula(const Formula& f, EvalContext& ctx) {
  switch (f.kind) {
    case Formula::Kind::constant:
      return f.truth;
    case Formula::Kind::frame: {
      if (!ctx.repo) fail(Errc::unresolved_term, "no repository in scope");
      if (!ctx.repo->language().predicates.count(f.predicate))
        fail(Errc::unknown_predicate, "'" + f.predicate + "'");
      Value subj = eval_term(f.terms[0], ctx);
      Value obj = eval_term(f.terms[1], ctx);
      return ctx.repo->interpretation().holds(f.predicate, subj, obj);
    }
    case Formula::Kind::compare: {
      Value lhs = eval_term(f.terms[0], ctx);
      Value rhs = eval_term(f.terms[1], ctx);
      switch (f.op) {
        case CompareOp::eq: return lhs == rhs;
        case CompareOp::ne: return lhs != rhs;
        case CompareOp::lt: return lhs < rhs;
        case CompareOp::le: return lhs <= rhs;
      }
      return false;
    }
    case Formula::Kind::logical_not:
      return !eval_formula(f.children[0], ctx);
    case Formula::Kind::logical_and:
      for (const auto& c : f.children)
        if (!eval_formula(c, ctx)) return false;
      return true;
    case Formula::Kind::logical_or:
      for (const auto& c : f.children)
        if (eval_formula(c, ctx)) return true;
      return false;
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
      if (!ctx.repo) fail(Errc::unresolved_term, "no repository in scope");
      auto elements = domain_elements(*ctx.repo, f.domain, ctx.pin);
      bool had_binding = ctx.bindings.count(f.var) > 0;
      Value saved = had_binding ? ctx.bindings[f.var] : Value();
      bool result = (f.kind == Formula::Kind::forall);
      for (const auto& e : elements) {
        ctx.bindings[f.var] = e;
        bool b = eval_formula(f.children[0], ctx);
        if (f.kind == Formula::Kind::exists && b) { result = true; break; }
        if (f.kind == Formula::Kind::forall && !b) { result = false; break; }
      }
      if (had_binding) ctx.bindings[f.var] = saved; else ctx.bindings.erase(f.var);
      return result;
    }
  }
  return false;
}

std::vector<Value> domain_elements(const Repository& repo, const DomainSpec& domain,
                                   std::optional<uint64_t> pin) {
  std::vector<Value> out;
  if (domain.kind == DomainSpec::Kind::level) {
    if (!repo.level_exists(domain.level))
      fail(Errc::unknown_level, "level " + std::to_string(domain.level) + " does not exist");
    if (domain.level == 0) {
      for (uint64_t oid : repo.all_oids(pin)) out.emplace_back(ObjectRef{0, oid});
    } else {
      for (const auto& m : repo.level_objects(domain.level))
        out.emplace_back(ObjectRef{domain.level, m.id});
    }
    return out;
  }
  if (repo.find_concept(domain.name)) {
    for (uint64_t oid : repo.extent(domain.name, pin)) out.emplace_back(ObjectRef{0, oid});
    return out;
  }
  if (const auto* values = repo.find_enum(domain.name)) {
    std::vector<std::string> sorted(*values);
    std::sort(sorted.begin(), sorted.end());
    for (auto& v : sorted) out.emplace_back(std::move(v));
    return out;
  }
  fail(Errc::unknown_domain, "'" + domain.name + "' is neither a concept nor an enum");
}

namespace {

ResolveScope scope_for_domain(const Repository& repo, const std::string& var,
                              const DomainSpec& domain,
                              const std::map<std::string, Value>* dynamic_constants) {
  ResolveScope scope;
  scope.repo = &repo;
  scope.self_var = var;
  if (domain.kind == DomainSpec::Kind::named) {
    scope.self_concept = repo.find_concept(domain.name);
  } else if (domain.level >= 1) {
    scope.self_is_meta = true;
  }
  if (dynamic_constants)
    for (const auto& [k, v] : *dynamic_constants) { (void)v; scope.dynamic_constants.insert(k); }
  return scope;
}

}  // namespace

std::vector<Value> comprehend(const Repository& repo, const Formula& phi, const std::string& var,
                              const DomainSpec& domain, std::optional<uint64_t> pin,
                              const std::map<std::string, Value>* dynamic_constants) {
  Formula resolved = phi;
  resolve_formula(resolved, scope_for_domain(repo, var, domain, dynamic_constants));
  auto free = free_names(resolved);
  free.erase(var);
  if (!free.empty())
    fail(Errc::unbound_variable, "'" + *free.begin() + "' is free in the comprehension formula");

  EvalContext ctx;
  ctx.repo = &repo;
  ctx.pin = pin;
  if (dynamic_constants) ctx.dynamic_constants = *dynamic_constants;
  std::vector<Value> out;
  for (const auto& element : domain_elements(repo, domain, pin)) {
    ctx.bindings[var] = element;
    if (eval_formula(resolved, ctx)) out.push_back(element);
  }
  return out;
}

Value individualize(const Repository& repo, const Formula& phi, const std::string& var,
                    const DomainSpec& domain, std::optional<uint64_t> pin) {
  auto witnesses = comprehend(repo, phi, var, domain, pin);
  if (witnesses.empty()) fail(Errc::no_witness, "no element satisfies the formula");
  if (witnesses.size() > 1)
    fail(Errc::ambiguous, std::to_string(witnesses.size()) + " elements satisfy the formula");
  return witnesses.front();
}

std::vector<std::map<std::string, Value>> enumerate_sort(const Repository& repo,
                                                         const std::vector<std::string>& labels,
                                                         const TypeTag& target) {
  std::vector<Value> values;
  switch (target.kind) {
    case TypeTag::Kind::boolean:
      values = {Value(false), Value(true)};
      break;
    case TypeTag::Kind::enumeration: {
      const std::vector<std::string>* vals = &target.values;
      if (vals->empty()) {
        const auto* declared = repo.find_enum(target.name);
        if (!declared) fail(Errc::unknown_domain, "enum '" + target.name + "'");
        vals = declared;
      }
      std::vector<std::string> sorted(*vals);
      std::sort(sorted.begin(), sorted.end());
      for (auto& v : sorted) values.emplace_back(std::move(v));
      break;
    }
    case TypeTag::Kind::concept_ref:
      for (uint64_t oid : repo.extent(target.name)) values.emplace_back(ObjectRef{0, oid});
      break;
    case TypeTag::Kind::integer:
    case TypeTag::Kind::text:
      fail(Errc::infinite_domain, type_name(target) + " is not a finite sort target");
  }

  std::vector<std::string> index(labels);
  std::sort(index.begin(), index.end());
  index.erase(std::unique(index.begin(), index.end()), index.end());

  std::vector<std::map<std::string, Value>> out;
  if (index.empty()) {
    out.emplace_back();  // exactly one empty mapping: |T|^0 = 1
    return out;
  }
  if (values.empty()) return out;  // |T| = 0, |I| > 0: no mappings

  std::vector<size_t> counter(index.size(), 0);
  while (true) {
    std::map<std::string, Value> mapping;
    for (size_t i = 0; i < index.size(); ++i) mapping[index[i]] = values[counter[i]];
    out.push_back(std::move(mapping));
    size_t i = index.size();
    while (i > 0) {
      --i;
      if (++counter[i] < values.size()) break;
      counter[i] = 0;
      if (i == 0) return out;
    }
  }
}

std::vector<std::map<std::string, Value>> query_frames(const Repository& repo,
                                                       const FramePattern& pattern) {
  if (!repo.language().predicates.count(pattern.predicate))
    fail(Errc::unknown_predicate, "'" + pattern.predicate + "'");

  EvalContext ctx;
  ctx.repo = &repo;
  auto ground = [&](const TermExpr& t, std::optional<Value>& fixed, std::string& var) {
    if (t.kind == TermExpr::Kind::variable || t.kind == TermExpr::Kind::name) {
      if (t.kind == TermExpr::Kind::name && repo.language().constants.count(t.name)) {
        fixed = repo.language().constants.at(t.name);
        return;
      }
      var = t.name;
      return;
    }
    fixed = eval_term(t, ctx);
  };

  std::optional<Value> subj_fixed, obj_fixed;
  std::string subj_var, obj_var;
  ground(pattern.subject, subj_fixed, subj_var);
  ground(pattern.object, obj_fixed, obj_var);

  std::set<std::map<std::string, Value>> bindings;
  auto it = repo.interpretation().facts.find(pattern.predicate);
  if (it != repo.interpretation().facts.end()) {
    for (const auto& [subject, object] : it->second) {
      if (subj_fixed && *subj_fixed != subject) continue;
      if (obj_fixed && *obj_fixed != object) continue;
      if (!subj_var.empty() && subj_var == obj_var && subject != object) continue;
      std::map<std::string, Value> b;
      if (!subj_var.empty()) b[subj_var] = subject;
      if (!obj_var.empty()) b[obj_var] = object;
      bindings.insert(std::move(b));
    }
  }
  return {bindings.begin(), bindings.end()};
}

std::vector<uint64_t> compute_extension(const Repository& repo, const MetaObject& meta,
                                        std::optional<uint64_t> pin) {
  DomainSpec domain = meta.over_concept ? DomainSpec::named(*meta.over_concept)
                                        : DomainSpec::tower_level(meta.level - 1);
  if (domain.kind == DomainSpec::Kind::level && !repo.level_exists(domain.level))
    return {};  // lower level emptied out; extension is empty
  auto elements = comprehend(repo, meta.defining, "x", domain, pin);
  std::vector<uint64_t> ids;
  ids.reserve(elements.size());
  for (const auto& e : elements) ids.push_back(std::get<ObjectRef>(e).id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

const std::vector<uint64_t>& refresh_extension(Repository& repo, MetaObject& meta, uint64_t now) {
  uint64_t latest_lower_write = repo.write_position_upto(meta.level - 1);
  if (meta.cached_at < latest_lower_write || meta.cached_at == 0) {
    meta.extension = compute_extension(repo, meta);
    meta.cached_at = now;
  }
  return meta.extension;
}

Described describe(Repository& repo, const ObjectRef& ref, uint64_t now) {
  Described out;
  if (ref.level == 0) {
    if (!repo.find_individual(ref.id))
      fail(Errc::unknown_object, "oid " + std::to_string(ref.id));
  } else {
    const MetaObject* meta = repo.find_meta(ref.level, ref.id);
    if (!meta) fail(Errc::unknown_object, "meta @" + std::to_string(ref.level) + ":" +
                                              std::to_string(ref.id));
    out.descriptors = meta->descriptors;
  }
  if (repo.level_exists(ref.level + 1)) {
    for (auto& m : repo.level_objects_mut(ref.level + 1)) {
      const auto& ext = refresh_extension(repo, m, now);
      if (std::binary_search(ext.begin(), ext.end(), ref.id)) out.containing.push_back(m.name);
    }
  }
  return out;
}

}  // namespace ocp
