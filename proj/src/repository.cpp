#include "ocp/repository.hpp"

#include <algorithm>

namespace ocp {

namespace {

std::string identity_key(const std::vector<Value>& values) {
  std::string key;
  for (const auto& v : values) {
    key += to_text(v);
    key += '\x1f';
  }
  return key;
}

}  // namespace

void Repository::define_enum(const std::string& name, std::vector<std::string> values,
                             uint64_t pos) {
  if (enums_.count(name) || concepts_.count(name))
    fail(Errc::duplicate_name, "enum '" + name + "' already defined");
  if (values.empty()) fail(Errc::bad_spec, "enum '" + name + "' has no values");
  std::set<std::string> dedup(values.begin(), values.end());
  if (dedup.size() != values.size())
    fail(Errc::bad_spec, "enum '" + name + "' has duplicate values");
  enums_.emplace(name, std::move(values));
  touch_level(0, pos);
}

const std::vector<std::string>* Repository::find_enum(const std::string& name) const {
  auto it = enums_.find(name);
  return it == enums_.end() ? nullptr : &it->second;
}

void Repository::define_concept(ConceptDef def, uint64_t pos) {
  def.validate();
  if (concepts_.count(def.name) || enums_.count(def.name))
    fail(Errc::duplicate_concept, "concept '" + def.name + "' already defined");
  for (const auto& a : def.attributes) {
    if (a.range.kind == TypeTag::Kind::concept_ref && !concepts_.count(a.range.name) &&
        a.range.name != def.name)
      fail(Errc::bad_spec, "attribute '" + a.name + "' references unknown concept '" +
                               a.range.name + "'");
  }
  extents_[def.name];
  identity_index_[def.name];
  concepts_.emplace(def.name, std::move(def));
  touch_level(0, pos);
}

const ConceptDef* Repository::find_concept(const std::string& name) const {
  auto it = concepts_.find(name);
  return it == concepts_.end() ? nullptr : &it->second;
}

const ConceptDef& Repository::require_concept(const std::string& name) const {
  const ConceptDef* c = find_concept(name);
  if (!c) fail(Errc::unknown_concept, "concept '" + name + "' not defined");
  return *c;
}

void Repository::check_value(const ConceptDef& c, const std::string& attr, const Value& v) const {
  const AttributeDef* a = c.find_attribute(attr);
  if (!a) fail(Errc::type_mismatch, "concept " + c.name + " has no attribute '" + attr + "'");
  switch (a->range.kind) {
    case TypeTag::Kind::boolean:
      if (!std::holds_alternative<bool>(v))
        fail(Errc::type_mismatch, attr + " expects bool, got " + to_text(v));
      break;
    case TypeTag::Kind::integer:
      if (!std::holds_alternative<int64_t>(v))
        fail(Errc::type_mismatch, attr + " expects int, got " + to_text(v));
      break;
    case TypeTag::Kind::text:
      if (!std::holds_alternative<std::string>(v))
        fail(Errc::type_mismatch, attr + " expects text, got " + to_text(v));
      break;
    case TypeTag::Kind::enumeration: {
      const auto* s = std::get_if<std::string>(&v);
      const std::vector<std::string>* vals = &a->range.values;
      if (vals->empty()) {
        const auto* declared = find_enum(a->range.name);
        if (declared) vals = declared;
      }
      if (!s || std::find(vals->begin(), vals->end(), *s) == vals->end())
        fail(Errc::type_mismatch, attr + " expects a value of enum " + a->range.name + ", got " +
                                      to_text(v));
      break;
    }
    case TypeTag::Kind::concept_ref: {
      const auto* r = std::get_if<ObjectRef>(&v);
      if (!r || r->level != 0)
        fail(Errc::type_mismatch, attr + " expects a reference to " + a->range.name);
      const Individual* ind = find_individual(r->id);
      if (!ind || ind->concept_name != a->range.name)
        fail(Errc::type_mismatch, attr + " expects an individual of " + a->range.name);
      break;
    }
  }
}

const Individual& Repository::assert_individual(const std::string& concept_name,
                                                const std::map<std::string, Value>& identity,
                                                uint64_t pos, const std::string& cause) {
  const ConceptDef& c = require_concept(concept_name);
  if (identity.size() != c.identifying.size())
    fail(Errc::type_mismatch, "identity must cover exactly the identifying attributes of " +
                                  concept_name);
  std::vector<Value> key_values;
  for (const auto& k : c.identifying) {
    auto it = identity.find(k);
    if (it == identity.end())
      fail(Errc::type_mismatch, "identity missing identifying attribute '" + k + "'");
    check_value(c, k, it->second);
    key_values.push_back(it->second);
  }
  std::string key = identity_key(key_values);
  auto& index = identity_index_[concept_name];
  if (index.count(key))
    fail(Errc::duplicate_identity, concept_name + " individual already asserted");

  Individual ind;
  ind.concept_name = concept_name;
  ind.identity = identity;
  ind.oid = next_oid_++;
  ind.created_at = pos;
  uint64_t oid = ind.oid;
  individuals_.emplace(oid, std::move(ind));
  extents_[concept_name].push_back(oid);
  index.emplace(std::move(key), oid);

  StateRecord initial;
  initial.owner = oid;
  initial.version = 1;
  initial.values = identity;
  initial.cause = cause;
  initial.position = pos;
  states_[oid].push_back(std::move(initial));
  touch_level(0, pos);
  return individuals_.at(oid);
}

const StateRecord& Repository::transition_state(uint64_t oid, const std::string& cause,
                                                const std::map<std::string, Value>& updates,
                                                uint64_t pos) {
  const Individual* ind = find_individual(oid);
  if (!ind) fail(Errc::unknown_individual, "oid " + std::to_string(oid));
  const ConceptDef& c = require_concept(ind->concept_name);
  for (const auto& [attr, v] : updates) {
    if (c.is_identifying(attr))
      fail(Errc::identity_mutation, "attribute '" + attr + "' is identifying");
    check_value(c, attr, v);
  }
  auto& hist = states_[oid];
  StateRecord next;
  next.owner = oid;
  next.version = hist.back().version + 1;
  next.values = hist.back().values;
  for (const auto& [attr, v] : updates) next.values[attr] = v;
  next.cause = cause;
  next.position = pos;
  hist.push_back(std::move(next));
  touch_level(0, pos);
  return hist.back();
}

const Individual* Repository::find_individual(uint64_t oid) const {
  auto it = individuals_.find(oid);
  return it == individuals_.end() ? nullptr : &it->second;
}

const Individual* Repository::find_individual(const std::string& concept_name,
                                              const std::vector<Value>& identity_values) const {
  auto ci = identity_index_.find(concept_name);
  if (ci == identity_index_.end()) return nullptr;
  auto it = ci->second.find(identity_key(identity_values));
  return it == ci->second.end() ? nullptr : &individuals_.at(it->second);
}

uint64_t Repository::require_oid(const std::string& concept_name,
                                 const std::vector<Value>& identity_values) const {
  require_concept(concept_name);
  const Individual* ind = find_individual(concept_name, identity_values);
  if (!ind) {
    std::string key;
    for (const auto& v : identity_values) key += (key.empty() ? "" : ", ") + to_text(v);
    fail(Errc::unknown_individual, concept_name + "[" + key + "]");
  }
  return ind->oid;
}

std::vector<uint64_t> Repository::extent(const std::string& concept_name,
                                         std::optional<uint64_t> pin) const {
  require_concept(concept_name);
  auto it = extents_.find(concept_name);
  std::vector<uint64_t> out;
  if (it == extents_.end()) return out;
  for (uint64_t oid : it->second)
    if (!pin || individuals_.at(oid).created_at <= *pin) out.push_back(oid);
  return out;
}

std::vector<uint64_t> Repository::all_oids(std::optional<uint64_t> pin) const {
  std::vector<uint64_t> out;
  for (const auto& [oid, ind] : individuals_)
    if (!pin || ind.created_at <= *pin) out.push_back(oid);
  return out;
}

const std::vector<StateRecord>& Repository::history(uint64_t oid) const {
  auto it = states_.find(oid);
  if (it == states_.end()) fail(Errc::unknown_individual, "oid " + std::to_string(oid));
  return it->second;
}

const StateRecord& Repository::state_at(uint64_t oid, std::optional<uint64_t> pin) const {
  const auto& hist = history(oid);
  if (!pin) return hist.back();
  const StateRecord* best = nullptr;
  for (const auto& s : hist)
    if (s.position <= *pin) best = &s;
  if (!best) fail(Errc::unknown_individual,
                  "oid " + std::to_string(oid) + " has no state at position " + std::to_string(*pin));
  return *best;
}

Value Repository::attribute_value(uint64_t oid, const std::string& attr,
                                  std::optional<uint64_t> pin) const {
  const Individual* ind = find_individual(oid);
  if (!ind) fail(Errc::unknown_individual, "oid " + std::to_string(oid));
  const StateRecord& s = state_at(oid, pin);
  auto it = s.values.find(attr);
  if (it != s.values.end()) return it->second;
  const ConceptDef& c = require_concept(ind->concept_name);
  if (!c.find_attribute(attr))
    fail(Errc::type_mismatch, "concept " + c.name + " has no attribute '" + attr + "'");
  return null_value();
}

void Repository::declare_predicate(const std::string& name, uint64_t pos) {
  if (language_.predicates.count(name))
    fail(Errc::duplicate_name, "predicate '" + name + "' already declared");
  language_.predicates.insert(name);
  touch_level(0, pos);
}

void Repository::declare_constant(const std::string& name, Value v, uint64_t pos) {
  if (language_.constants.count(name))
    fail(Errc::duplicate_name, "constant '" + name + "' already declared");
  language_.constants.emplace(name, std::move(v));
  touch_level(0, pos);
}

bool Repository::assert_fact(const std::string& predicate, const Value& subject,
                             const Value& object, uint64_t pos) {
  if (!language_.predicates.count(predicate))
    fail(Errc::unknown_predicate, "predicate '" + predicate + "' not declared");
  bool inserted = interpretation_.facts[predicate].insert({subject, object}).second;
  if (inserted) touch_level(0, pos);
  return inserted;
}

bool Repository::retract_fact(const std::string& predicate, const Value& subject,
                              const Value& object, uint64_t pos) {
  if (!language_.predicates.count(predicate))
    fail(Errc::unknown_predicate, "predicate '" + predicate + "' not declared");
  auto it = interpretation_.facts.find(predicate);
  if (it == interpretation_.facts.end()) return false;
  bool erased = it->second.erase({subject, object}) > 0;
  if (erased) touch_level(0, pos);
  return erased;
}

MetaObject& Repository::lift(const std::string& name, Formula defining, int32_t source_level,
                             std::optional<std::string> over_concept,
                             std::map<std::string, std::string> descriptors, uint64_t pos) {
  if (source_level < 0 || !level_exists(source_level))
    fail(Errc::unknown_level, "level " + std::to_string(source_level) + " does not exist");
  int32_t target = source_level + 1;
  if (target > max_level_)
    fail(Errc::unknown_level, "level " + std::to_string(target) + " exceeds the tower cap of " +
                                  std::to_string(max_level_));
  if (find_meta_by_name(name) || concepts_.count(name) || enums_.count(name))
    fail(Errc::name_clash, "meta object '" + name + "' clashes with an existing name");
  for (const auto& [k, v] : descriptors) {
    (void)v;
    const auto& keys = descriptor_keys();
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      fail(Errc::bad_spec, "descriptor key '" + k + "' not in the fixed vocabulary");
  }
  if (over_concept) {
    if (source_level != 0)
      fail(Errc::bad_spec, "concept-restricted domain is only meaningful at level 0");
    require_concept(*over_concept);
  }

  while (static_cast<int32_t>(levels_.size()) < target) {
    levels_.emplace_back();
    next_meta_id_.push_back(1);
  }
  MetaObject meta;
  meta.id = next_meta_id_[static_cast<size_t>(target) - 1]++;
  meta.name = name;
  meta.level = target;
  meta.defining = std::move(defining);
  meta.over_concept = std::move(over_concept);
  meta.descriptors = std::move(descriptors);
  levels_[static_cast<size_t>(target) - 1].push_back(std::move(meta));
  touch_level(target, pos);
  return levels_[static_cast<size_t>(target) - 1].back();
}

bool Repository::level_exists(int32_t level) const {
  if (level == 0) return true;
  return level >= 1 && static_cast<size_t>(level) <= levels_.size() &&
         !levels_[static_cast<size_t>(level) - 1].empty();
}

const std::vector<MetaObject>& Repository::level_objects(int32_t level) const {
  static const std::vector<MetaObject> empty;
  if (level < 1 || static_cast<size_t>(level) > levels_.size()) return empty;
  return levels_[static_cast<size_t>(level) - 1];
}

std::vector<MetaObject>& Repository::level_objects_mut(int32_t level) {
  return levels_.at(static_cast<size_t>(level) - 1);
}

const MetaObject* Repository::find_meta(int32_t level, uint64_t id) const {
  for (const auto& m : level_objects(level))
    if (m.id == id) return &m;
  return nullptr;
}

MetaObject* Repository::find_meta_mut(int32_t level, uint64_t id) {
  if (level < 1 || static_cast<size_t>(level) > levels_.size()) return nullptr;
  for (auto& m : levels_[static_cast<size_t>(level) - 1])
    if (m.id == id) return &m;
  return nullptr;
}

const MetaObject* Repository::find_meta_by_name(const std::string& name) const {
  for (const auto& level : levels_)
    for (const auto& m : level)
      if (m.name == name) return &m;
  return nullptr;
}

MetaObject* Repository::find_meta_by_name_mut(const std::string& name) {
  for (auto& level : levels_)
    for (auto& m : level)
      if (m.name == name) return &m;
  return nullptr;
}

uint64_t Repository::write_position_upto(int32_t level) const {
  uint64_t latest = 0;
  for (int32_t j = 0; j <= level && static_cast<size_t>(j) < level_write_pos_.size(); ++j)
    latest = std::max(latest, level_write_pos_[static_cast<size_t>(j)]);
  return latest;
}

void Repository::touch_level(int32_t level, uint64_t pos) {
  if (static_cast<size_t>(level) < level_write_pos_.size())
    level_write_pos_[static_cast<size_t>(level)] =
        std::max(level_write_pos_[static_cast<size_t>(level)], pos);
}

void Repository::mark_content_critical(const std::string& concept_name, uint64_t pos) {
  content_critical_.insert(concept_name);
  touch_level(0, pos);
}

}  // namespace ocp
