#ifndef OCP_REPOSITORY_HPP
#define OCP_REPOSITORY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ocp/frames.hpp"
#include "ocp/meta.hpp"
#include "ocp/schema.hpp"
#include "ocp/value.hpp"

namespace ocp {

struct StateRecord {
  uint64_t owner = 0;
  uint32_t version = 1;                // strictly +1 per owner
  std::map<std::string, Value> values; // full effective mapping at this version
  std::string cause;
  uint64_t position = 0;               // log position that created this state
};

struct Individual {
  std::string concept_name;
  std::map<std::string, Value> identity;
  uint64_t oid = 0;
  uint64_t created_at = 0;             // log position
};

// One repository: schema, extents, state history, frame store and the
// metadata tower. All mutations stamp `write_pos` for staleness tracking.
class Repository {
 public:
  explicit Repository(std::string name, int32_t max_level = 3)
      : name_(std::move(name)), level_write_pos_(static_cast<size_t>(max_level) + 1, 0),
        max_level_(max_level) {}

  const std::string& name() const { return name_; }
  int32_t max_level() const { return max_level_; }

  // schema
  void define_enum(const std::string& name, std::vector<std::string> values, uint64_t pos);
  const std::vector<std::string>* find_enum(const std::string& name) const;
  void define_concept(ConceptDef def, uint64_t pos);
  const ConceptDef* find_concept(const std::string& name) const;
  const ConceptDef& require_concept(const std::string& name) const;
  const std::map<std::string, ConceptDef>& concepts() const { return concepts_; }

  // individuals / states
  const Individual& assert_individual(const std::string& concept_name,
                                      const std::map<std::string, Value>& identity, uint64_t pos,
                                      const std::string& cause = "init");
  const StateRecord& transition_state(uint64_t oid, const std::string& cause,
                                      const std::map<std::string, Value>& updates, uint64_t pos);
  const Individual* find_individual(uint64_t oid) const;
  const Individual* find_individual(const std::string& concept_name,
                                    const std::vector<Value>& identity_values) const;
  uint64_t require_oid(const std::string& concept_name,
                       const std::vector<Value>& identity_values) const;

  // Extent oids in ascending order, restricted to individuals created at or
  // before `pin` when supplied.
  std::vector<uint64_t> extent(const std::string& concept_name,
                               std::optional<uint64_t> pin = std::nullopt) const;
  std::vector<uint64_t> all_oids(std::optional<uint64_t> pin = std::nullopt) const;

  const std::vector<StateRecord>& history(uint64_t oid) const;
  // Latest state at or before `pin` (by creation position); latest overall
  // when no pin.
  const StateRecord& state_at(uint64_t oid, std::optional<uint64_t> pin = std::nullopt) const;
  // Attribute value under the pinned state; identity attributes come from the
  // individual itself. Unset attributes read as null.
  Value attribute_value(uint64_t oid, const std::string& attr,
                        std::optional<uint64_t> pin = std::nullopt) const;

  // frames
  void declare_predicate(const std::string& name, uint64_t pos);
  void declare_constant(const std::string& name, Value v, uint64_t pos);
  // Returns false when the fact was already present (idempotent no-op).
  bool assert_fact(const std::string& predicate, const Value& subject, const Value& object,
                   uint64_t pos);
  // Returns false (warning) when the fact was absent.
  bool retract_fact(const std::string& predicate, const Value& subject, const Value& object,
                    uint64_t pos);
  const Language& language() const { return language_; }
  const Interpretation& interpretation() const { return interpretation_; }

  // tower
  MetaObject& lift(const std::string& name, Formula defining, int32_t source_level,
                   std::optional<std::string> over_concept,
                   std::map<std::string, std::string> descriptors, uint64_t pos);
  bool level_exists(int32_t level) const;
  const std::vector<MetaObject>& level_objects(int32_t level) const;
  std::vector<MetaObject>& level_objects_mut(int32_t level);
  const MetaObject* find_meta(int32_t level, uint64_t id) const;
  MetaObject* find_meta_mut(int32_t level, uint64_t id);
  const MetaObject* find_meta_by_name(const std::string& name) const;
  MetaObject* find_meta_by_name_mut(const std::string& name);

  // Latest write position at or below `level` (frame writes count as level 0).
  uint64_t write_position_upto(int32_t level) const;
  void touch_level(int32_t level, uint64_t pos);

  // content-critical concept set
  void mark_content_critical(const std::string& concept_name, uint64_t pos);
  bool is_content_critical(const std::string& concept_name) const {
    return content_critical_.count(concept_name) > 0;
  }
  const std::set<std::string>& content_critical() const { return content_critical_; }

 private:
  void check_value(const ConceptDef& c, const std::string& attr, const Value& v) const;

  std::string name_;
  std::map<std::string, std::vector<std::string>> enums_;
  std::map<std::string, ConceptDef> concepts_;

  std::map<uint64_t, Individual> individuals_;
  std::map<std::string, std::vector<uint64_t>> extents_;           // concept -> oids
  std::map<std::string, std::map<std::string, uint64_t>> identity_index_;  // concept -> key -> oid
  std::map<uint64_t, std::vector<StateRecord>> states_;
  uint64_t next_oid_ = 1;

  Language language_;
  Interpretation interpretation_;

  std::vector<std::vector<MetaObject>> levels_;  // index 0 = level 1
  std::vector<uint64_t> next_meta_id_;

  std::vector<uint64_t> level_write_pos_;
  int32_t max_level_;
  std::set<std::string> content_critical_;
};

}  // namespace ocp

#endif
