#include "ocp/profile.hpp"

#include <algorithm>
#include <set>

namespace ocp {

void CoordinateRegistry::declare(const std::string& name, std::vector<std::string> values) {
  if (coords_.count(name)) fail(Errc::duplicate_name, "coordinate '" + name + "' already declared");
  if (values.empty()) fail(Errc::bad_spec, "coordinate '" + name + "' has no values");
  std::set<std::string> dedup(values.begin(), values.end());
  if (dedup.size() != values.size())
    fail(Errc::bad_spec, "coordinate '" + name + "' has duplicate values");
  coords_.emplace(name, AssignmentCoordinate{name, std::move(values)});
}

const AssignmentCoordinate& CoordinateRegistry::require(const std::string& name) const {
  auto it = coords_.find(name);
  if (it == coords_.end()) fail(Errc::unknown_coordinate, "'" + name + "'");
  return it->second;
}

const AssignmentCoordinate* CoordinateRegistry::find(const std::string& name) const {
  auto it = coords_.find(name);
  return it == coords_.end() ? nullptr : &it->second;
}

bool CoordinateRegistry::value_in_range(const std::string& coord, const std::string& value) const {
  const auto& c = require(coord);
  return std::find(c.values.begin(), c.values.end(), value) != c.values.end();
}

GeneralizedValue GeneralizedValue::make(std::vector<std::string> free_coords,
                                        std::map<Tuple, Value> table,
                                        const CoordinateRegistry& reg) {
  std::set<std::string> dedup(free_coords.begin(), free_coords.end());
  if (dedup.size() != free_coords.size())
    fail(Errc::bad_spec, "generalized value repeats a coordinate");
  size_t expected = 1;
  for (const auto& c : free_coords) expected *= reg.require(c).values.size();
  if (table.size() != expected)
    fail(Errc::bad_spec, "table has " + std::to_string(table.size()) + " entries, expected " +
                             std::to_string(expected) + " (must be total over the cross-product)");
  for (const auto& [tuple, v] : table) {
    (void)v;
    if (tuple.size() != free_coords.size())
      fail(Errc::bad_spec, "table tuple arity does not match the free coordinates");
    for (size_t i = 0; i < tuple.size(); ++i)
      if (!reg.value_in_range(free_coords[i], tuple[i]))
        fail(Errc::value_out_of_range,
             "'" + tuple[i] + "' is not a value of coordinate " + free_coords[i]);
  }
  GeneralizedValue gv;
  gv.free_ = std::move(free_coords);
  gv.table_ = std::move(table);
  return gv;
}

GeneralizedValue GeneralizedValue::scalar(Value v) {
  GeneralizedValue gv;
  gv.table_[{}] = std::move(v);
  return gv;
}

const Value& GeneralizedValue::scalar_value() const {
  if (!is_scalar()) fail(Errc::unresolved_cost, "value is still generalized over " +
                                                    std::to_string(free_.size()) + " coordinates");
  return table_.at({});
}

GeneralizedValue GeneralizedValue::apply(const std::string& coord, const std::string& value,
                                         const CoordinateRegistry& reg) const {
  if (!reg.value_in_range(coord, value))
    fail(Errc::value_out_of_range, "'" + value + "' is not a value of coordinate " + coord);
  auto it = std::find(free_.begin(), free_.end(), coord);
  if (it == free_.end()) return *this;  // identity: application does not succeed

  size_t index = static_cast<size_t>(it - free_.begin());
  GeneralizedValue out;
  out.free_ = free_;
  out.free_.erase(out.free_.begin() + static_cast<long>(index));
  out.table_.clear();
  for (const auto& [tuple, v] : table_) {
    if (tuple[index] != value) continue;
    Tuple rest(tuple);
    rest.erase(rest.begin() + static_cast<long>(index));
    out.table_.emplace(std::move(rest), v);
  }
  return out;
}

bool GeneralizedValue::is_fixpoint(const std::string& coord, const CoordinateRegistry& reg) const {
  const auto& c = reg.require(coord);
  if (std::find(free_.begin(), free_.end(), coord) == free_.end()) return true;
  const GeneralizedValue first = apply(coord, c.values.front(), reg);
  for (size_t i = 1; i < c.values.size(); ++i)
    if (apply(coord, c.values[i], reg) != first) return false;
  return true;
}

void ProfileRegistry::define_generalized(const std::string& name, GeneralizedValue gv) {
  if (generalized_.count(name))
    fail(Errc::duplicate_name, "generalized value '" + name + "' already defined");
  generalized_.emplace(name, std::move(gv));
}

const GeneralizedValue& ProfileRegistry::require_generalized(const std::string& name) const {
  auto it = generalized_.find(name);
  if (it == generalized_.end()) fail(Errc::unknown_object, "generalized value '" + name + "'");
  return it->second;
}

void ProfileRegistry::define_cost_model(CostModel model) {
  if (model.stages.empty()) fail(Errc::bad_spec, "cost model '" + model.name + "' has no stages");
  for (const auto& s : model.stages)
    if (s.duration < 0) fail(Errc::bad_spec, "stage duration must be non-negative");
  if (models_.count(model.name))
    fail(Errc::duplicate_name, "cost model '" + model.name + "' already defined");
  std::string name = model.name;
  models_.emplace(std::move(name), std::move(model));
}

const CostModel& ProfileRegistry::require_cost_model(const std::string& name) const {
  auto it = models_.find(name);
  if (it == models_.end()) fail(Errc::unknown_object, "cost model '" + name + "'");
  return it->second;
}

void ProfileRegistry::define_user(UserProfile profile) {
  for (const auto& [coord, value] : profile.coordinates)
    if (!coords_.value_in_range(coord, value))
      fail(Errc::value_out_of_range, "'" + value + "' is not a value of coordinate " + coord);
  users_[profile.user] = std::move(profile);
}

void ProfileRegistry::set_role(const std::string& user, const std::string& role) {
  auto it = users_.find(user);
  if (it == users_.end()) fail(Errc::unknown_user, "'" + user + "'");
  it->second.role = role;
}

const UserProfile* ProfileRegistry::find_user(const std::string& user) const {
  auto it = users_.find(user);
  return it == users_.end() ? nullptr : &it->second;
}

const UserProfile& ProfileRegistry::require_user(const std::string& user) const {
  const UserProfile* p = find_user(user);
  if (!p) fail(Errc::unknown_user, "'" + user + "'");
  return *p;
}

std::vector<std::string> evaluate_functional(
    const Functional& f, const std::vector<std::pair<std::string, std::string>>& assignments,
    const ProfileRegistry& reg) {
  for (const auto& [coord, value] : assignments) {
    if (std::find(f.coordinate_order.begin(), f.coordinate_order.end(), coord) ==
        f.coordinate_order.end())
      fail(Errc::unknown_coordinate, "'" + coord + "' is not a coordinate of " + f.name);
    if (!reg.coordinates().value_in_range(coord, value))
      fail(Errc::value_out_of_range, "'" + value + "' is not a value of coordinate " + coord);
  }
  std::vector<std::string> out;
  for (const auto& user : f.base) {
    const UserProfile* profile = reg.find_user(user);
    if (!profile) continue;
    bool match = true;
    for (const auto& [coord, value] : assignments) {
      auto it = profile->coordinates.find(coord);
      if (it == profile->coordinates.end() || it->second != value) { match = false; break; }
    }
    if (match) out.push_back(user);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int64_t estimate_request_cost(const CostModel& model, const UserProfile& profile,
                              const CoordinateRegistry& reg) {
  int64_t total = 0;
  for (size_t i = 0; i < model.stages.size(); ++i) {
    const auto& stage = model.stages[i];
    GeneralizedValue q = stage.overhead;
    for (const auto& [coord, value] : profile.coordinates) q = q.apply(coord, value, reg);
    if (!q.is_scalar())
      fail(Errc::unresolved_cost, "overhead of stage " + std::to_string(i + 1) +
                                      " is still generalized under this profile");
    const auto* n = std::get_if<int64_t>(&q.scalar_value());
    if (!n)
      fail(Errc::unresolved_cost, "overhead of stage " + std::to_string(i + 1) +
                                      " is not an integer");
    total += stage.duration + *n;
  }
  return total;
}

std::map<std::vector<std::string>, std::vector<std::string>> segment_users(
    const std::vector<std::string>& users, const std::vector<std::string>& coords,
    const ProfileRegistry& reg) {
  for (const auto& c : coords) reg.coordinates().require(c);
  std::map<std::vector<std::string>, std::vector<std::string>> cells;
  for (const auto& user : users) {
    const UserProfile& profile = reg.require_user(user);
    std::vector<std::string> key;
    key.reserve(coords.size());
    for (const auto& c : coords) {
      auto it = profile.coordinates.find(c);
      key.push_back(it == profile.coordinates.end() ? std::string("-") : it->second);
    }
    cells[key].push_back(user);
  }
  for (auto& [key, members] : cells) {
    (void)key;
    std::sort(members.begin(), members.end());
  }
  return cells;
}

}  // namespace ocp
