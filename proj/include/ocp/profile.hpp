#ifndef OCP_PROFILE_HPP
#define OCP_PROFILE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ocp/value.hpp"

namespace ocp {

// A named assignment point (browser settings v, device e, customary
// settings s, registration status p, ...) over a finite value enum.
struct AssignmentCoordinate {
  std::string name;
  std::vector<std::string> values;  // nonempty, duplicate-free
};

class CoordinateRegistry {
 public:
  void declare(const std::string& name, std::vector<std::string> values);
  const AssignmentCoordinate& require(const std::string& name) const;
  const AssignmentCoordinate* find(const std::string& name) const;
  bool value_in_range(const std::string& coord, const std::string& value) const;
  const std::map<std::string, AssignmentCoordinate>& all() const { return coords_; }

 private:
  std::map<std::string, AssignmentCoordinate> coords_;
};

// A value still indexed by unapplied assignment coordinates. The table is
// total over the cross-product of the free coordinates' values; applying a
// coordinate restricts it, and a fully applied value is a single scalar.
class GeneralizedValue {
 public:
  using Tuple = std::vector<std::string>;  // one value per free coordinate, in order

  GeneralizedValue() { table_[{}] = null_value(); }

  // Validates totality of the table against the registry.
  static GeneralizedValue make(std::vector<std::string> free_coords,
                               std::map<Tuple, Value> table, const CoordinateRegistry& reg);
  static GeneralizedValue scalar(Value v);

  const std::vector<std::string>& free_coords() const { return free_; }
  const std::map<Tuple, Value>& table() const { return table_; }
  size_t generalization_level() const { return free_.size(); }

  bool is_scalar() const { return free_.empty(); }
  const Value& scalar_value() const;

  // ||gv||(coord = value): drops the coordinate when free, identity
  // otherwise (application that "does not succeed" leaves the value as is).
  GeneralizedValue apply(const std::string& coord, const std::string& value,
                         const CoordinateRegistry& reg) const;

  // True iff the value is constant along the coordinate (or the coordinate
  // is not free), so further application is the identity.
  bool is_fixpoint(const std::string& coord, const CoordinateRegistry& reg) const;

  bool operator==(const GeneralizedValue&) const = default;

 private:
  std::vector<std::string> free_;
  std::map<Tuple, Value> table_;
};

struct UserProfile {
  std::string user;
  std::map<std::string, std::string> coordinates;  // coord name -> value
  std::string role = "ordinary";
};

// Request cost model: per-stage duration l_i plus an overhead q_i that may
// still be generalized over coordinates.
struct CostStage {
  int64_t duration = 0;  // non-negative
  GeneralizedValue overhead;
};

struct CostModel {
  std::string name;
  std::vector<CostStage> stages;  // n >= 1
};

// The user-set reading of a parameterized functional: base user ids narrowed
// by assignment points.
struct Functional {
  std::string name;
  std::vector<std::string> coordinate_order;
  std::vector<std::string> base;  // user ids
};

class ProfileRegistry {
 public:
  CoordinateRegistry& coordinates() { return coords_; }
  const CoordinateRegistry& coordinates() const { return coords_; }

  void define_generalized(const std::string& name, GeneralizedValue gv);
  const GeneralizedValue& require_generalized(const std::string& name) const;
  const std::map<std::string, GeneralizedValue>& generalized() const { return generalized_; }

  void define_cost_model(CostModel model);
  const CostModel& require_cost_model(const std::string& name) const;
  const std::map<std::string, CostModel>& cost_models() const { return models_; }

  void define_user(UserProfile profile);
  void set_role(const std::string& user, const std::string& role);
  const UserProfile* find_user(const std::string& user) const;
  const UserProfile& require_user(const std::string& user) const;
  const std::map<std::string, UserProfile>& users() const { return users_; }

 private:
  CoordinateRegistry coords_;
  std::map<std::string, GeneralizedValue> generalized_;
  std::map<std::string, CostModel> models_;
  std::map<std::string, UserProfile> users_;
};

// Users from the functional's base whose profiles match every assignment;
// unassigned coordinates are unconstrained.
std::vector<std::string> evaluate_functional(
    const Functional& f, const std::vector<std::pair<std::string, std::string>>& assignments,
    const ProfileRegistry& reg);

// Sum over stages of duration + overhead after applying the profile's
// coordinates; throws unresolved_cost when an overhead stays generalized.
int64_t estimate_request_cost(const CostModel& model, const UserProfile& profile,
                              const CoordinateRegistry& reg);

// Partition of users keyed by their coordinate-value tuples. Cell count is
// the segmentation degree.
std::map<std::vector<std::string>, std::vector<std::string>> segment_users(
    const std::vector<std::string>& users, const std::vector<std::string>& coords,
    const ProfileRegistry& reg);

}  // namespace ocp

#endif
