#ifndef OCP_TESTS_FIXTURES_HPP
#define OCP_TESTS_FIXTURES_HPP

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "ocp/repository.hpp"

namespace fixtures {

// A randomly populated repository plus the catalogs the formula generator
// draws from.
struct RandomUniverse {
  std::unique_ptr<ocp::Repository> repo;
  uint64_t pos = 0;
  std::vector<std::string> concepts;
  std::vector<std::string> enums;
  std::vector<std::string> predicates;
  std::vector<ocp::Value> value_pool;

  ocp::Repository& r() { return *repo; }
  uint64_t next_pos() { return ++pos; }
};

RandomUniverse make_universe(std::mt19937& rng, size_t max_individuals = 64);

// A resolved formula whose only free variable is `self_var`, ranging over
// the given concept's extent.
ocp::Formula random_formula(std::mt19937& rng, const RandomUniverse& u,
                            const std::string& concept_name, const std::string& self_var,
                            int depth);

}  // namespace fixtures

#endif
