#ifndef OCP_TESTS_ORACLE_HPP
#define OCP_TESTS_ORACLE_HPP

#include <string>
#include <vector>

#include "ocp/formula.hpp"
#include "ocp/repository.hpp"

// Independent reference evaluator used to cross-check comprehension and
// individualization. It works by substitution: the comprehension variable is
// replaced by the candidate element, then the closed formula is decided
// recursively. It shares only the AST and raw storage accessors with the
// engine, none of its evaluation code.
namespace oracle {

// Attribute of one element read straight from storage (identity + last
// state record; meta pseudo-attributes recomputed from scratch).
ocp::Value attribute_of(const ocp::Repository& repo, const ocp::ObjectRef& ref,
                        const std::string& attr);

// Three-way comparison with the cross-kind ordering written out by hand.
int compare_values(const ocp::Value& a, const ocp::Value& b);

// Domain elements enumerated directly from storage.
std::vector<ocp::Value> elements_of(const ocp::Repository& repo, const ocp::DomainSpec& domain);

// Truth of a resolved formula for var := element.
bool holds(const ocp::Repository& repo, const ocp::Formula& phi, const std::string& var,
           const ocp::Value& element);

// Per-element brute-force filter (the reference for comprehend).
std::vector<ocp::Value> filter(const ocp::Repository& repo, const ocp::Formula& phi,
                               const std::string& var, const ocp::DomainSpec& domain);

}  // namespace oracle

#endif
