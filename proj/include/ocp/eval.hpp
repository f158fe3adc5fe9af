#ifndef OCP_EVAL_HPP
#define OCP_EVAL_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ocp/formula.hpp"
#include "ocp/repository.hpp"

namespace ocp {

// Evaluation index: a repository snapshot plus an optional state-version pin
// (a log position; states and individuals created later are invisible).
// Dynamic constants carry session-bound names such as `user` and `payload`.
struct EvalContext {
  const Repository* repo = nullptr;
  std::optional<uint64_t> pin;
  std::map<std::string, Value> bindings;
  std::map<std::string, Value> dynamic_constants;
};

// Rewrites unresolved `name` terms into variable / attribute-of-self /
// constant terms. Resolution order: bound variable, then attribute of the
// self variable's domain, then declared or dynamic constant.
struct ResolveScope {
  const Repository* repo = nullptr;
  std::string self_var;                    // empty when the formula is closed
  const ConceptDef* self_concept = nullptr;  // set for concept domains
  bool self_is_meta = false;               // set for tower-level domains >= 1
  std::set<std::string> dynamic_constants;
};

void resolve_formula(Formula& f, const ResolveScope& scope);

// Pseudo-attributes readable on meta objects (name, level, extension-size
// plus the descriptor keys).
bool is_meta_attribute(const std::string& attr);

Value eval_term(const TermExpr& t, const EvalContext& ctx);
bool eval_formula(const Formula& f, EvalContext& ctx);

// Elements of a domain, in canonical order (oid / meta-id ascending, enum
// values in value order).
std::vector<Value> domain_elements(const Repository& repo, const DomainSpec& domain,
                                   std::optional<uint64_t> pin);

// {x : D | phi}; phi's free variables must be contained in {var}.
std::vector<Value> comprehend(const Repository& repo, const Formula& phi, const std::string& var,
                              const DomainSpec& domain, std::optional<uint64_t> pin = std::nullopt,
                              const std::map<std::string, Value>* dynamic_constants = nullptr);

// The unique witness; throws no_witness / ambiguous otherwise.
Value individualize(const Repository& repo, const Formula& phi, const std::string& var,
                    const DomainSpec& domain, std::optional<uint64_t> pin = std::nullopt);

// All mappings I -> T for a finite T, lexicographic by (sorted) label then
// canonical value order. |result| = |T|^|I|.
std::vector<std::map<std::string, Value>> enumerate_sort(const Repository& repo,
                                                         const std::vector<std::string>& labels,
                                                         const TypeTag& target);

// Pattern query over one predicate: terms may be variables; returns all
// satisfying bindings in canonical order.
struct FramePattern {
  std::string predicate;
  TermExpr subject;
  TermExpr object;
};

std::vector<std::map<std::string, Value>> query_frames(const Repository& repo,
                                                       const FramePattern& pattern);

// Tower support. compute_extension evaluates the defining formula over the
// meta object's domain; refresh_extension recomputes only when the cache is
// older than the latest lower-level write.
std::vector<uint64_t> compute_extension(const Repository& repo, const MetaObject& meta,
                                        std::optional<uint64_t> pin = std::nullopt);
const std::vector<uint64_t>& refresh_extension(Repository& repo, MetaObject& meta, uint64_t now);

struct Described {
  std::map<std::string, std::string> descriptors;  // meta objects: verbatim
  std::vector<std::string> containing;             // metas one level up whose extension holds ref
};

Described describe(Repository& repo, const ObjectRef& ref, uint64_t now);

}  // namespace ocp

#endif
