#ifndef OCP_FORMULA_HPP
#define OCP_FORMULA_HPP

#include <set>
#include <string>
#include <vector>

#include "ocp/value.hpp"

namespace ocp {

// Quantifier / comprehension domain. Named domains are concept extents or
// enums; `level j` addresses a whole tower level (0 = data objects).
struct DomainSpec {
  enum class Kind { named, level };
  Kind kind = Kind::named;
  std::string name;
  int32_t level = 0;

  static DomainSpec named(std::string n) { return {Kind::named, std::move(n), 0}; }
  static DomainSpec tower_level(int32_t j) { return {Kind::level, {}, j}; }

  bool operator==(const DomainSpec&) const = default;
};

std::string to_text(const DomainSpec& d);

// A term of the formula language. `name` terms are unresolved identifiers;
// the resolve pass (eval.hpp) rewrites them to variable / constant /
// attribute-of-self before evaluation. `symbolic_ref` is Concept[identity...]
// and is looked up against the repository at evaluation time.
struct TermExpr {
  enum class Kind { literal, name, variable, constant, attribute, symbolic_ref };

  Kind kind = Kind::literal;
  Value literal;
  std::string name;                // variable/constant name; attribute base variable
  std::string attribute;           // attribute kind only
  std::string ref_concept;         // symbolic_ref
  std::vector<Value> ref_identity; // symbolic_ref, in identifying-attribute order

  static TermExpr lit(Value v) {
    TermExpr t; t.kind = Kind::literal; t.literal = std::move(v); return t;
  }
  static TermExpr ident(std::string n) {
    TermExpr t; t.kind = Kind::name; t.name = std::move(n); return t;
  }
  static TermExpr var(std::string n) {
    TermExpr t; t.kind = Kind::variable; t.name = std::move(n); return t;
  }
  static TermExpr attr(std::string v, std::string a) {
    TermExpr t; t.kind = Kind::attribute; t.name = std::move(v); t.attribute = std::move(a);
    return t;
  }
  static TermExpr object(std::string concept_name, std::vector<Value> identity) {
    TermExpr t; t.kind = Kind::symbolic_ref; t.ref_concept = std::move(concept_name);
    t.ref_identity = std::move(identity); return t;
  }

  bool operator==(const TermExpr&) const = default;
};

enum class CompareOp { eq, ne, lt, le };

const char* compare_op_text(CompareOp op);

// Value-semantic formula tree. Connectives keep their operands in
// `children`; quantifiers use children[0] as the body.
struct Formula {
  enum class Kind { constant, frame, compare, logical_not, logical_and, logical_or, exists, forall };

  Kind kind = Kind::constant;
  bool truth = true;                // constant
  std::string predicate;            // frame
  std::vector<TermExpr> terms;      // frame: 2, compare: 2
  CompareOp op = CompareOp::eq;     // compare
  std::vector<Formula> children;
  std::string var;                  // quantifier variable
  DomainSpec domain;                // quantifier domain

  static Formula constant_of(bool b) {
    Formula f; f.kind = Kind::constant; f.truth = b; return f;
  }
  static Formula frame(std::string pred, TermExpr subj, TermExpr obj) {
    Formula f; f.kind = Kind::frame; f.predicate = std::move(pred);
    f.terms = {std::move(subj), std::move(obj)}; return f;
  }
  static Formula compare(TermExpr lhs, CompareOp op, TermExpr rhs) {
    Formula f; f.kind = Kind::compare; f.op = op;
    f.terms = {std::move(lhs), std::move(rhs)}; return f;
  }
  static Formula negation(Formula inner) {
    Formula f; f.kind = Kind::logical_not; f.children.push_back(std::move(inner)); return f;
  }
  static Formula conjunction(Formula a, Formula b) {
    Formula f; f.kind = Kind::logical_and;
    f.children.push_back(std::move(a)); f.children.push_back(std::move(b)); return f;
  }
  static Formula disjunction(Formula a, Formula b) {
    Formula f; f.kind = Kind::logical_or;
    f.children.push_back(std::move(a)); f.children.push_back(std::move(b)); return f;
  }
  static Formula exists(std::string v, DomainSpec d, Formula body) {
    Formula f; f.kind = Kind::exists; f.var = std::move(v); f.domain = std::move(d);
    f.children.push_back(std::move(body)); return f;
  }
  static Formula forall(std::string v, DomainSpec d, Formula body) {
    Formula f; f.kind = Kind::forall; f.var = std::move(v); f.domain = std::move(d);
    f.children.push_back(std::move(body)); return f;
  }

  bool operator==(const Formula&) const = default;
};

// Canonical text; parses back to an equal tree.
std::string to_text(const TermExpr& t);
std::string to_text(const Formula& f);

// Names of variable terms not bound by an enclosing quantifier. Unresolved
// `name` terms are included (they may later resolve to constants).
std::set<std::string> free_names(const Formula& f);

// Static mention sets, used for view change dependencies.
std::set<std::string> mentioned_predicates(const Formula& f);
std::set<std::string> mentioned_domains(const Formula& f);

}  // namespace ocp

#endif
