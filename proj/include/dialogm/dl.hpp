#pragma once

// Definitional description logic: concept/role expressions, acyclic
// terminologies, fact bases and open-world instance checking.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dialogm::dl {

struct RoleExpr {
  enum class Kind : std::uint8_t { Atomic, Inverse, Union };
  Kind kind = Kind::Atomic;
  std::string name;               // Atomic
  std::vector<RoleExpr> operands;  // Inverse: [r]; Union: members

  static RoleExpr atomic(std::string n);
  // inverse(inverse(r)) == r.
  static RoleExpr inverse(RoleExpr r);
  static RoleExpr union_of(std::vector<RoleExpr> members);

  bool operator==(const RoleExpr&) const = default;
};

struct ConceptExpr {
  enum class Kind : std::uint8_t { Top, Atomic, And, Or, Exists, Forall };
  Kind kind = Kind::Top;
  std::string name;                  // Atomic
  RoleExpr role;                     // Exists / Forall
  std::vector<ConceptExpr> operands;  // And/Or: members; Exists/Forall: [filler]

  static ConceptExpr top() { return {}; }
  static ConceptExpr atomic(std::string n);
  static ConceptExpr conj(std::vector<ConceptExpr> members);
  static ConceptExpr disj(std::vector<ConceptExpr> members);
  static ConceptExpr exists(RoleExpr r, ConceptExpr filler);
  static ConceptExpr forall(RoleExpr r, ConceptExpr filler);

  const ConceptExpr& filler() const { return operands.front(); }
  bool operator==(const ConceptExpr&) const = default;
};

// Domain-file syntax: "exists inv(DepartFrom).User and Station".
std::string to_string(const RoleExpr& r);
std::string to_string(const ConceptExpr& c);

struct RoleDecl {
  std::string name;
  ConceptExpr domain;
  ConceptExpr range;
};

struct Terminology {
  std::vector<std::string> primitive_concepts;                  // declaration order
  std::vector<RoleDecl> roles;                                  // declaration order
  std::vector<std::pair<std::string, ConceptExpr>> definitions;  // declaration order
  std::vector<std::pair<std::string, std::string>> synonyms;    // surface -> target symbol
  std::map<std::string, std::string> question_templates;        // role -> template
  std::string user_concept;

  bool is_concept(const std::string& n) const;
  bool is_primitive(const std::string& n) const;
  bool is_defined(const std::string& n) const;
  bool is_role(const std::string& n) const;
  const ConceptExpr* definition(const std::string& n) const;
  const RoleDecl* role(const std::string& n) const;
};

// Concept and role assertions over named individuals.
class FactBase {
 public:
  const std::set<std::string>& individuals() const { return individuals_; }
  // concept -> members
  const std::map<std::string, std::set<std::string>>& concepts() const { return concepts_; }
  // role -> (subject, object) pairs
  const std::map<std::string, std::set<std::pair<std::string, std::string>>>& roles() const { return roles_; }
  // Predicate names facts may use; filled from a terminology or from the
  // facts themselves.
  const std::set<std::string>& predicates() const { return predicates_; }

  void add_individual(const std::string& a) { individuals_.insert(a); }
  void add_concept(const std::string& concept_name, const std::string& a);
  void add_role(const std::string& role_name, const std::string& a, const std::string& b);
  void declare_predicate(const std::string& p) { predicates_.insert(p); }

  bool has_concept(const std::string& concept_name, const std::string& a) const;
  bool has_role(const std::string& role_name, const std::string& a, const std::string& b) const;
  std::set<std::string> successors(const RoleExpr& r, const std::string& a) const;
  std::set<std::string> members(const std::string& concept_name) const;

  // Component-wise union.
  FactBase merged(const FactBase& other) const;
  // Component-wise subset.
  bool subset_of(const FactBase& other) const;

 private:
  std::set<std::string> individuals_;
  std::map<std::string, std::set<std::string>> concepts_;
  std::map<std::string, std::set<std::pair<std::string, std::string>>> roles_;
  std::set<std::string> predicates_;
};

enum class ProofStatus : std::uint8_t { Proved, Unproved };

// Checks the terminology: acyclic definitions, resolved names, a designated
// user concept, and bounded satisfiability of each definition body. Throws
// CyclicTerminology, UndefinedName or UnsatisfiableDefinition.
void validate(const Terminology& t);

// Roles whose unfolded domain or range has the user concept as a conjunct.
std::set<std::string> compute_user_rel(const Terminology& t);

// Replaces defined names by their bodies until only primitives remain and
// flattens nested conjunctions.
ConceptExpr unfold(const ConceptExpr& c, const Terminology& t);

// Names (concepts and roles) mentioned in an expression.
std::set<std::string> concept_names(const ConceptExpr& c);
std::set<std::string> role_names(const RoleExpr& r);
std::set<std::string> role_names(const ConceptExpr& c);

// Top-level conjuncts of c (c itself when it is not a conjunction).
std::vector<ConceptExpr> conjuncts(const ConceptExpr& c);

// Open-world check of a positive query rooted at a. Never concludes a
// negative; forall is checked against known successors only.
ProofStatus instance_check(const std::string& a, const ConceptExpr& c, const Terminology& t, const FactBase& kb);

// Whether c has a model over some universe of at most max_universe elements.
bool satisfiable_bounded(const ConceptExpr& c, const Terminology& t, int max_universe = 3);

// Members of c in kb read as a closed interpretation (c must be unfolded
// or only mention primitives).
std::set<std::string> extension(const ConceptExpr& c, const FactBase& kb);

}  // namespace dialogm::dl
