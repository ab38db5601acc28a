#pragma once

// Partial-information logic: first-order formulas evaluated over partial
// interpretations with strong Kleene connectives, extended by ionic
// (default) formulas *(justifications, conclusion).

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace dialogm::fil {

enum class TruthValue : std::uint8_t { F = 0, U = 1, T = 2 };

TruthValue kleene_not(TruthValue v);
TruthValue kleene_and(TruthValue a, TruthValue b);
TruthValue kleene_or(TruthValue a, TruthValue b);
char to_char(TruthValue v);

struct Term {
  enum class Kind : std::uint8_t { Var, Const };
  Kind kind = Kind::Const;
  std::string name;

  static Term var(std::string n) { return {Kind::Var, std::move(n)}; }
  static Term constant(std::string n) { return {Kind::Const, std::move(n)}; }
  bool is_var() const { return kind == Kind::Var; }
  auto operator<=>(const Term&) const = default;
};

using Bindings = std::map<std::string, std::string>;  // variable -> constant
using SortMap = std::map<std::string, std::string>;   // variable -> concept name

struct TypedVar {
  std::string name;
  std::string sort;  // empty when unsorted
  auto operator<=>(const TypedVar&) const = default;
};

// Immutable formula tree with shared structure. Quantifier sorts are
// annotations: evaluation ranges over the whole universe, while ionic
// witness search and dialog goals use the sort.
class Formula {
 public:
  enum class Kind : std::uint8_t { Atom, Not, And, Or, Implies, Iff, Exists, Forall, Ionic };

  static Formula atom(std::string predicate, std::vector<Term> args);
  static Formula negation(Formula f);
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula iff(Formula lhs, Formula rhs);
  static Formula exists(std::string var, std::string sort, Formula body);
  static Formula forall(std::string var, std::string sort, Formula body);
  // Throws NestedIonic when a justification or the conclusion is itself ionic.
  static Formula ionic(std::vector<Formula> justifications, Formula conclusion);
  static Formula truth() { return conj({}); }

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }

  const std::string& predicate() const { return node_->name; }  // Atom
  const std::vector<Term>& args() const { return node_->args; }  // Atom
  const std::string& var() const { return node_->name; }         // quantifiers
  const std::string& sort() const { return node_->sort; }        // quantifiers
  // Not: [f]; And/Or: parts; Implies/Iff: [lhs, rhs]; quantifiers: [body];
  // Ionic: justifications followed by the conclusion.
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& body() const { return node_->children.front(); }
  std::vector<Formula> justifications() const;
  const Formula& conclusion() const { return node_->children.back(); }

  bool operator==(const Formula& other) const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::string sort;
    std::vector<Term> args;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n);

  std::shared_ptr<const Node> node_;
};

bool contains_ionic(const Formula& f);
std::set<std::string> free_vars(const Formula& f);
Formula substitute(const Formula& f, const std::string& var, const Term& replacement);
Formula substitute(const Formula& f, const Bindings& b);

// Prefix rendering, e.g. forall(x:Train, iff(A(x), ionic([R(x,y)], R(x,y)))).
std::string to_string(const Formula& f);

using Tuple = std::vector<std::string>;

struct SignedAtom {
  bool positive = true;
  std::string predicate;
  Tuple args;
};

std::string to_string(const SignedAtom& a);

// Each predicate has disjoint positive and negative tuple sets; tuples in
// neither are undefined.
class PartialInterpretation {
 public:
  PartialInterpretation() = default;
  explicit PartialInterpretation(std::set<std::string> universe) : universe_(std::move(universe)) {}

  const std::set<std::string>& universe() const { return universe_; }
  const std::map<std::string, std::set<Tuple>>& plus() const { return plus_; }
  const std::map<std::string, std::set<Tuple>>& minus() const { return minus_; }

  TruthValue value(const std::string& predicate, const Tuple& args) const;
  bool in_plus(const std::string& predicate, const Tuple& args) const;
  bool in_minus(const std::string& predicate, const Tuple& args) const;

  // In-place variant of extend_interpretation for builders; same checks.
  void assert_literal(const SignedAtom& lit);
  void add_constant(const std::string& c) { universe_.insert(c); }

  bool operator==(const PartialInterpretation&) const = default;

 private:
  std::set<std::string> universe_;
  std::map<std::string, std::set<Tuple>> plus_;
  std::map<std::string, std::set<Tuple>> minus_;
};

bool interp_leq(const PartialInterpretation& i, const PartialInterpretation& j);
PartialInterpretation extend_interpretation(const PartialInterpretation& i, const SignedAtom& lit);

// Strong Kleene evaluation. Throws UnboundVariable or IonicInClassicalContext.
TruthValue eval_formula(const Formula& f, const PartialInterpretation& i, const Bindings& b = {});

struct Concluded {
  Bindings bindings;
};
struct Blocked {
  Formula failing;
};
struct Open {
  std::vector<TypedVar> vars;
};
using IonicStatus = std::variant<Concluded, Blocked, Open>;

// Candidate constants for a variable of the given sort: members of the sort's
// positive extension, or, when that is empty, every constant not known to be
// outside the sort.
std::vector<std::string> sort_candidates(const PartialInterpretation& i, const std::string& sort);

// Acceptance status of an ionic formula under i. Variables of the
// justifications not fixed by b are completed over sort_candidates. A
// justification false under every completion blocks; otherwise a completion
// making all justifications true concludes; otherwise the variables are open.
IonicStatus ionic_status(const Formula& ionic, const PartialInterpretation& i, const Bindings& b = {},
                         const SortMap& sorts = {});

struct PositionReport {
  TruthValue value = TruthValue::U;
  bool accepted = false;          // +*
  bool inacceptable = false;      // -*
  bool not_acceptable = false;    // value != T
  bool not_inacceptable = false;  // value != F
};

PositionReport justification_position(const std::vector<Formula>& justifications,
                                      const PartialInterpretation& i, const Bindings& b = {});

}  // namespace dialogm::fil
