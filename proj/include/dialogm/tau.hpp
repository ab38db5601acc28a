#pragma once

// Translation of description-logic expressions into partial-information
// formulas. Roles in the user-relation set become ionic formulas whose
// justification is the role atom itself.

#include <set>
#include <string>
#include <vector>

#include "dialogm/dl.hpp"
#include "dialogm/fil.hpp"

namespace dialogm::tau {

struct FilLambda {
  std::vector<fil::TypedVar> params;
  fil::Formula body = fil::Formula::truth();

  // Substitutes args for params, left to right.
  fil::Formula operator()(const std::vector<fil::Term>& args) const;
};

// With a terminology, undeclared roles raise UndefinedName and parameters are
// named after the declared domain and range.
FilLambda translate_role(const dl::RoleExpr& r, const std::set<std::string>& user_rel,
                         const dl::Terminology* t = nullptr);

FilLambda translate_concept(const dl::ConceptExpr& c, const dl::Terminology& t);

// Translation of c applied to subject. Bound variables avoid reserved and
// every enclosing binder; sibling scopes may reuse a name.
fil::Formula translate_concept_at(const dl::ConceptExpr& c, const fil::Term& subject, const dl::Terminology& t,
                                  const std::set<std::string>& user_rel, const std::set<std::string>& reserved = {});

struct NamedFormula {
  std::string name;
  fil::Formula formula;
};

// One closed biconditional per definition, then one implication per synonym
// target: forall x. (syn1(x) or syn2(x)) -> Target(x).
std::vector<NamedFormula> translate_terminology(const dl::Terminology& t);

// "name: formula" lines.
std::string render_theory(const std::vector<NamedFormula>& theory);

}  // namespace dialogm::tau
