#include "dialogm/tau.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "dialogm/error.hpp"

namespace dialogm::tau {

using fil::Formula;
using fil::Term;

fil::Formula FilLambda::operator()(const std::vector<fil::Term>& args) const {
  Formula out = body;
  for (std::size_t k = 0; k < params.size() && k < args.size(); ++k)
    out = fil::substitute(out, params[k].name, args[k]);
  return out;
}

namespace {

// First atomic conjunct of the unfolded concept, if any.
std::string primary_sort(const dl::ConceptExpr& c, const dl::Terminology* t) {
  dl::ConceptExpr u = c;
  if (t) {
    try {
      u = dl::unfold(c, *t);
    } catch (const UndefinedName&) {
    }
  }
  for (const auto& m : dl::conjuncts(u))
    if (m.kind == dl::ConceptExpr::Kind::Atomic) return m.name;
  return {};
}

// Sort of the object position of r: range for R, domain for inv(R).
std::string object_sort(const dl::RoleExpr& r, const dl::Terminology* t) {
  if (!t) return {};
  if (r.kind == dl::RoleExpr::Kind::Atomic) {
    const dl::RoleDecl* d = t->role(r.name);
    return d ? primary_sort(d->range, t) : std::string();
  }
  if (r.kind == dl::RoleExpr::Kind::Inverse && r.operands.front().kind == dl::RoleExpr::Kind::Atomic) {
    const dl::RoleDecl* d = t->role(r.operands.front().name);
    return d ? primary_sort(d->domain, t) : std::string();
  }
  return {};
}

class Translator {
 public:
  Translator(const dl::Terminology* t, const std::set<std::string>& user_rel, std::set<std::string> reserved)
      : t_(t), user_rel_(user_rel), used_(std::move(reserved)) {}

  std::string fresh(const std::string& sort, const std::string& fallback) {
    std::string base = sort.empty() ? fallback : std::string(1, static_cast<char>(std::tolower(sort[0])));
    if (used_.insert(base).second) return base;
    for (int k = 1;; ++k) {
      std::string name = base + std::to_string(k);
      if (used_.insert(name).second) return name;
    }
  }

  Formula role_at(const dl::RoleExpr& r, const Term& a, const Term& b) {
    switch (r.kind) {
      case dl::RoleExpr::Kind::Atomic: {
        if (t_ && !t_->is_role(r.name)) throw UndefinedName(r.name);
        Formula atom = Formula::atom(r.name, {a, b});
        if (user_rel_.count(r.name)) return Formula::ionic({atom}, atom);
        return atom;
      }
      case dl::RoleExpr::Kind::Inverse:
        return role_at(r.operands.front(), b, a);
      case dl::RoleExpr::Kind::Union: {
        std::vector<Formula> parts;
        for (const auto& m : r.operands) parts.push_back(role_at(m, a, b));
        return Formula::disj(std::move(parts));
      }
    }
    return Formula::truth();
  }

  Formula concept_at(const dl::ConceptExpr& c, const Term& x) {
    switch (c.kind) {
      case dl::ConceptExpr::Kind::Top:
        return Formula::truth();
      case dl::ConceptExpr::Kind::Atomic:
        if (t_ && !t_->is_concept(c.name)) throw UndefinedName(c.name);
        return Formula::atom(c.name, {x});
      case dl::ConceptExpr::Kind::And:
      case dl::ConceptExpr::Kind::Or: {
        std::vector<Formula> parts;
        for (const auto& m : c.operands) parts.push_back(concept_at(m, x));
        return c.kind == dl::ConceptExpr::Kind::And ? Formula::conj(std::move(parts))
                                                    : Formula::disj(std::move(parts));
      }
      case dl::ConceptExpr::Kind::Exists:
      case dl::ConceptExpr::Kind::Forall: {
        std::string sort = primary_sort(c.filler(), t_);
        if (sort.empty()) sort = object_sort(c.role, t_);
        const std::string v = fresh(sort, "y");
        Formula link = role_at(c.role, x, Term::var(v));
        Formula inner = concept_at(c.filler(), Term::var(v));
        // Siblings may reuse the name once its scope closes.
        used_.erase(v);
        if (c.kind == dl::ConceptExpr::Kind::Exists)
          return Formula::exists(v, sort, Formula::conj({std::move(link), std::move(inner)}));
        return Formula::forall(v, sort, Formula::implies(std::move(link), std::move(inner)));
      }
    }
    return Formula::truth();
  }

 private:
  const dl::Terminology* t_;
  const std::set<std::string>& user_rel_;
  std::set<std::string> used_;
};

std::string subject_sort(const dl::ConceptExpr& c, const dl::Terminology& t) { return primary_sort(c, &t); }

}  // namespace

FilLambda translate_role(const dl::RoleExpr& r, const std::set<std::string>& user_rel, const dl::Terminology* t) {
  std::string dom, ran;
  if (t && r.kind == dl::RoleExpr::Kind::Atomic) {
    if (const dl::RoleDecl* d = t->role(r.name)) {
      dom = primary_sort(d->domain, t);
      ran = primary_sort(d->range, t);
    }
  }
  Translator tr(t, user_rel, {});
  const std::string x = tr.fresh(dom, "x");
  const std::string y = tr.fresh(ran, "y");
  return {{{x, dom}, {y, ran}}, tr.role_at(r, Term::var(x), Term::var(y))};
}

fil::Formula translate_concept_at(const dl::ConceptExpr& c, const fil::Term& subject, const dl::Terminology& t,
                                  const std::set<std::string>& user_rel, const std::set<std::string>& reserved) {
  std::set<std::string> used = reserved;
  used.insert(subject.name);
  Translator tr(&t, user_rel, std::move(used));
  return tr.concept_at(c, subject);
}

FilLambda translate_concept(const dl::ConceptExpr& c, const dl::Terminology& t) {
  const std::set<std::string> user_rel = dl::compute_user_rel(t);
  const std::string sort = subject_sort(c, t);
  Translator tr(&t, user_rel, {});
  const std::string x = tr.fresh(sort, "x");
  return {{{x, sort}}, tr.concept_at(c, Term::var(x))};
}

std::vector<NamedFormula> translate_terminology(const dl::Terminology& t) {
  const std::set<std::string> user_rel = dl::compute_user_rel(t);
  std::vector<NamedFormula> out;
  for (const auto& [name, body] : t.definitions) {
    const std::string sort = subject_sort(body, t);
    Translator tr(&t, user_rel, {});
    const std::string x = tr.fresh(sort, "x");
    Formula def = Formula::iff(Formula::atom(name, {Term::var(x)}), tr.concept_at(body, Term::var(x)));
    out.push_back({name, Formula::forall(x, sort, std::move(def))});
  }

  std::vector<std::string> targets;
  for (const auto& [surface, target] : t.synonyms)
    if (std::find(targets.begin(), targets.end(), target) == targets.end()) targets.push_back(target);
  for (const auto& target : targets) {
    const bool binary = t.is_role(target);
    std::vector<Term> args{Term::var("x")};
    if (binary) args.push_back(Term::var("y"));
    std::vector<Formula> alternatives;
    for (const auto& [surface, tgt] : t.synonyms)
      if (tgt == target) alternatives.push_back(Formula::atom(surface, args));
    Formula premise = alternatives.size() == 1 ? alternatives.front() : Formula::disj(std::move(alternatives));
    Formula f = Formula::implies(std::move(premise), Formula::atom(target, args));
    if (binary) f = Formula::forall("y", "", std::move(f));
    out.push_back({"synonym " + target, Formula::forall("x", "", std::move(f))});
  }
  return out;
}

std::string render_theory(const std::vector<NamedFormula>& theory) {
  std::ostringstream os;
  for (const auto& nf : theory) os << nf.name << ": " << fil::to_string(nf.formula) << '\n';
  return os.str();
}

}  // namespace dialogm::tau
