#include "dialogm/fil.hpp"

#include <algorithm>
#include <sstream>

#include "dialogm/error.hpp"

namespace dialogm::fil {

TruthValue kleene_not(TruthValue v) {
  switch (v) {
    case TruthValue::T:
      return TruthValue::F;
    case TruthValue::F:
      return TruthValue::T;
    default:
      return TruthValue::U;
  }
}

TruthValue kleene_and(TruthValue a, TruthValue b) { return std::min(a, b); }
TruthValue kleene_or(TruthValue a, TruthValue b) { return std::max(a, b); }

char to_char(TruthValue v) {
  switch (v) {
    case TruthValue::T:
      return 'T';
    case TruthValue::F:
      return 'F';
    default:
      return 'U';
  }
}

// ---------------------------------------------------------------------------
// Formula construction

Formula Formula::make(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  return make({Kind::Atom, std::move(predicate), {}, std::move(args), {}});
}

Formula Formula::negation(Formula f) { return make({Kind::Not, {}, {}, {}, {std::move(f)}}); }

Formula Formula::conj(std::vector<Formula> parts) { return make({Kind::And, {}, {}, {}, std::move(parts)}); }

Formula Formula::disj(std::vector<Formula> parts) { return make({Kind::Or, {}, {}, {}, std::move(parts)}); }

Formula Formula::implies(Formula lhs, Formula rhs) {
  return make({Kind::Implies, {}, {}, {}, {std::move(lhs), std::move(rhs)}});
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  return make({Kind::Iff, {}, {}, {}, {std::move(lhs), std::move(rhs)}});
}

Formula Formula::exists(std::string var, std::string sort, Formula body) {
  return make({Kind::Exists, std::move(var), std::move(sort), {}, {std::move(body)}});
}

Formula Formula::forall(std::string var, std::string sort, Formula body) {
  return make({Kind::Forall, std::move(var), std::move(sort), {}, {std::move(body)}});
}

Formula Formula::ionic(std::vector<Formula> justifications, Formula conclusion) {
  for (const auto& j : justifications)
    if (contains_ionic(j)) throw NestedIonic();
  if (contains_ionic(conclusion)) throw NestedIonic();
  justifications.push_back(std::move(conclusion));
  return make({Kind::Ionic, {}, {}, {}, std::move(justifications)});
}

std::vector<Formula> Formula::justifications() const {
  return {node_->children.begin(), node_->children.end() - 1};
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  return a.kind == b.kind && a.name == b.name && a.sort == b.sort && a.args == b.args &&
         a.children == b.children;
}

bool contains_ionic(const Formula& f) {
  if (f.is(Formula::Kind::Ionic)) return true;
  return std::any_of(f.children().begin(), f.children().end(), contains_ionic);
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& t : f.args())
        if (t.is_var() && !bound.count(t.name)) out.insert(t.name);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      const bool fresh = bound.insert(f.var()).second;
      collect_free(f.body(), bound, out);
      if (fresh) bound.erase(f.var());
      return;
    }
    default:
      for (const auto& c : f.children()) collect_free(c, bound, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

Formula substitute(const Formula& f, const Bindings& b) {
  if (b.empty()) return f;
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args = f.args();
      bool changed = false;
      for (auto& t : args) {
        if (!t.is_var()) continue;
        if (auto it = b.find(t.name); it != b.end()) {
          t = Term::constant(it->second);
          changed = true;
        }
      }
      return changed ? Formula::atom(f.predicate(), std::move(args)) : f;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      Bindings inner = b;
      inner.erase(f.var());
      Formula body = substitute(f.body(), inner);
      return f.is(Formula::Kind::Exists) ? Formula::exists(f.var(), f.sort(), std::move(body))
                                         : Formula::forall(f.var(), f.sort(), std::move(body));
    }
    default: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(substitute(c, b));
      switch (f.kind()) {
        case Formula::Kind::Not:
          return Formula::negation(kids[0]);
        case Formula::Kind::And:
          return Formula::conj(std::move(kids));
        case Formula::Kind::Or:
          return Formula::disj(std::move(kids));
        case Formula::Kind::Implies:
          return Formula::implies(kids[0], kids[1]);
        case Formula::Kind::Iff:
          return Formula::iff(kids[0], kids[1]);
        default: {
          Formula conclusion = kids.back();
          kids.pop_back();
          return Formula::ionic(std::move(kids), std::move(conclusion));
        }
      }
    }
  }
}

Formula substitute(const Formula& f, const std::string& var, const Term& replacement) {
  // Variable-for-variable renaming goes through a private path; the
  // Bindings overload only maps to constants.
  if (!replacement.is_var()) return substitute(f, Bindings{{var, replacement.name}});
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args = f.args();
      for (auto& t : args)
        if (t.is_var() && t.name == var) t = replacement;
      return Formula::atom(f.predicate(), std::move(args));
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      if (f.var() == var) return f;
      return f.is(Formula::Kind::Exists)
                 ? Formula::exists(f.var(), f.sort(), substitute(f.body(), var, replacement))
                 : Formula::forall(f.var(), f.sort(), substitute(f.body(), var, replacement));
    default: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(substitute(c, var, replacement));
      switch (f.kind()) {
        case Formula::Kind::Not:
          return Formula::negation(kids[0]);
        case Formula::Kind::And:
          return Formula::conj(std::move(kids));
        case Formula::Kind::Or:
          return Formula::disj(std::move(kids));
        case Formula::Kind::Implies:
          return Formula::implies(kids[0], kids[1]);
        case Formula::Kind::Iff:
          return Formula::iff(kids[0], kids[1]);
        default: {
          Formula conclusion = kids.back();
          kids.pop_back();
          return Formula::ionic(std::move(kids), std::move(conclusion));
        }
      }
    }
  }
}

namespace {

void render(const Formula& f, std::ostream& os);

void render_list(const std::vector<Formula>& parts, std::ostream& os) {
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) os << ", ";
    render(parts[k], os);
  }
}

void render(const Formula& f, std::ostream& os) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
      os << f.predicate() << '(';
      for (std::size_t k = 0; k < f.args().size(); ++k) {
        if (k) os << ',';
        os << f.args()[k].name;
      }
      os << ')';
      return;
    case K::Not:
      os << "not(";
      render(f.body(), os);
      os << ')';
      return;
    case K::And:
    case K::Or:
      if (f.children().empty()) {
        os << (f.is(K::And) ? "true" : "false");
        return;
      }
      os << (f.is(K::And) ? "and(" : "or(");
      render_list(f.children(), os);
      os << ')';
      return;
    case K::Implies:
    case K::Iff:
      os << (f.is(K::Implies) ? "implies(" : "iff(");
      render_list(f.children(), os);
      os << ')';
      return;
    case K::Exists:
    case K::Forall:
      os << (f.is(K::Exists) ? "exists(" : "forall(") << f.var();
      if (!f.sort().empty()) os << ':' << f.sort();
      os << ", ";
      render(f.body(), os);
      os << ')';
      return;
    case K::Ionic:
      os << "ionic([";
      render_list(f.justifications(), os);
      os << "], ";
      render(f.conclusion(), os);
      os << ')';
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream os;
  render(f, os);
  return os.str();
}

std::string to_string(const SignedAtom& a) {
  std::string out = a.positive ? "+" : "-";
  out += a.predicate + "(";
  for (std::size_t k = 0; k < a.args.size(); ++k) {
    if (k) out += ",";
    out += a.args[k];
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Partial interpretations

namespace {

bool contains(const std::map<std::string, std::set<Tuple>>& sets, const std::string& p, const Tuple& t) {
  auto it = sets.find(p);
  return it != sets.end() && it->second.count(t);
}

bool subset(const std::map<std::string, std::set<Tuple>>& a, const std::map<std::string, std::set<Tuple>>& b) {
  for (const auto& [pred, tuples] : a) {
    if (tuples.empty()) continue;
    auto it = b.find(pred);
    if (it == b.end()) return false;
    if (!std::includes(it->second.begin(), it->second.end(), tuples.begin(), tuples.end())) return false;
  }
  return true;
}

}  // namespace

bool PartialInterpretation::in_plus(const std::string& p, const Tuple& t) const { return contains(plus_, p, t); }
bool PartialInterpretation::in_minus(const std::string& p, const Tuple& t) const { return contains(minus_, p, t); }

TruthValue PartialInterpretation::value(const std::string& p, const Tuple& t) const {
  if (in_plus(p, t)) return TruthValue::T;
  if (in_minus(p, t)) return TruthValue::F;
  return TruthValue::U;
}

void PartialInterpretation::assert_literal(const SignedAtom& lit) {
  const bool clash = lit.positive ? in_minus(lit.predicate, lit.args) : in_plus(lit.predicate, lit.args);
  if (clash) throw InconsistentExtension(to_string(lit).substr(1));
  for (const auto& c : lit.args) universe_.insert(c);
  (lit.positive ? plus_ : minus_)[lit.predicate].insert(lit.args);
}

bool interp_leq(const PartialInterpretation& i, const PartialInterpretation& j) {
  return std::includes(j.universe().begin(), j.universe().end(), i.universe().begin(), i.universe().end()) &&
         subset(i.plus(), j.plus()) && subset(i.minus(), j.minus());
}

PartialInterpretation extend_interpretation(const PartialInterpretation& i, const SignedAtom& lit) {
  PartialInterpretation j = i;
  j.assert_literal(lit);
  return j;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

std::string resolve(const Term& t, const Bindings& b) {
  if (!t.is_var()) return t.name;
  auto it = b.find(t.name);
  if (it == b.end()) throw UnboundVariable(t.name);
  return it->second;
}

TruthValue eval(const Formula& f, const PartialInterpretation& i, Bindings& b) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom: {
      Tuple tuple;
      tuple.reserve(f.args().size());
      for (const auto& t : f.args()) tuple.push_back(resolve(t, b));
      return i.value(f.predicate(), tuple);
    }
    case K::Not:
      return kleene_not(eval(f.body(), i, b));
    case K::And: {
      TruthValue v = TruthValue::T;
      for (const auto& c : f.children()) {
        v = kleene_and(v, eval(c, i, b));
        if (v == TruthValue::F) break;
      }
      return v;
    }
    case K::Or: {
      TruthValue v = TruthValue::F;
      for (const auto& c : f.children()) {
        v = kleene_or(v, eval(c, i, b));
        if (v == TruthValue::T) break;
      }
      return v;
    }
    case K::Implies:
      return kleene_or(kleene_not(eval(f.children()[0], i, b)), eval(f.children()[1], i, b));
    case K::Iff: {
      const TruthValue l = eval(f.children()[0], i, b);
      const TruthValue r = eval(f.children()[1], i, b);
      if (l == TruthValue::U || r == TruthValue::U) return TruthValue::U;
      return l == r ? TruthValue::T : TruthValue::F;
    }
    case K::Exists:
    case K::Forall: {
      const bool existential = f.is(K::Exists);
      std::optional<std::string> saved;
      if (auto it = b.find(f.var()); it != b.end()) saved = it->second;
      TruthValue v = existential ? TruthValue::F : TruthValue::T;
      for (const auto& c : i.universe()) {
        b[f.var()] = c;
        const TruthValue w = eval(f.body(), i, b);
        v = existential ? kleene_or(v, w) : kleene_and(v, w);
        if (v == (existential ? TruthValue::T : TruthValue::F)) break;
      }
      if (saved)
        b[f.var()] = *saved;
      else
        b.erase(f.var());
      return v;
    }
    case K::Ionic:
      throw IonicInClassicalContext();
  }
  return TruthValue::U;
}

}  // namespace

TruthValue eval_formula(const Formula& f, const PartialInterpretation& i, const Bindings& b) {
  Bindings scratch = b;
  return eval(f, i, scratch);
}

// ---------------------------------------------------------------------------
// Ionic formulas

std::vector<std::string> sort_candidates(const PartialInterpretation& i, const std::string& sort) {
  if (sort.empty()) return {i.universe().begin(), i.universe().end()};
  std::vector<std::string> members;
  for (const auto& c : i.universe())
    if (i.in_plus(sort, {c})) members.push_back(c);
  if (!members.empty()) return members;
  for (const auto& c : i.universe())
    if (!i.in_minus(sort, {c})) members.push_back(c);
  return members;
}

IonicStatus ionic_status(const Formula& ionic, const PartialInterpretation& i, const Bindings& b,
                         const SortMap& sorts) {
  const std::vector<Formula> justs = ionic.justifications();

  std::set<std::string> open;
  for (const auto& j : justs)
    for (const auto& v : free_vars(j))
      if (!b.count(v)) open.insert(v);
  const std::vector<std::string> vars(open.begin(), open.end());

  std::vector<std::vector<std::string>> domains;
  bool any_empty = false;
  for (const auto& v : vars) {
    auto s = sorts.find(v);
    domains.push_back(sort_candidates(i, s == sorts.end() ? std::string() : s->second));
    any_empty = any_empty || domains.back().empty();
  }

  // Odometer over the completions, in lexicographic order.
  std::optional<Bindings> witness;
  std::optional<Formula> first_failure;
  bool all_fail = !any_empty;
  if (!any_empty) {
    std::vector<std::size_t> idx(vars.size(), 0);
    while (true) {
      Bindings full = b;
      for (std::size_t k = 0; k < vars.size(); ++k) full[vars[k]] = domains[k][idx[k]];
      bool all_true = true;
      bool failed = false;
      for (const auto& j : justs) {
        const TruthValue v = eval_formula(j, i, full);
        if (v == TruthValue::F) {
          if (!failed && !first_failure) first_failure = substitute(j, full);
          failed = true;
        }
        all_true = all_true && v == TruthValue::T;
      }
      all_fail = all_fail && failed;
      if (all_true && !witness) witness = full;

      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == domains[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }

  if (all_fail) return Blocked{*first_failure};
  if (vars.empty()) return Concluded{b};
  if (witness) return Concluded{*witness};
  Open result;
  for (const auto& v : vars) {
    auto s = sorts.find(v);
    result.vars.push_back({v, s == sorts.end() ? std::string() : s->second});
  }
  return result;
}

PositionReport justification_position(const std::vector<Formula>& justifications,
                                      const PartialInterpretation& i, const Bindings& b) {
  PositionReport r;
  r.value = eval_formula(Formula::conj(justifications), i, b);
  r.accepted = r.value == TruthValue::T;
  r.inacceptable = r.value == TruthValue::F;
  r.not_acceptable = r.value != TruthValue::T;
  r.not_inacceptable = r.value != TruthValue::F;
  return r;
}

}  // namespace dialogm::fil
