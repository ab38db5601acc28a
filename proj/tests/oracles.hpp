#pragma once

// Brute-force reference semantics used by the unit and acceptance tests.
// Nothing here calls the evaluators under test; they only share the data
// types.

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dialogm/dl.hpp"
#include "dialogm/drs.hpp"
#include "dialogm/fil.hpp"
#include "dialogm/solver.hpp"

namespace oracle {

using dialogm::fil::Formula;
using dialogm::fil::PartialInterpretation;
using dialogm::fil::Term;
using dialogm::fil::TruthValue;
using Tuple = std::vector<std::string>;

// ---------------------------------------------------------------------------
// Two-valued models.

struct Model {
  std::vector<std::string> universe;
  std::map<std::string, std::set<Tuple>> ext;

  bool holds(const std::string& p, const Tuple& t) const {
    auto it = ext.find(p);
    return it != ext.end() && it->second.count(t) > 0;
  }
};

using Env = std::map<std::string, std::string>;

inline std::string resolve(const Term& t, const Env& env) {
  if (!t.is_var()) return t.name;
  return env.at(t.name);
}

// Classical truth of an ionic-free formula.
inline bool classical(const Formula& f, const Model& m, Env env = {}) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom: {
      Tuple t;
      for (const auto& a : f.args()) t.push_back(resolve(a, env));
      return m.holds(f.predicate(), t);
    }
    case K::Not:
      return !classical(f.body(), m, env);
    case K::And:
      for (const auto& c : f.children())
        if (!classical(c, m, env)) return false;
      return true;
    case K::Or:
      for (const auto& c : f.children())
        if (classical(c, m, env)) return true;
      return false;
    case K::Implies:
      return !classical(f.children()[0], m, env) || classical(f.children()[1], m, env);
    case K::Iff:
      return classical(f.children()[0], m, env) == classical(f.children()[1], m, env);
    case K::Exists:
      for (const auto& d : m.universe) {
        env[f.var()] = d;
        if (classical(f.body(), m, env)) return true;
      }
      return false;
    case K::Forall:
      for (const auto& d : m.universe) {
        env[f.var()] = d;
        if (!classical(f.body(), m, env)) return false;
      }
      return true;
    case K::Ionic:
      break;
  }
  throw std::logic_error("ionic formula in classical oracle");
}

// Truth value over a partial interpretation, read off the set of its total
// completions: T if true in all, F if false in all, U otherwise. Exact
// (supervaluation) rather than Kleene, so only compared on formulas where
// the two coincide or where only definedness matters.
inline std::vector<Model> completions(const PartialInterpretation& i, const std::map<std::string, int>& sig) {
  std::vector<std::pair<std::string, Tuple>> undefined;
  Model base;
  base.universe.assign(i.universe().begin(), i.universe().end());
  for (const auto& [p, arity] : sig) {
    std::vector<Tuple> tuples{{}};
    for (int k = 0; k < arity; ++k) {
      std::vector<Tuple> next;
      for (const auto& t : tuples)
        for (const auto& d : base.universe) {
          Tuple u = t;
          u.push_back(d);
          next.push_back(u);
        }
      tuples = next;
    }
    for (const auto& t : tuples) {
      if (i.in_plus(p, t))
        base.ext[p].insert(t);
      else if (!i.in_minus(p, t))
        undefined.emplace_back(p, t);
    }
  }
  std::vector<Model> out;
  const std::size_t n = undefined.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Model m = base;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1) m.ext[undefined[k].first].insert(undefined[k].second);
    out.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ionic acceptance read directly off the extensions of i: a completion of
// the open variables is possible when some total extension makes every
// justification true, certain when every extension does.

enum class IonicVerdict { Concluded, Blocked, Open };

struct IonicOracle {
  IonicVerdict verdict;
  std::set<std::string> open_vars;
  // For Concluded with open variables: the completions that are certain.
  std::vector<Env> certain;
};

inline IonicOracle ionic_by_extensions(const Formula& ionic, const PartialInterpretation& i,
                                       const std::map<std::string, int>& sig) {
  const std::vector<Formula> justs = ionic.justifications();
  std::set<std::string> vars;
  for (const auto& j : justs)
    for (const auto& v : dialogm::fil::free_vars(j)) vars.insert(v);
  const std::vector<std::string> vs(vars.begin(), vars.end());
  const std::vector<Model> models = completions(i, sig);
  const std::vector<std::string> universe(i.universe().begin(), i.universe().end());

  IonicOracle out{IonicVerdict::Blocked, vars, {}};
  bool any_possible = false;
  std::function<void(std::size_t, Env&)> walk = [&](std::size_t k, Env& env) {
    if (k == vs.size()) {
      bool possible = false, certain = true;
      for (const auto& m : models) {
        bool all = true;
        for (const auto& j : justs) all = all && classical(j, m, env);
        possible = possible || all;
        certain = certain && all;
      }
      any_possible = any_possible || possible;
      if (certain) out.certain.push_back(env);
      return;
    }
    for (const auto& d : universe) {
      env[vs[k]] = d;
      walk(k + 1, env);
    }
    env.erase(vs[k]);
  };
  Env env;
  walk(0, env);

  if (!any_possible && !(universe.empty() && !vs.empty())) {
    out.verdict = IonicVerdict::Blocked;
  } else if (vs.empty() || !out.certain.empty()) {
    out.verdict = IonicVerdict::Concluded;
  } else {
    out.verdict = IonicVerdict::Open;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Description logic over total models.

inline std::set<std::string> role_succ(const dialogm::dl::RoleExpr& r, const std::string& a, const Model& m) {
  using K = dialogm::dl::RoleExpr::Kind;
  std::set<std::string> out;
  switch (r.kind) {
    case K::Atomic:
      for (const auto& d : m.universe)
        if (m.holds(r.name, {a, d})) out.insert(d);
      break;
    case K::Inverse: {
      const auto& inner = r.operands.front();
      for (const auto& d : m.universe)
        if (role_succ(inner, d, m).count(a)) out.insert(d);
      break;
    }
    case K::Union:
      for (const auto& s : r.operands)
        for (const auto& d : role_succ(s, a, m)) out.insert(d);
      break;
  }
  return out;
}

// Membership of a in c; defined names are looked up in the model.
inline bool dl_member(const dialogm::dl::ConceptExpr& c, const std::string& a, const Model& m) {
  using K = dialogm::dl::ConceptExpr::Kind;
  switch (c.kind) {
    case K::Top:
      return true;
    case K::Atomic:
      return m.holds(c.name, {a});
    case K::And:
      for (const auto& o : c.operands)
        if (!dl_member(o, a, m)) return false;
      return true;
    case K::Or:
      for (const auto& o : c.operands)
        if (dl_member(o, a, m)) return true;
      return false;
    case K::Exists:
      for (const auto& d : role_succ(c.role, a, m))
        if (dl_member(c.filler(), d, m)) return true;
      return false;
    case K::Forall:
      for (const auto& d : role_succ(c.role, a, m))
        if (!dl_member(c.filler(), d, m)) return false;
      return true;
  }
  return false;
}

// Fills in defined concepts in declaration order (acyclic, so each body only
// mentions earlier names or primitives).
inline void close_definitions(const dialogm::dl::Terminology& t, Model& m) {
  for (const auto& [name, body] : t.definitions) {
    std::set<Tuple> ext;
    for (const auto& d : m.universe)
      if (dl_member(body, d, m)) ext.insert({d});
    m.ext[name] = ext;
  }
}

// Calls visit(model) for every model over a universe of size n assigning
// arbitrary extensions to the given predicates. Stops when visit returns true.
inline bool for_each_model(int n, const std::map<std::string, int>& sig, const std::function<bool(Model&)>& visit) {
  Model base;
  for (int k = 0; k < n; ++k) base.universe.push_back("d" + std::to_string(k));
  std::vector<std::pair<std::string, Tuple>> slots;
  for (const auto& [p, arity] : sig) {
    if (arity == 1)
      for (const auto& d : base.universe) slots.push_back({p, {d}});
    else
      for (const auto& a : base.universe)
        for (const auto& b : base.universe) slots.push_back({p, {a, b}});
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    Model m = base;
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (mask >> k & 1) m.ext[slots[k].first].insert(slots[k].second);
    if (visit(m)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Fact-base instance checking: the closed positive reading of the unfolded
// query over the asserted facts.

inline Model model_of(const dialogm::dl::FactBase& kb) {
  Model m;
  m.universe.assign(kb.individuals().begin(), kb.individuals().end());
  for (const auto& [c, members] : kb.concepts())
    for (const auto& a : members) m.ext[c].insert({a});
  for (const auto& [r, pairs] : kb.roles())
    for (const auto& [a, b] : pairs) m.ext[r].insert({a, b});
  return m;
}

// ---------------------------------------------------------------------------
// Conjunctive queries by enumerating every assignment.

inline std::vector<dialogm::solver::SolverBinding> naive_query(const dialogm::solver::ConjunctiveQuery& q,
                                                              const dialogm::dl::FactBase& kb) {
  const Model m = model_of(kb);
  std::vector<std::string> vars;
  for (const auto& a : q.atoms)
    for (const auto& t : a.terms)
      if (t.is_var() && std::find(vars.begin(), vars.end(), t.name) == vars.end()) vars.push_back(t.name);
  std::set<std::vector<std::string>> rows;
  Env env;
  std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == vars.size()) {
      for (const auto& a : q.atoms) {
        Tuple t;
        for (const auto& term : a.terms) t.push_back(resolve(term, env));
        if (!m.holds(a.predicate, t)) return;
      }
      std::vector<std::string> row;
      for (const auto& v : q.answer_vars) row.push_back(env.at(v));
      rows.insert(row);
      return;
    }
    for (const auto& d : m.universe) {
      env[vars[k]] = d;
      walk(k + 1);
    }
  };
  walk(0);
  std::vector<dialogm::solver::SolverBinding> out;
  for (const auto& r : rows) {
    dialogm::solver::SolverBinding b;
    for (std::size_t k = 0; k < r.size(); ++k) b[q.answer_vars[k]] = r[k];
    out.push_back(b);
  }
  return out;
}

// ---------------------------------------------------------------------------
// DRS truth by embedding: some assignment of the variable referents makes
// every condition hold.

inline bool drs_embeds(const dialogm::drs::DRS& d, const Model& m) {
  std::vector<std::string> vars;
  for (const auto& r : d.referents)
    if (!r.constant) vars.push_back(r.name);
  Env env;
  std::function<bool(std::size_t)> walk = [&](std::size_t k) {
    if (k == vars.size()) {
      for (const auto& c : d.conditions) {
        Tuple t;
        for (const auto& a : c.args()) t.push_back(resolve(a, env));
        if (!m.holds(c.predicate(), t)) return false;
      }
      return true;
    }
    for (const auto& x : m.universe) {
      env[vars[k]] = x;
      if (walk(k + 1)) return true;
    }
    return false;
  };
  return walk(0);
}

// Every DRS with at most two variable referents (x, y) and at most three
// distinct conditions over P/1 and R/2, conditions using declared referents
// only.
inline std::vector<dialogm::drs::DRS> small_drss() {
  std::vector<dialogm::drs::DRS> out;
  const std::vector<std::vector<std::string>> ref_sets{{}, {"x"}, {"x", "y"}};
  for (const auto& refs : ref_sets) {
    std::vector<Formula> atoms;
    if (refs.empty()) {
      atoms.push_back(Formula::atom("P", {Term::constant("d0")}));
      atoms.push_back(Formula::atom("R", {Term::constant("d0"), Term::constant("d0")}));
    }
    for (const auto& a : refs) {
      atoms.push_back(Formula::atom("P", {Term::var(a)}));
      for (const auto& b : refs) atoms.push_back(Formula::atom("R", {Term::var(a), Term::var(b)}));
    }
    const std::size_t n = atoms.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) > 3) continue;
      dialogm::drs::DRS d;
      for (const auto& r : refs) d.referents.push_back({r, "", false});
      for (std::size_t k = 0; k < n; ++k)
        if (mask >> k & 1) d.conditions.push_back(atoms[k]);
      out.push_back(std::move(d));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random generators.

inline PartialInterpretation random_interpretation(std::mt19937& rng, const std::vector<std::string>& universe,
                                                   const std::map<std::string, int>& sig, int undefined_weight = 1) {
  PartialInterpretation i{std::set<std::string>(universe.begin(), universe.end())};
  std::uniform_int_distribution<int> pick(0, 1 + undefined_weight);
  for (const auto& [p, arity] : sig) {
    std::vector<Tuple> tuples;
    if (arity == 1)
      for (const auto& d : universe) tuples.push_back({d});
    else
      for (const auto& a : universe)
        for (const auto& b : universe) tuples.push_back({a, b});
    for (const auto& t : tuples) {
      const int v = pick(rng);
      if (v == 0) i.assert_literal({true, p, t});
      if (v == 1) i.assert_literal({false, p, t});
    }
  }
  return i;
}

// j >= i over the same universe: each undefined tuple may become defined.
inline PartialInterpretation random_extension(std::mt19937& rng, const PartialInterpretation& i,
                                              const std::map<std::string, int>& sig) {
  PartialInterpretation j = i;
  std::uniform_int_distribution<int> pick(0, 2);
  const std::vector<std::string> universe(i.universe().begin(), i.universe().end());
  for (const auto& [p, arity] : sig) {
    std::vector<Tuple> tuples;
    if (arity == 1)
      for (const auto& d : universe) tuples.push_back({d});
    else
      for (const auto& a : universe)
        for (const auto& b : universe) tuples.push_back({a, b});
    for (const auto& t : tuples) {
      if (i.in_plus(p, t) || i.in_minus(p, t)) continue;
      const int v = pick(rng);
      if (v == 0) j.assert_literal({true, p, t});
      if (v == 1) j.assert_literal({false, p, t});
    }
  }
  return j;
}

// Closed ionic-free formula over P/1 and R/2 with constants from consts.
inline Formula random_formula(std::mt19937& rng, int depth, const std::vector<std::string>& consts,
                              std::vector<std::string> scope = {}) {
  std::uniform_int_distribution<int> d100(0, 99);
  auto term = [&]() {
    const std::size_t n = consts.size() + scope.size();
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    return k < scope.size() ? Term::var(scope[k]) : Term::constant(consts[k - scope.size()]);
  };
  if (depth == 0 || d100(rng) < 25) {
    if (d100(rng) < 50) return Formula::atom("P", {term()});
    return Formula::atom("R", {term(), term()});
  }
  const int op = d100(rng) % 7;
  switch (op) {
    case 0:
      return Formula::negation(random_formula(rng, depth - 1, consts, scope));
    case 1:
      return Formula::conj({random_formula(rng, depth - 1, consts, scope), random_formula(rng, depth - 1, consts, scope)});
    case 2:
      return Formula::disj({random_formula(rng, depth - 1, consts, scope), random_formula(rng, depth - 1, consts, scope)});
    case 3:
      return Formula::implies(random_formula(rng, depth - 1, consts, scope),
                              random_formula(rng, depth - 1, consts, scope));
    case 4:
      return Formula::iff(random_formula(rng, depth - 1, consts, scope), random_formula(rng, depth - 1, consts, scope));
    default: {
      const std::string v = "v" + std::to_string(scope.size());
      scope.push_back(v);
      Formula body = random_formula(rng, depth - 1, consts, scope);
      return op == 5 ? Formula::exists(v, "", body) : Formula::forall(v, "", body);
    }
  }
}

// Acyclic ionic-free terminology: primitives A0.., roles R0.., definitions
// D0.. over earlier names. No concept is the user concept of any role, so
// the user-relation set is empty.
inline dialogm::dl::Terminology random_terminology(std::mt19937& rng, int n_primitive, int n_defined, int n_roles) {
  using dialogm::dl::ConceptExpr;
  using dialogm::dl::RoleExpr;
  dialogm::dl::Terminology t;
  t.user_concept = "User";
  for (int k = 0; k < n_primitive; ++k) t.primitive_concepts.push_back("A" + std::to_string(k));
  for (int k = 0; k < n_roles; ++k)
    t.roles.push_back({"R" + std::to_string(k), ConceptExpr::top(), ConceptExpr::top()});
  std::uniform_int_distribution<int> d100(0, 99);

  std::vector<std::string> names = t.primitive_concepts;
  std::function<RoleExpr()> role = [&]() {
    RoleExpr r = RoleExpr::atomic(t.roles[d100(rng) % n_roles].name);
    const int k = d100(rng);
    if (k < 20) return RoleExpr::inverse(r);
    if (k < 30 && n_roles > 1) return RoleExpr::union_of({r, RoleExpr::atomic(t.roles[d100(rng) % n_roles].name)});
    return r;
  };
  std::function<ConceptExpr(int)> gen_concept = [&](int depth) -> ConceptExpr {
    const int k = d100(rng);
    if (depth == 0 || k < 30) {
      if (k < 5) return ConceptExpr::top();
      return ConceptExpr::atomic(names[d100(rng) % names.size()]);
    }
    if (k < 50) return ConceptExpr::conj({gen_concept(depth - 1), gen_concept(depth - 1)});
    if (k < 65) return ConceptExpr::disj({gen_concept(depth - 1), gen_concept(depth - 1)});
    if (k < 85 || n_roles == 0) return n_roles ? ConceptExpr::exists(role(), gen_concept(depth - 1)) : gen_concept(depth - 1);
    return ConceptExpr::forall(role(), gen_concept(depth - 1));
  };
  for (int k = 0; k < n_defined; ++k) {
    const std::string name = "D" + std::to_string(k);
    t.definitions.emplace_back(name, gen_concept(2));
    names.push_back(name);
  }
  return t;
}

}  // namespace oracle
