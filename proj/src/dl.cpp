#include "dialogm/dl.hpp"

#include <algorithm>
#include <functional>

#include "dialogm/error.hpp"

namespace dialogm::dl {

RoleExpr RoleExpr::atomic(std::string n) { return {Kind::Atomic, std::move(n), {}}; }

RoleExpr RoleExpr::inverse(RoleExpr r) {
  if (r.kind == Kind::Inverse) return std::move(r.operands.front());
  return {Kind::Inverse, {}, {std::move(r)}};
}

RoleExpr RoleExpr::union_of(std::vector<RoleExpr> members) {
  if (members.size() == 1) return std::move(members.front());
  return {Kind::Union, {}, std::move(members)};
}

ConceptExpr ConceptExpr::atomic(std::string n) {
  ConceptExpr c;
  c.kind = Kind::Atomic;
  c.name = std::move(n);
  return c;
}

ConceptExpr ConceptExpr::conj(std::vector<ConceptExpr> members) {
  if (members.size() == 1) return std::move(members.front());
  ConceptExpr c;
  c.kind = Kind::And;
  c.operands = std::move(members);
  return c;
}

ConceptExpr ConceptExpr::disj(std::vector<ConceptExpr> members) {
  if (members.size() == 1) return std::move(members.front());
  ConceptExpr c;
  c.kind = Kind::Or;
  c.operands = std::move(members);
  return c;
}

ConceptExpr ConceptExpr::exists(RoleExpr r, ConceptExpr filler) {
  ConceptExpr c;
  c.kind = Kind::Exists;
  c.role = std::move(r);
  c.operands.push_back(std::move(filler));
  return c;
}

ConceptExpr ConceptExpr::forall(RoleExpr r, ConceptExpr filler) {
  ConceptExpr c = exists(std::move(r), std::move(filler));
  c.kind = Kind::Forall;
  return c;
}

std::string to_string(const RoleExpr& r) {
  switch (r.kind) {
    case RoleExpr::Kind::Atomic:
      return r.name;
    case RoleExpr::Kind::Inverse:
      return "inv(" + to_string(r.operands.front()) + ")";
    case RoleExpr::Kind::Union: {
      std::string out = "(";
      for (std::size_t k = 0; k < r.operands.size(); ++k) {
        if (k) out += " or ";
        out += to_string(r.operands[k]);
      }
      return out + ")";
    }
  }
  return {};
}

namespace {

// Binding strength: or < and < unary.
int precedence(const ConceptExpr& c) {
  switch (c.kind) {
    case ConceptExpr::Kind::Or:
      return 0;
    case ConceptExpr::Kind::And:
      return 1;
    default:
      return 2;
  }
}

std::string render(const ConceptExpr& c, int context) {
  std::string out;
  switch (c.kind) {
    case ConceptExpr::Kind::Top:
      return "top";
    case ConceptExpr::Kind::Atomic:
      return c.name;
    case ConceptExpr::Kind::And:
    case ConceptExpr::Kind::Or: {
      const int own = precedence(c);
      for (std::size_t k = 0; k < c.operands.size(); ++k) {
        if (k) out += own == 1 ? " and " : " or ";
        out += render(c.operands[k], own + 1);
      }
      return own < context ? "(" + out + ")" : out;
    }
    case ConceptExpr::Kind::Exists:
    case ConceptExpr::Kind::Forall:
      out = c.kind == ConceptExpr::Kind::Exists ? "exists " : "forall ";
      return out + to_string(c.role) + "." + render(c.filler(), 2);
  }
  return out;
}

}  // namespace

std::string to_string(const ConceptExpr& c) { return render(c, 0); }

// ---------------------------------------------------------------------------

bool Terminology::is_primitive(const std::string& n) const {
  return std::find(primitive_concepts.begin(), primitive_concepts.end(), n) != primitive_concepts.end();
}

bool Terminology::is_defined(const std::string& n) const { return definition(n) != nullptr; }

bool Terminology::is_concept(const std::string& n) const {
  return n == user_concept || is_primitive(n) || is_defined(n);
}

bool Terminology::is_role(const std::string& n) const { return role(n) != nullptr; }

const ConceptExpr* Terminology::definition(const std::string& n) const {
  for (const auto& [name, body] : definitions)
    if (name == n) return &body;
  return nullptr;
}

const RoleDecl* Terminology::role(const std::string& n) const {
  for (const auto& r : roles)
    if (r.name == n) return &r;
  return nullptr;
}

// ---------------------------------------------------------------------------

void FactBase::add_concept(const std::string& concept_name, const std::string& a) {
  individuals_.insert(a);
  predicates_.insert(concept_name);
  concepts_[concept_name].insert(a);
}

void FactBase::add_role(const std::string& role_name, const std::string& a, const std::string& b) {
  individuals_.insert(a);
  individuals_.insert(b);
  predicates_.insert(role_name);
  roles_[role_name].insert({a, b});
}

bool FactBase::has_concept(const std::string& concept_name, const std::string& a) const {
  auto it = concepts_.find(concept_name);
  return it != concepts_.end() && it->second.count(a);
}

bool FactBase::has_role(const std::string& role_name, const std::string& a, const std::string& b) const {
  auto it = roles_.find(role_name);
  return it != roles_.end() && it->second.count({a, b});
}

std::set<std::string> FactBase::members(const std::string& concept_name) const {
  auto it = concepts_.find(concept_name);
  return it == concepts_.end() ? std::set<std::string>{} : it->second;
}

std::set<std::string> FactBase::successors(const RoleExpr& r, const std::string& a) const {
  std::set<std::string> out;
  switch (r.kind) {
    case RoleExpr::Kind::Atomic: {
      auto it = roles_.find(r.name);
      if (it == roles_.end()) break;
      for (auto p = it->second.lower_bound({a, std::string()}); p != it->second.end() && p->first == a; ++p)
        out.insert(p->second);
      break;
    }
    case RoleExpr::Kind::Inverse: {
      const RoleExpr& inner = r.operands.front();
      if (inner.kind == RoleExpr::Kind::Atomic) {
        auto it = roles_.find(inner.name);
        if (it == roles_.end()) break;
        for (const auto& [x, y] : it->second)
          if (y == a) out.insert(x);
      } else {
        // inv(R1 or R2) = inv(R1) or inv(R2)
        for (const auto& m : inner.operands) {
          auto s = successors(RoleExpr::inverse(m), a);
          out.insert(s.begin(), s.end());
        }
      }
      break;
    }
    case RoleExpr::Kind::Union:
      for (const auto& m : r.operands) {
        auto s = successors(m, a);
        out.insert(s.begin(), s.end());
      }
      break;
  }
  return out;
}

FactBase FactBase::merged(const FactBase& other) const {
  FactBase out = *this;
  out.individuals_.insert(other.individuals_.begin(), other.individuals_.end());
  out.predicates_.insert(other.predicates_.begin(), other.predicates_.end());
  for (const auto& [c, m] : other.concepts_) out.concepts_[c].insert(m.begin(), m.end());
  for (const auto& [r, p] : other.roles_) out.roles_[r].insert(p.begin(), p.end());
  return out;
}

bool FactBase::subset_of(const FactBase& other) const {
  auto incl = [](const auto& a, const auto& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); };
  if (!incl(individuals_, other.individuals_)) return false;
  for (const auto& [c, m] : concepts_) {
    if (m.empty()) continue;
    auto it = other.concepts_.find(c);
    if (it == other.concepts_.end() || !incl(m, it->second)) return false;
  }
  for (const auto& [r, p] : roles_) {
    if (p.empty()) continue;
    auto it = other.roles_.find(r);
    if (it == other.roles_.end() || !incl(p, it->second)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::set<std::string> role_names(const RoleExpr& r) {
  if (r.kind == RoleExpr::Kind::Atomic) return {r.name};
  std::set<std::string> out;
  for (const auto& m : r.operands) {
    auto s = role_names(m);
    out.insert(s.begin(), s.end());
  }
  return out;
}

std::set<std::string> role_names(const ConceptExpr& c) {
  std::set<std::string> out;
  if (c.kind == ConceptExpr::Kind::Exists || c.kind == ConceptExpr::Kind::Forall) out = role_names(c.role);
  for (const auto& m : c.operands) {
    auto s = role_names(m);
    out.insert(s.begin(), s.end());
  }
  return out;
}

std::set<std::string> concept_names(const ConceptExpr& c) {
  std::set<std::string> out;
  if (c.kind == ConceptExpr::Kind::Atomic) out.insert(c.name);
  for (const auto& m : c.operands) {
    auto s = concept_names(m);
    out.insert(s.begin(), s.end());
  }
  return out;
}

std::vector<ConceptExpr> conjuncts(const ConceptExpr& c) {
  if (c.kind == ConceptExpr::Kind::And) return c.operands;
  return {c};
}

namespace {

void check_roles_declared(const RoleExpr& r, const Terminology& t) {
  for (const auto& n : role_names(r))
    if (!t.is_role(n)) throw UndefinedName(n);
}

ConceptExpr unfold_rec(const ConceptExpr& c, const Terminology& t) {
  switch (c.kind) {
    case ConceptExpr::Kind::Top:
      return c;
    case ConceptExpr::Kind::Atomic:
      if (const ConceptExpr* body = t.definition(c.name)) return unfold_rec(*body, t);
      if (!t.is_concept(c.name)) throw UndefinedName(c.name);
      return c;
    case ConceptExpr::Kind::And: {
      std::vector<ConceptExpr> flat;
      for (const auto& m : c.operands) {
        ConceptExpr u = unfold_rec(m, t);
        if (u.kind == ConceptExpr::Kind::And)
          flat.insert(flat.end(), u.operands.begin(), u.operands.end());
        else
          flat.push_back(std::move(u));
      }
      return ConceptExpr::conj(std::move(flat));
    }
    case ConceptExpr::Kind::Or: {
      std::vector<ConceptExpr> parts;
      for (const auto& m : c.operands) parts.push_back(unfold_rec(m, t));
      return ConceptExpr::disj(std::move(parts));
    }
    case ConceptExpr::Kind::Exists:
    case ConceptExpr::Kind::Forall: {
      check_roles_declared(c.role, t);
      ConceptExpr out = c;
      out.operands.front() = unfold_rec(c.filler(), t);
      return out;
    }
  }
  return c;
}

bool holds(const std::string& a, const ConceptExpr& c, const FactBase& kb) {
  switch (c.kind) {
    case ConceptExpr::Kind::Top:
      return true;
    case ConceptExpr::Kind::Atomic:
      return kb.has_concept(c.name, a);
    case ConceptExpr::Kind::And:
      return std::all_of(c.operands.begin(), c.operands.end(), [&](const auto& m) { return holds(a, m, kb); });
    case ConceptExpr::Kind::Or:
      return std::any_of(c.operands.begin(), c.operands.end(), [&](const auto& m) { return holds(a, m, kb); });
    case ConceptExpr::Kind::Exists: {
      for (const auto& b : kb.successors(c.role, a))
        if (holds(b, c.filler(), kb)) return true;
      return false;
    }
    case ConceptExpr::Kind::Forall: {
      for (const auto& b : kb.successors(c.role, a))
        if (!holds(b, c.filler(), kb)) return false;
      return true;
    }
  }
  return false;
}

bool user_conjunct(const ConceptExpr& c, const std::string& user) {
  for (const auto& m : conjuncts(c))
    if (m.kind == ConceptExpr::Kind::Atomic && m.name == user) return true;
  return false;
}

void check_concept_names(const ConceptExpr& c, const Terminology& t) {
  for (const auto& n : concept_names(c))
    if (!t.is_concept(n)) throw UndefinedName(n);
  for (const auto& n : role_names(c))
    if (!t.is_role(n)) throw UndefinedName(n);
}

void check_acyclic(const Terminology& t) {
  enum class Mark { None, Active, Done };
  std::map<std::string, Mark> mark;
  std::vector<std::string> path;
  std::function<void(const std::string&)> visit = [&](const std::string& n) {
    mark[n] = Mark::Active;
    path.push_back(n);
    for (const auto& m : concept_names(*t.definition(n))) {
      if (!t.is_defined(m)) continue;
      if (mark[m] == Mark::Active) {
        auto start = std::find(path.begin(), path.end(), m);
        throw CyclicTerminology({start, path.end()});
      }
      if (mark[m] == Mark::None) visit(m);
    }
    path.pop_back();
    mark[n] = Mark::Done;
  };
  for (const auto& [name, body] : t.definitions)
    if (mark[name] == Mark::None) visit(name);
}

}  // namespace

ConceptExpr unfold(const ConceptExpr& c, const Terminology& t) { return unfold_rec(c, t); }

std::set<std::string> extension(const ConceptExpr& c, const FactBase& kb) {
  std::set<std::string> out;
  for (const auto& a : kb.individuals())
    if (holds(a, c, kb)) out.insert(a);
  return out;
}

ProofStatus instance_check(const std::string& a, const ConceptExpr& c, const Terminology& t, const FactBase& kb) {
  return holds(a, unfold(c, t), kb) ? ProofStatus::Proved : ProofStatus::Unproved;
}

bool satisfiable_bounded(const ConceptExpr& c, const Terminology& t, int max_universe) {
  const ConceptExpr u = unfold(c, t);
  const std::set<std::string> cs = concept_names(u);
  const std::set<std::string> rs = role_names(u);
  const std::vector<std::string> cvec(cs.begin(), cs.end());
  const std::vector<std::string> rvec(rs.begin(), rs.end());
  constexpr std::size_t kMaxBits = 22;

  for (int n = 1; n <= max_universe; ++n) {
    const std::size_t un = static_cast<std::size_t>(n);
    const std::size_t bits = un * cvec.size() + un * un * rvec.size();
    if (bits > kMaxBits) break;
    std::vector<std::string> elems;
    for (int k = 0; k < n; ++k) elems.push_back("e" + std::to_string(k));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
      FactBase m;
      for (const auto& e : elems) m.add_individual(e);
      std::size_t bit = 0;
      for (const auto& cn : cvec)
        for (const auto& e : elems)
          if (mask >> bit++ & 1) m.add_concept(cn, e);
      for (const auto& rn : rvec)
        for (const auto& x : elems)
          for (const auto& y : elems)
            if (mask >> bit++ & 1) m.add_role(rn, x, y);
      if (!extension(u, m).empty()) return true;
    }
  }
  return false;
}

void validate(const Terminology& t) {
  if (t.user_concept.empty()) throw UndefinedName("user-concept");
  check_acyclic(t);
  for (const auto& r : t.roles) {
    check_concept_names(r.domain, t);
    check_concept_names(r.range, t);
  }
  for (const auto& [name, body] : t.definitions) check_concept_names(body, t);
  for (const auto& [surface, target] : t.synonyms)
    if (!t.is_concept(target) && !t.is_role(target)) throw UndefinedName(target);
  for (const auto& [role, text] : t.question_templates)
    if (!t.is_role(role)) throw UndefinedName(role);
  for (const auto& [name, body] : t.definitions)
    if (!satisfiable_bounded(body, t)) throw UnsatisfiableDefinition(name);
}

std::set<std::string> compute_user_rel(const Terminology& t) {
  std::set<std::string> out;
  for (const auto& r : t.roles)
    if (user_conjunct(unfold(r.domain, t), t.user_concept) || user_conjunct(unfold(r.range, t), t.user_concept))
      out.insert(r.name);
  return out;
}

}  // namespace dialogm::dl
