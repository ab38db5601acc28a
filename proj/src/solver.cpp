#include "dialogm/solver.hpp"

#include <functional>
#include <regex>
#include <set>
#include <sstream>

#include "dialogm/error.hpp"

namespace dialogm::solver {

std::string to_string(const ConjunctiveQuery& q) {
  std::string out;
  for (const auto& a : q.atoms) {
    if (!out.empty()) out += " & ";
    out += a.predicate + "(";
    for (std::size_t k = 0; k < a.terms.size(); ++k) {
      if (k) out += ",";
      out += a.terms[k].name;
    }
    out += ")";
  }
  return out;
}

std::vector<SolverBinding> eval_query(const ConjunctiveQuery& q, const dl::FactBase& facts) {
  for (const auto& a : q.atoms) {
    if (!facts.predicates().count(a.predicate)) throw UndefinedName(a.predicate);
    if (a.terms.empty() || a.terms.size() > 2)
      throw Error("ArityError", a.predicate + " takes one or two arguments");
  }

  std::set<std::vector<std::string>> rows;
  std::map<std::string, std::string> env;

  auto value = [&](const fil::Term& t) -> const std::string* {
    if (!t.is_var()) return &t.name;
    auto it = env.find(t.name);
    return it == env.end() ? nullptr : &it->second;
  };

  // Backtracking join in atom order.
  std::function<void(std::size_t)> solve = [&](std::size_t k) {
    if (k == q.atoms.size()) {
      std::vector<std::string> row;
      for (const auto& v : q.answer_vars) row.push_back(env.at(v));
      rows.insert(std::move(row));
      return;
    }
    const QueryAtom& a = q.atoms[k];
    if (a.terms.size() == 1) {
      if (const std::string* c = value(a.terms[0])) {
        if (facts.has_concept(a.predicate, *c)) solve(k + 1);
        return;
      }
      for (const auto& m : facts.members(a.predicate)) {
        env[a.terms[0].name] = m;
        solve(k + 1);
      }
      env.erase(a.terms[0].name);
      return;
    }
    auto it = facts.roles().find(a.predicate);
    if (it == facts.roles().end()) return;
    const fil::Term& s = a.terms[0];
    const fil::Term& o = a.terms[1];
    for (const auto& [x, y] : it->second) {
      const std::string* sv = value(s);
      const std::string* ov = value(o);
      if (sv && *sv != x) continue;
      if (ov && *ov != y) continue;
      const bool bind_s = !sv;
      if (bind_s) env[s.name] = x;
      // Repeated variable, e.g. R(x,x).
      const std::string* ov2 = value(o);
      const bool bind_o = !ov2;
      if (ov2 && *ov2 != y) {
        if (bind_s) env.erase(s.name);
        continue;
      }
      if (bind_o) env[o.name] = y;
      solve(k + 1);
      if (bind_o) env.erase(o.name);
      if (bind_s) env.erase(s.name);
    }
  };
  solve(0);

  std::vector<SolverBinding> out;
  for (const auto& row : rows) {
    SolverBinding b;
    for (std::size_t k = 0; k < row.size(); ++k) b[q.answer_vars[k]] = row[k];
    out.push_back(std::move(b));
  }
  return out;
}

ConjunctiveQuery parse_query(const std::string& text, const dl::FactBase& facts) {
  static const std::regex atom_re(R"(^\s*([A-Za-z_]\w*)\s*\(([^()]*)\)\s*$)");
  ConjunctiveQuery q;
  std::istringstream in(text);
  std::string part;
  std::set<std::string> seen;
  while (std::getline(in, part, '&')) {
    std::smatch m;
    if (!std::regex_match(part, m, atom_re)) throw SyntaxError(1, "malformed query atom '" + part + "'");
    QueryAtom atom{m[1], {}};
    std::istringstream args(m[2].str());
    std::string arg;
    while (std::getline(args, arg, ',')) {
      const auto b = arg.find_first_not_of(" \t");
      if (b == std::string::npos) throw SyntaxError(1, "empty argument in '" + part + "'");
      arg = arg.substr(b, arg.find_last_not_of(" \t") - b + 1);
      fil::Term t;
      if (arg[0] == '?')
        t = fil::Term::var(arg.substr(1));
      else if (facts.individuals().count(arg))
        t = fil::Term::constant(arg);
      else
        t = fil::Term::var(arg);
      if (t.is_var() && seen.insert(t.name).second) q.answer_vars.push_back(t.name);
      atom.terms.push_back(std::move(t));
    }
    q.atoms.push_back(std::move(atom));
  }
  if (q.atoms.empty()) throw SyntaxError(1, "empty query");
  return q;
}

dl::FactBase load_facts(const std::string& source, const dl::Terminology* t) {
  static const std::regex fact_re(R"(^fact\s+([A-Za-z_]\w*)\s*\(\s*([^,()\s]+)\s*(?:,\s*([^,()\s]+)\s*)?\)$)");
  dl::FactBase kb;
  if (t) {
    for (const auto& c : t->primitive_concepts) kb.declare_predicate(c);
    for (const auto& [name, body] : t->definitions) kb.declare_predicate(name);
    for (const auto& r : t->roles) kb.declare_predicate(r.name);
    if (!t->user_concept.empty()) kb.declare_predicate(t->user_concept);
  }

  std::istringstream in(source);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto b = raw.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const std::string text = raw.substr(b, raw.find_last_not_of(" \t\r") - b + 1);
    std::smatch m;
    if (!std::regex_match(text, m, fact_re)) throw SyntaxError(line, "expected: fact <Predicate>(<Constant>[, <Constant>])");
    const std::string pred = m[1];
    const bool binary = m[3].matched;
    if (t && !(binary ? t->is_role(pred) : t->is_concept(pred))) throw UndefinedName(pred);
    if (binary)
      kb.add_role(pred, m[2], m[3]);
    else
      kb.add_concept(pred, m[2]);
  }
  return kb;
}

std::string format_bindings(const ConjunctiveQuery& q, const std::vector<SolverBinding>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < q.answer_vars.size(); ++k) {
      if (k) out += '\t';
      out += row.at(q.answer_vars[k]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace dialogm::solver
