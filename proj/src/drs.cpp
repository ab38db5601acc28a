#include "dialogm/drs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "dialogm/error.hpp"

namespace dialogm::drs {

const Referent* DRS::referent(const std::string& name) const {
  for (const auto& r : referents)
    if (r.name == name) return &r;
  return nullptr;
}

DRS merge(const DRS& a, const DRS& b) {
  DRS out = a;
  std::set<std::string> taken;
  for (const auto& r : a.referents) taken.insert(r.name);
  for (const auto& c : a.conditions)
    for (const auto& t : c.args()) taken.insert(t.name);
  // Fresh names must not capture b's own referents either.
  std::set<std::string> avoid = taken;
  for (const auto& r : b.referents) avoid.insert(r.name);

  std::map<std::string, std::string> renames;
  for (const auto& r : b.referents) {
    if (r.constant) {
      if (!out.referent(r.name)) out.referents.push_back(r);
      continue;
    }
    Referent copy = r;
    if (taken.count(r.name)) {
      int k = 1;
      while (avoid.count(r.name + std::to_string(k))) ++k;
      copy.name = r.name + std::to_string(k);
      renames[r.name] = copy.name;
      avoid.insert(copy.name);
    }
    taken.insert(copy.name);
    out.referents.push_back(copy);
  }
  // Conditions are atoms; rename all arguments at once.
  for (const auto& c : b.conditions) {
    std::vector<fil::Term> args = c.args();
    for (auto& t : args)
      if (auto it = renames.find(t.name); t.is_var() && it != renames.end()) t.name = it->second;
    out.conditions.push_back(fil::Formula::atom(c.predicate(), std::move(args)));
  }
  return out;
}

LambdaDRS apply(const LambdaDRS& f, const fil::Term& arg, const dl::Terminology* t, const dl::FactBase* kb) {
  if (f.params.empty()) return f;
  const fil::TypedVar& param = f.params.front();
  if (t && kb && !arg.is_var() && !param.sort.empty() && kb->individuals().count(arg.name) &&
      dl::instance_check(arg.name, dl::ConceptExpr::atomic(param.sort), *t, *kb) == dl::ProofStatus::Unproved)
    throw SortMismatch(arg.name, param.sort);

  LambdaDRS out;
  out.params.assign(f.params.begin() + 1, f.params.end());
  out.body.referents = f.body.referents;
  for (const auto& c : f.body.conditions) out.body.conditions.push_back(fil::substitute(c, param.name, arg));
  return out;
}

fil::Formula drs_to_fil(const DRS& d) {
  fil::Formula f = d.conditions.size() == 1 ? d.conditions.front() : fil::Formula::conj(d.conditions);
  for (auto it = d.referents.rbegin(); it != d.referents.rend(); ++it)
    if (!it->constant) f = fil::Formula::exists(it->name, it->sort, f);
  return f;
}

fil::Formula drs_to_fil(const LambdaDRS& d) { return drs_to_fil(d.body); }

std::string render_box(const LambdaDRS& d) {
  std::ostringstream os;
  if (!d.params.empty()) {
    os << "lambda";
    for (const auto& p : d.params) {
      os << ' ' << p.name;
      if (!p.sort.empty()) os << ':' << p.sort;
    }
    os << ".\n";
  }
  os << render_box(d.body);
  return os.str();
}

std::string render_box(const DRS& d) {
  std::string head;
  for (const auto& r : d.referents) {
    if (!head.empty()) head += ' ';
    head += r.name;
  }
  std::vector<std::string> lines;
  for (const auto& c : d.conditions) lines.push_back(fil::to_string(c));
  std::size_t width = head.size();
  for (const auto& l : lines) width = std::max(width, l.size());

  std::ostringstream os;
  os << "| " << head << '\n' << "|-" << std::string(std::max<std::size_t>(width, 1), '-') << '\n';
  for (const auto& l : lines) os << "| " << l << '\n';
  return os.str();
}

}  // namespace dialogm::drs
