#pragma once

// Discourse representation structures: referents plus atomic conditions,
// optionally abstracted over typed parameters.

#include <string>
#include <vector>

#include "dialogm/dl.hpp"
#include "dialogm/fil.hpp"

namespace dialogm::drs {

struct Referent {
  std::string name;
  std::string sort;       // concept name, may be empty
  bool constant = false;  // a named individual introduced into the discourse
  bool operator==(const Referent&) const = default;
};

struct DRS {
  std::vector<Referent> referents;
  std::vector<fil::Formula> conditions;  // atoms over referents and constants

  bool empty() const { return referents.empty() && conditions.empty(); }
  const Referent* referent(const std::string& name) const;
  bool operator==(const DRS&) const = default;
};

struct LambdaDRS {
  std::vector<fil::TypedVar> params;
  DRS body;
  bool operator==(const LambdaDRS&) const = default;
};

// Union of referents and conditions. Variable referents of b that collide
// with a's are renamed (t -> t1, t2, ...); constant referents are shared.
DRS merge(const DRS& a, const DRS& b);

// Substitutes arg for the first parameter. With a terminology and fact base
// the argument's sort is checked against the parameter's (SortMismatch).
// Zero-parameter abstractions are returned unchanged.
LambdaDRS apply(const LambdaDRS& f, const fil::Term& arg, const dl::Terminology* t = nullptr,
                const dl::FactBase* kb = nullptr);

// Existential closure of the variable referents over the conjunction of
// the conditions; parameters stay free.
fil::Formula drs_to_fil(const DRS& d);
fil::Formula drs_to_fil(const LambdaDRS& d);

// Box rendering: optional lambda line, referent line, rule, one condition
// per line.
std::string render_box(const LambdaDRS& d);
std::string render_box(const DRS& d);

}  // namespace dialogm::drs
