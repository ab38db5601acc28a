#pragma once

// Conjunctive queries over application facts. The dialog engine talks to a
// ProblemSolver; the in-memory timetable backend answers by joining facts.

#include <map>
#include <string>
#include <vector>

#include "dialogm/dl.hpp"
#include "dialogm/fil.hpp"

namespace dialogm::solver {

struct QueryAtom {
  std::string predicate;
  std::vector<fil::Term> terms;  // one term: concept atom; two: role atom
  bool operator==(const QueryAtom&) const = default;
};

struct ConjunctiveQuery {
  std::vector<QueryAtom> atoms;
  std::vector<std::string> answer_vars;  // each occurs in some atom
};

using SolverBinding = std::map<std::string, std::string>;

std::string to_string(const ConjunctiveQuery& q);

// All assignments of individuals to variables under which every atom is a
// fact, restricted to the answer variables, deduplicated and sorted
// lexicographically by answer-variable order. Throws UndefinedName for
// predicates outside facts.predicates().
std::vector<SolverBinding> eval_query(const ConjunctiveQuery& q, const dl::FactBase& facts);

// "At(t,x) & From(t,Milan) & To(t,Rome)". Terms naming an individual of
// facts are constants, a leading '?' forces a variable, anything else is a
// variable. Answer variables are all variables in order of appearance.
ConjunctiveQuery parse_query(const std::string& text, const dl::FactBase& facts);

// Facts file: `fact <Concept>(<Constant>)` / `fact <Role>(<Constant>, <Constant>)`.
// With a terminology, predicates must be declared and its concept/role names
// become the fact base's signature. Throws SyntaxError, UndefinedName.
dl::FactBase load_facts(const std::string& source, const dl::Terminology* t = nullptr);

// Tab-separated rows, one per binding, columns in answer-variable order.
std::string format_bindings(const ConjunctiveQuery& q, const std::vector<SolverBinding>& rows);

class ProblemSolver {
 public:
  virtual ~ProblemSolver() = default;
  virtual std::vector<SolverBinding> eval_query(const ConjunctiveQuery& q) const = 0;
};

class TimetableSolver : public ProblemSolver {
 public:
  explicit TimetableSolver(dl::FactBase facts) : facts_(std::move(facts)) {}
  std::vector<SolverBinding> eval_query(const ConjunctiveQuery& q) const override {
    return solver::eval_query(q, facts_);
  }
  const dl::FactBase& facts() const { return facts_; }

 private:
  dl::FactBase facts_;
};

}  // namespace dialogm::solver
