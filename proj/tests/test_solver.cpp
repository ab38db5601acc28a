#include <doctest.h>

#include <algorithm>

#include "dialogm/error.hpp"
#include "dialogm/solver.hpp"
#include "fixture.hpp"
#include "oracles.hpp"

using namespace dialogm;
using namespace dialogm::solver;

namespace {

const dl::FactBase& kb() { return fixture::facts(); }

}  // namespace

TEST_CASE("loading the timetable") {
  CHECK(kb().members("Train").size() == 2);
  CHECK(kb().members("Station").size() == 3);
  CHECK(load_facts("").individuals().empty());
  CHECK_THROWS_AS(load_facts("fact Nope(a, b)\n", &fixture::domain().terminology), UndefinedName);
  CHECK_THROWS_AS(load_facts("fact Train(ic101\n"), SyntaxError);
  try {
    load_facts("fact Train(a)\n\nbad\n");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("fixture queries") {
  const ConjunctiveQuery q = parse_query("At(t,x) & From(t,Milan) & To(t,Rome)", kb());
  CHECK(q.answer_vars == std::vector<std::string>{"t", "x"});
  CHECK(eval_query(q, kb()) == std::vector<SolverBinding>{{{"t", "ic101"}, {"x", "t0915"}}});
  CHECK(eval_query(q, kb()) == oracle::naive_query(q, kb()));

  // Unknown names parse as variables, so the constant is built directly.
  ConjunctiveQuery venice = q;
  venice.atoms[2].terms[1] = fil::Term::constant("Venice");
  CHECK(eval_query(venice, kb()).empty());
  CHECK(parse_query("To(t,Venice)", kb()).answer_vars == std::vector<std::string>{"t", "Venice"});

  const ConjunctiveQuery from = parse_query("From(t,s)", kb());
  CHECK(eval_query(from, kb()) ==
        std::vector<SolverBinding>{{{"t", "ic101"}, {"s", "Milan"}}, {{"t", "ic205"}, {"s", "Turin"}}});

  CHECK(format_bindings(q, eval_query(q, kb())) == "ic101\tt0915\n");
  CHECK(to_string(q) == "At(t,x) & From(t,Milan) & To(t,Rome)");
}

TEST_CASE("query errors") {
  CHECK_THROWS_AS(eval_query(parse_query("Flies(t)", kb()), kb()), UndefinedName);
  CHECK_THROWS_AS(parse_query("At(t,", kb()), SyntaxError);
  CHECK_THROWS_AS(parse_query("", kb()), SyntaxError);
}

TEST_CASE("agreement with naive enumeration on random fact bases") {
  std::mt19937 rng(41);
  const std::vector<std::string> preds{"P", "Q", "R", "S"};
  for (int rep = 0; rep < 300; ++rep) {
    dl::FactBase facts;
    const int n = 1 + rep % 5;
    std::vector<std::string> consts;
    for (int k = 0; k < n; ++k) {
      consts.push_back("c" + std::to_string(k));
      facts.add_individual(consts.back());
    }
    for (const auto& p : preds) facts.declare_predicate(p);
    std::bernoulli_distribution coin(0.4);
    for (const auto& a : consts) {
      if (coin(rng)) facts.add_concept("P", a);
      if (coin(rng)) facts.add_concept("Q", a);
      for (const auto& b : consts) {
        if (coin(rng)) facts.add_role("R", a, b);
        if (coin(rng)) facts.add_role("S", a, b);
      }
    }

    ConjunctiveQuery q;
    const std::vector<std::string> vars{"x", "y", "z"};
    std::uniform_int_distribution<int> d(0, 99);
    auto term = [&]() {
      if (d(rng) < 25) return fil::Term::constant(consts[d(rng) % consts.size()]);
      return fil::Term::var(vars[d(rng) % vars.size()]);
    };
    const int atoms = 1 + d(rng) % 3;
    for (int k = 0; k < atoms; ++k) {
      if (d(rng) < 40)
        q.atoms.push_back({d(rng) < 50 ? "P" : "Q", {term()}});
      else
        q.atoms.push_back({d(rng) < 50 ? "R" : "S", {term(), term()}});
    }
    for (const auto& a : q.atoms)
      for (const auto& t : a.terms)
        if (t.is_var() && std::find(q.answer_vars.begin(), q.answer_vars.end(), t.name) == q.answer_vars.end())
          q.answer_vars.push_back(t.name);

    const auto got = eval_query(q, facts);
    CHECK(got == oracle::naive_query(q, facts));

    ConjunctiveQuery reversed = q;
    std::reverse(reversed.atoms.begin(), reversed.atoms.end());
    CHECK(eval_query(reversed, facts) == got);

    dl::FactBase more = facts;
    more.add_role("R", consts.front(), consts.back());
    more.add_concept("P", consts.back());
    const auto grown = eval_query(q, more);
    for (const auto& row : got) CHECK(std::find(grown.begin(), grown.end(), row) != grown.end());
  }
}
