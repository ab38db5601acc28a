#include <doctest.h>

#include "dialogm/dl.hpp"
#include "dialogm/domain.hpp"
#include "dialogm/error.hpp"
#include "fixture.hpp"
#include "oracles.hpp"

using namespace dialogm;
using namespace dialogm::dl;

namespace {

ConceptExpr C(const std::string& text) { return parse_concept(text); }

const Terminology& train() { return fixture::domain().terminology; }

}  // namespace

TEST_CASE("train terminology loads") {
  const Terminology& t = train();
  for (const char* p : {"Train", "Depart", "Time", "Station"}) CHECK(t.is_primitive(p));
  for (const char* r : {"At", "To", "From", "DepartFrom"}) CHECK(t.is_role(r));
  for (const char* d : {"DepStation", "TrainFrom", "TrainAtFrom", "TrainAtFromTo"}) CHECK(t.is_defined(d));
  CHECK(t.definitions.size() >= 4);
  CHECK(t.user_concept == "User");
}

TEST_CASE("terminology errors") {
  CHECK_THROWS_AS(load_terminology("concept A\nuser-concept User\nrole R : A x A\ndefine C = exists R.C\n"),
                  CyclicTerminology);
  try {
    load_terminology("user-concept User\nrole R : User x User\ndefine C = exists R.C\n");
  } catch (const CyclicTerminology& e) {
    CHECK(e.cycle().front() == "C");
  }
  try {
    load_terminology("concept A\nuser-concept User\ndefine C = A and B\n");
    FAIL("expected UndefinedName");
  } catch (const UndefinedName& e) {
    CHECK(e.name() == "B");
  }
  CHECK_THROWS_AS(load_terminology("concept A\nconcept A\n"), SyntaxError);
  CHECK_THROWS_AS(load_terminology("concept A\n"), UndefinedName);  // no user concept
  CHECK_THROWS_AS(load_terminology("user-concept User\nbogus line\n"), SyntaxError);
}

TEST_CASE("user relation") {
  CHECK(compute_user_rel(train()) == std::set<std::string>{"DepartFrom"});

  Terminology empty;
  empty.user_concept = "User";
  CHECK(compute_user_rel(empty).empty());

  const Terminology meals =
      load_terminology("concept Meal\nuser-concept User\nrole Prefers : Meal x User\nrole Has : Meal x Meal\n");
  CHECK(compute_user_rel(meals) == std::set<std::string>{"Prefers"});

  // Renaming a non-user concept does not change the set.
  const Terminology renamed =
      load_terminology("concept Dish\nuser-concept User\nrole Prefers : Dish x User\nrole Has : Dish x Dish\n");
  CHECK(compute_user_rel(renamed) == compute_user_rel(meals));
}

TEST_CASE("unfolding") {
  const Terminology& t = train();
  CHECK(unfold(C("DepStation"), t) == C("exists inv(DepartFrom).User and Station"));
  CHECK(unfold(C("Train"), t) == C("Train"));
  CHECK(unfold(C("TrainAtFromTo"), t) ==
        C("exists To.Station and exists At.Time and exists From.(exists inv(DepartFrom).User and Station) and "
          "Train and Depart"));
  for (const auto& [name, body] : t.definitions) CHECK(unfold(unfold(body, t), t) == unfold(body, t));
  CHECK_THROWS_AS(unfold(C("Nowhere"), t), UndefinedName);
}

TEST_CASE("instance checking on the fixture") {
  const Terminology& t = train();
  const FactBase& kb = fixture::knowledge();
  CHECK(instance_check("Rome", C("ArrStation"), t, kb) == ProofStatus::Proved);
  // Being a station is not enough; some train has to arrive there.
  FactBase bare;
  bare.add_concept("Station", "Rome");
  CHECK(instance_check("Rome", C("ArrStation"), t, bare) == ProofStatus::Unproved);
  bare.add_concept("Train", "ic9");
  bare.add_role("To", "ic9", "Rome");
  CHECK(instance_check("Rome", C("ArrStation"), t, bare) == ProofStatus::Proved);
  CHECK(instance_check("Rome", C("Time"), t, kb) == ProofStatus::Unproved);
  CHECK(instance_check("Rome", C("exists HasArrStation.Station"), t, kb) == ProofStatus::Proved);
  CHECK(instance_check("t0915", C("exists HasArrStation.Station"), t, kb) == ProofStatus::Unproved);

  CHECK(instance_check("ic101", C("TrainAtFromTo"), t, kb) == ProofStatus::Unproved);
  FactBase with_user = kb;
  with_user.add_concept("User", "u");
  with_user.add_role("DepartFrom", "u", "Milan");
  CHECK(instance_check("ic101", C("TrainAtFromTo"), t, with_user) == ProofStatus::Proved);
  CHECK(instance_check("ic205", C("TrainAtFromTo"), t, with_user) == ProofStatus::Unproved);

  // Open world: no successors make a universal trivially true.
  CHECK(instance_check("Rome", C("forall At.Time"), t, kb) == ProofStatus::Proved);
}

TEST_CASE("instance checking matches a brute-force evaluator") {
  std::mt19937 rng(17);
  for (int rep = 0; rep < 150; ++rep) {
    const int np = 1 + rep % 3, nd = 1 + rep % 2, nr = 1 + rep % 3;
    const Terminology t = oracle::random_terminology(rng, np, nd, nr);

    FactBase kb;
    std::vector<std::string> inds;
    const int n = 1 + rep % 4;
    for (int k = 0; k < n; ++k) {
      inds.push_back("i" + std::to_string(k));
      kb.add_individual(inds.back());
    }
    std::bernoulli_distribution coin(0.35);
    for (const auto& p : t.primitive_concepts)
      for (const auto& a : inds)
        if (coin(rng)) kb.add_concept(p, a);
    for (const auto& r : t.roles)
      for (const auto& a : inds)
        for (const auto& b : inds)
          if (coin(rng)) kb.add_role(r.name, a, b);

    oracle::Model m = oracle::model_of(kb);
    oracle::close_definitions(t, m);
    for (const auto& [name, body] : t.definitions)
      for (const auto& a : inds) {
        const bool want = oracle::dl_member(body, a, m);
        CHECK((instance_check(a, ConceptExpr::atomic(name), t, kb) == ProofStatus::Proved) == want);
        CHECK((extension(unfold(body, t), kb).count(a) > 0) == want);
      }

    // Monotone under added facts.
    FactBase bigger = kb;
    bigger.add_concept(t.primitive_concepts.front(), inds.front());
    bigger.add_role(t.roles.front().name, inds.back(), inds.front());
    for (const auto& [name, body] : t.definitions)
      for (const auto& a : inds) {
        if (instance_check(a, ConceptExpr::atomic(name), t, kb) != ProofStatus::Proved) continue;
        // Universals can lose support when new successors appear, so only
        // existential-positive bodies are monotone.
        if (to_string(unfold(body, t)).find("forall") == std::string::npos)
          CHECK(instance_check(a, ConceptExpr::atomic(name), t, bigger) == ProofStatus::Proved);
        for (const auto& part : conjuncts(unfold(body, t)))
          CHECK(instance_check(a, part, t, kb) == ProofStatus::Proved);
      }
  }
}

TEST_CASE("bounded satisfiability") {
  for (const auto& [name, body] : train().definitions) CHECK(satisfiable_bounded(body, train()));
  CHECK(satisfiable_bounded(C("exists To.Station and forall To.Station"), train(), 1));
}

TEST_CASE("rendering round trip") {
  for (const auto& [name, body] : train().definitions) CHECK(C(to_string(body)) == body);
  CHECK(to_string(C("exists (To or From).Station")) == "exists (To or From).Station");
  CHECK(to_string(RoleExpr::inverse(RoleExpr::inverse(RoleExpr::atomic("R")))) == "R");
}

TEST_CASE("fact base set operations") {
  FactBase a;
  a.add_concept("Train", "ic101");
  FactBase b = a;
  b.add_role("At", "ic101", "t0915");
  CHECK(a.subset_of(b));
  CHECK_FALSE(b.subset_of(a));
  CHECK(a.merged(b).subset_of(b));
  CHECK(b.successors(RoleExpr::inverse(RoleExpr::atomic("At")), "t0915") == std::set<std::string>{"ic101"});
}
