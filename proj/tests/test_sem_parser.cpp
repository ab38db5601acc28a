#include <doctest.h>

#include "dialogm/domain.hpp"
#include "dialogm/error.hpp"
#include "dialogm/sem_parser.hpp"
#include "fixture.hpp"

using namespace dialogm;
using namespace dialogm::sem;

namespace {

ParseResult parse(const std::string& text, const ActContext& ctx = {}) {
  const auto& d = fixture::domain();
  return parse_utterance(text, d.lexicon, d.terminology, fixture::knowledge(), "u", ctx);
}

std::string conds(const drs::DRS& d) {
  std::string out;
  for (const auto& c : d.conditions) out += (out.empty() ? "" : ", ") + fil::to_string(c);
  return out;
}

}  // namespace

TEST_CASE("normalization") {
  const auto& t = fixture::domain().terminology;
  CHECK(normalize_token("leave", t) == "Depart");
  CHECK(normalize_token("depart", t) == "Depart");
  CHECK(normalize_token("Leave", t) == "Depart");
  CHECK(normalize_token("rome", t) == "rome");
  CHECK(tokenize("  When does a train depart to Rome? ") ==
        std::vector<std::string>{"when", "does", "a", "train", "depart", "to", "rome"});
}

TEST_CASE("the Rome query") {
  const ParseResult r = parse("When does a train depart to Rome?");
  CHECK(r.act == SpeechAct::Query);
  REQUIRE(r.drs.params.size() == 1);
  CHECK(r.drs.params[0].name == "x");
  CHECK(r.drs.params[0].sort == "Time");
  REQUIRE(r.drs.body.referents.size() == 2);
  CHECK(r.drs.body.referents[0].name == "t");
  CHECK(r.drs.body.referents[1].name == "Rome");
  CHECK(conds(r.drs.body) == "Train(t), Depart(t), Time(x), ArrStation(Rome), At(t,x), To(t,Rome)");
  CHECK(r.main_referent == std::optional<std::string>("t"));
}

TEST_CASE("synonym invariance") {
  const ParseResult a = parse("When does a train depart to Rome?");
  const ParseResult b = parse("When does a train leave to Rome?");
  CHECK(a.drs == b.drs);
  CHECK(a.act == b.act);
}

TEST_CASE("case and trailing punctuation") {
  const ParseResult a = parse("When does a train depart to Rome?");
  CHECK(parse("when DOES a Train depart to rome?").drs == a.drs);
  CHECK(parse("When does a train depart to Rome").drs == a.drs);
  CHECK(parse("When does a train depart to Rome?").drs == a.drs);  // determinism
}

TEST_CASE("answer fragments") {
  ActContext ctx;
  ctx.has_open_goals = true;
  const ParseResult r = parse("From Milan.", ctx);
  CHECK(r.act == SpeechAct::Inform);
  CHECK(r.drs.params.empty());
  CHECK(conds(r.drs.body) == "DepartFrom(u,Milan)");
  CHECK_FALSE(r.main_referent.has_value());

  const ParseResult bare = parse("Milan", ctx);
  CHECK(bare.act == SpeechAct::Inform);
  CHECK(bare.constants == std::vector<std::string>{"Milan"});
}

TEST_CASE("parse errors") {
  try {
    parse("blorf to Rome");
    FAIL("expected UnknownLexeme");
  } catch (const UnknownLexeme& e) {
    CHECK(e.token() == "blorf");
  }
  CHECK_THROWS_AS(parse(""), EmptyUtterance);
  CHECK_THROWS_AS(parse(" ?! "), EmptyUtterance);
  // 09:15 is not an arrival city.
  CHECK_THROWS_AS(parse("When does a train depart to 09:15?"), AttachmentRejected);
}

TEST_CASE("attachments satisfy their restrictions") {
  const auto& d = fixture::domain();
  for (const char* text : {"When does a train depart to Rome?", "When does a train depart from Milan to Rome?",
                           "When does a train leave from Turin?"}) {
    const ParseResult r = parse(text);
    for (const auto& c : r.drs.body.conditions) {
      if (c.args().size() != 2 || c.args()[1].is_var()) continue;
      // Find the preposition entry for this role and re-run its check.
      for (const auto& [surface, entries] : d.lexicon.entries())
        for (const auto& e : entries)
          if (const auto* p = std::get_if<PrepRole>(&e); p && p->role == c.predicate())
            CHECK(dl::instance_check(c.args()[1].name, p->restriction, d.terminology, fixture::knowledge()) ==
                  dl::ProofStatus::Proved);
    }
  }
}

TEST_CASE("speech acts") {
  ActContext after;
  after.after_suggest = true;
  CHECK(classify_speech_act("yes", nullptr, after) == SpeechAct::Accept);
  CHECK(classify_speech_act("No.", nullptr, after) == SpeechAct::Reject);
  CHECK(classify_speech_act("yes", nullptr, {}) != SpeechAct::Accept);
  CHECK(parse("When does a train depart to Rome?", after).act == SpeechAct::Query);
  CHECK(is_affirmative("ok"));
  CHECK(is_negative("nope"));
}

TEST_CASE("lexicon") {
  const auto& lex = fixture::domain().lexicon;
  CHECK(lex.display("t0915") == "09:15");
  CHECK(lex.display("Milan") == "Milan");
  CHECK(lex.display("nobody") == "nobody");
  CHECK(lex.name_facts().has_concept("CityName", "Rome"));
  CHECK(lex.lookup("when") != nullptr);
  CHECK(lex.lookup("blorf") == nullptr);

  Lexicon mine;
  const auto& t = fixture::domain().terminology;
  CHECK_THROWS_AS(mine.add("fly", VerbConcept{"Fly"}, t), UndefinedName);
  mine.add("go", VerbConcept{"Depart"}, t);
  CHECK_THROWS(mine.add("go", VerbConcept{"Train"}, t));
}
