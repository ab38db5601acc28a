#pragma once

// Lexicon-driven composition of utterances into lambda-DRSs. Content words
// are normalized through the terminology's synonym axioms; prepositional
// attachments are licensed by instance checks against the fact base.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "dialogm/dl.hpp"
#include "dialogm/drs.hpp"

namespace dialogm::sem {

// A content word asserting a concept on the main referent (verbs and nouns).
struct VerbConcept {
  std::string concept_name;
};
struct PrepRole {
  std::string role;
  dl::ConceptExpr restriction;
};
struct ProperName {
  std::string constant;
  std::string concept_name;
  std::string display;  // surface as written in the domain file
};
struct WhWord {
  std::string sort;
};
// Preposition heading an answer fragment; the session user fills the other
// argument of the role.
struct AnswerPrep {
  std::string role;
};
using LexEntry = std::variant<VerbConcept, PrepRole, ProperName, WhWord, AnswerPrep>;

class Lexicon {
 public:
  // Keys are lower-cased and synonym-normalized; one entry per kind per key.
  // Throws UndefinedName for undeclared concepts/roles.
  void add(const std::string& surface, LexEntry entry, const dl::Terminology& t);

  const std::vector<LexEntry>* lookup(const std::string& key) const;
  const std::map<std::string, std::vector<LexEntry>>& entries() const { return entries_; }

  // Concept assertions contributed by proper names, e.g. CityName(Rome).
  const dl::FactBase& name_facts() const { return facts_; }
  // Display form of a constant: the first proper-name surface for it, or
  // the constant itself.
  std::string display(const std::string& constant) const;

 private:
  std::map<std::string, std::vector<LexEntry>> entries_;
  std::map<std::string, std::string> display_;
  dl::FactBase facts_;
};

enum class SpeechAct { Inform, Query, Suggest, Accept, Reject };
std::string to_string(SpeechAct a);

// Lower-cased, trailing/leading punctuation stripped, empty tokens dropped.
std::vector<std::string> tokenize(const std::string& text);

// Synonym target for a surface token, else the lower-cased token.
std::string normalize_token(const std::string& token, const dl::Terminology& t);

struct ParseResult {
  drs::LambdaDRS drs;
  SpeechAct act = SpeechAct::Query;
  std::optional<std::string> main_referent;
  bool has_wh = false;
  bool question_mark = false;
  std::vector<std::string> constants;  // proper names in order of mention
};

struct ActContext {
  bool after_suggest = false;
  bool has_open_goals = false;
  std::set<std::string> user_rel;
};

// Rule cascade: affirmative/negative after a suggestion -> accept/reject;
// wh-word or interrogative question -> query; fragment or declarative that
// can bind an open goal or asserts a user-relation fact -> inform; else query.
SpeechAct classify_speech_act(const std::string& text, const ParseResult* parse, const ActContext& ctx);

// Throws EmptyUtterance, UnknownLexeme or AttachmentRejected. kb should
// include the lexicon's name facts.
ParseResult parse_utterance(const std::string& text, const Lexicon& lex, const dl::Terminology& t,
                            const dl::FactBase& kb, const std::string& user_const = "u",
                            const ActContext& ctx = {});

bool is_affirmative(const std::string& token);
bool is_negative(const std::string& token);

}  // namespace dialogm::sem
