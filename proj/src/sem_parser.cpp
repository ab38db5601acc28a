#include "dialogm/sem_parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "dialogm/error.hpp"

namespace dialogm::sem {

using fil::Formula;
using fil::Term;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

const std::set<std::string>& stop_words() {
  static const std::set<std::string> words{"a", "an", "the", "does", "do", "is", "are", "please", "there"};
  return words;
}

const std::set<std::string>& interrogatives() {
  static const std::set<std::string> words{"does", "do",   "is",  "are", "when", "where", "which",
                                           "what", "who",  "how", "can", "could", "will", "would"};
  return words;
}

template <class T>
const T* find_entry(const std::vector<LexEntry>& entries) {
  for (const auto& e : entries)
    if (const T* p = std::get_if<T>(&e)) return p;
  return nullptr;
}

void require_concept(const std::string& n, const dl::Terminology& t) {
  if (!t.is_concept(n)) throw UndefinedName(n);
}

void require_role(const std::string& n, const dl::Terminology& t) {
  if (!t.is_role(n)) throw UndefinedName(n);
}

std::string unique_name(std::string base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int k = 1;; ++k)
    if (!taken.count(base + std::to_string(k))) return base + std::to_string(k);
}

bool has_user(const dl::ConceptExpr& c, const dl::Terminology& t) {
  for (const auto& m : dl::conjuncts(dl::unfold(c, t)))
    if (m.kind == dl::ConceptExpr::Kind::Atomic && m.name == t.user_concept) return true;
  return false;
}

}  // namespace

std::string to_string(SpeechAct a) {
  switch (a) {
    case SpeechAct::Inform:
      return "inform";
    case SpeechAct::Query:
      return "query";
    case SpeechAct::Suggest:
      return "suggest";
    case SpeechAct::Accept:
      return "accept";
    case SpeechAct::Reject:
      return "reject";
  }
  return "query";
}

bool is_affirmative(const std::string& token) {
  static const std::set<std::string> words{"yes", "yeah", "yep", "ok", "okay", "sure", "correct", "right"};
  return words.count(lower(token)) > 0;
}

bool is_negative(const std::string& token) {
  static const std::set<std::string> words{"no", "nope", "wrong", "incorrect"};
  return words.count(lower(token)) > 0;
}

std::vector<std::string> tokenize(const std::string& text) {
  static const std::string punct = ".,?!;\"'()";
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string word;
  while (in >> word) {
    const auto b = word.find_first_not_of(punct);
    if (b == std::string::npos) continue;
    const auto e = word.find_last_not_of(punct);
    out.push_back(lower(word.substr(b, e - b + 1)));
  }
  return out;
}

std::string normalize_token(const std::string& token, const dl::Terminology& t) {
  const std::string key = lower(token);
  for (const auto& [surface, target] : t.synonyms)
    if (lower(surface) == key) return target;
  return key;
}

// ---------------------------------------------------------------------------

void Lexicon::add(const std::string& surface, LexEntry entry, const dl::Terminology& t) {
  std::visit(
      [&](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, VerbConcept>) {
          require_concept(e.concept_name, t);
        } else if constexpr (std::is_same_v<E, PrepRole>) {
          require_role(e.role, t);
          for (const auto& n : dl::concept_names(e.restriction)) require_concept(n, t);
          for (const auto& n : dl::role_names(e.restriction)) require_role(n, t);
        } else if constexpr (std::is_same_v<E, ProperName>) {
          require_concept(e.concept_name, t);
        } else if constexpr (std::is_same_v<E, WhWord>) {
          require_concept(e.sort, t);
        } else {
          require_role(e.role, t);
        }
      },
      entry);

  const std::string key = normalize_token(surface, t);
  auto& slot = entries_[key];
  for (const auto& existing : slot)
    if (existing.index() == entry.index()) throw Error("DuplicateLexeme", "duplicate lexicon entry for '" + surface + "'");
  if (const auto* name = std::get_if<ProperName>(&entry)) {
    facts_.add_concept(name->concept_name, name->constant);
    display_.emplace(name->constant, name->display.empty() ? name->constant : name->display);
  }
  slot.push_back(std::move(entry));
}

const std::vector<LexEntry>* Lexicon::lookup(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string Lexicon::display(const std::string& constant) const {
  auto it = display_.find(constant);
  return it == display_.end() ? constant : it->second;
}

// ---------------------------------------------------------------------------

SpeechAct classify_speech_act(const std::string& text, const ParseResult* parse, const ActContext& ctx) {
  std::vector<std::string> toks = tokenize(text);
  std::vector<std::string> content;
  for (const auto& tok : toks)
    if (!stop_words().count(tok)) content.push_back(tok);

  if (ctx.after_suggest && content.size() == 1) {
    if (is_affirmative(content[0])) return SpeechAct::Accept;
    if (is_negative(content[0])) return SpeechAct::Reject;
  }
  if (!parse) return SpeechAct::Query;

  const bool interrogative_order = !toks.empty() && interrogatives().count(toks.front());
  if (parse->has_wh || (parse->question_mark && interrogative_order)) return SpeechAct::Query;

  const bool asserts_user_fact =
      std::any_of(parse->drs.body.conditions.begin(), parse->drs.body.conditions.end(),
                  [&](const Formula& c) { return ctx.user_rel.count(c.predicate()) > 0; });
  const bool fragment = !parse->main_referent.has_value();
  if (asserts_user_fact || (fragment && ctx.has_open_goals && !parse->constants.empty())) return SpeechAct::Inform;
  return SpeechAct::Query;
}

ParseResult parse_utterance(const std::string& text, const Lexicon& lex, const dl::Terminology& t,
                            const dl::FactBase& kb, const std::string& user_const, const ActContext& ctx) {
  const std::vector<std::string> toks = tokenize(text);
  if (toks.empty()) throw EmptyUtterance();

  struct Attachment {
    const PrepRole* prep;
    std::string object;
  };

  ParseResult out;
  out.question_mark = text.find('?') != std::string::npos;

  std::set<std::string> taken;
  std::optional<std::string> main;
  std::string main_sort;
  std::vector<Formula> main_atoms, param_atoms, object_atoms, link_atoms, role_atoms, user_atoms;
  std::vector<drs::Referent> constant_refs;
  std::vector<Attachment> attachments;
  const PrepRole* pending_prep = nullptr;
  const AnswerPrep* pending_answer = nullptr;

  auto add_constant_ref = [&](const ProperName& n) {
    for (const auto& r : constant_refs)
      if (r.name == n.constant) return;
    constant_refs.push_back({n.constant, n.concept_name, true});
  };

  for (const auto& tok : toks) {
    if (stop_words().count(tok)) continue;
    const std::string key = normalize_token(tok, t);
    const std::vector<LexEntry>* entries = lex.lookup(key);
    std::vector<LexEntry> implicit;
    if (!entries && t.is_concept(key)) {
      implicit.push_back(VerbConcept{key});
      entries = &implicit;
    }
    if (!entries) throw UnknownLexeme(tok);

    if (const auto* wh = find_entry<WhWord>(*entries)) {
      const std::string x = unique_name("x", taken);
      taken.insert(x);
      out.drs.params.push_back({x, wh->sort});
      param_atoms.push_back(Formula::atom(wh->sort, {Term::var(x)}));
      out.has_wh = true;
    } else if (const auto* verb = find_entry<VerbConcept>(*entries)) {
      if (!main) {
        main = unique_name(std::string(1, static_cast<char>(std::tolower(verb->concept_name[0]))), taken);
        main_sort = verb->concept_name;
        taken.insert(*main);
      }
      main_atoms.push_back(Formula::atom(verb->concept_name, {Term::var(*main)}));
    } else if (find_entry<PrepRole>(*entries) || find_entry<AnswerPrep>(*entries)) {
      const auto* prep = find_entry<PrepRole>(*entries);
      const auto* answer = find_entry<AnswerPrep>(*entries);
      const bool use_answer = answer && (!prep || (!main && out.drs.params.empty()));
      pending_prep = use_answer ? nullptr : prep;
      pending_answer = use_answer ? answer : nullptr;
    } else if (const auto* name = find_entry<ProperName>(*entries)) {
      out.constants.push_back(name->constant);
      if (pending_prep) {
        if (dl::instance_check(name->constant, pending_prep->restriction, t, kb) != dl::ProofStatus::Proved)
          throw AttachmentRejected(pending_prep->role, name->constant, dl::to_string(pending_prep->restriction));
        add_constant_ref(*name);
        const dl::RoleDecl* decl = t.role(pending_prep->role);
        if (decl && decl->range.kind == dl::ConceptExpr::Kind::Atomic)
          object_atoms.push_back(Formula::atom(decl->range.name, {Term::constant(name->constant)}));
        attachments.push_back({pending_prep, name->constant});
        pending_prep = nullptr;
      } else if (pending_answer) {
        const dl::RoleDecl* decl = t.role(pending_answer->role);
        const bool user_is_object =
            decl && !has_user(decl->domain, t) && has_user(decl->range, t);
        Term u = Term::constant(user_const);
        Term o = Term::constant(name->constant);
        user_atoms.push_back(Formula::atom(pending_answer->role, user_is_object ? std::vector<Term>{o, u}
                                                                                : std::vector<Term>{u, o}));
        pending_answer = nullptr;
      } else {
        add_constant_ref(*name);
        object_atoms.push_back(Formula::atom(name->concept_name, {Term::constant(name->constant)}));
      }
    }
  }

  if (main) {
    // Wh-parameters are linked to the main referent through the first role
    // whose range is the parameter's sort and whose domain is one of the
    // main referent's concepts.
    for (const auto& p : out.drs.params) {
      for (const auto& r : t.roles) {
        if (r.range.kind != dl::ConceptExpr::Kind::Atomic || r.range.name != p.sort) continue;
        const bool domain_fits =
            std::any_of(main_atoms.begin(), main_atoms.end(), [&](const Formula& a) {
              return r.domain.kind == dl::ConceptExpr::Kind::Top ||
                     (r.domain.kind == dl::ConceptExpr::Kind::Atomic && a.predicate() == r.domain.name);
            });
        if (!domain_fits) continue;
        link_atoms.push_back(Formula::atom(r.name, {Term::var(*main), Term::var(p.name)}));
        break;
      }
    }
    for (const auto& a : attachments)
      role_atoms.push_back(Formula::atom(a.prep->role, {Term::var(*main), Term::constant(a.object)}));
    out.drs.body.referents.push_back({*main, main_sort, false});
  }
  out.main_referent = main;
  for (const auto& r : constant_refs) out.drs.body.referents.push_back(r);

  for (auto* group : {&main_atoms, &param_atoms, &object_atoms, &link_atoms, &role_atoms, &user_atoms})
    for (auto& a : *group)
      if (std::find(out.drs.body.conditions.begin(), out.drs.body.conditions.end(), a) ==
          out.drs.body.conditions.end())
        out.drs.body.conditions.push_back(a);

  ActContext effective = ctx;
  if (effective.user_rel.empty()) effective.user_rel = dl::compute_user_rel(t);
  out.act = classify_speech_act(text, &out, effective);
  return out;
}

}  // namespace dialogm::sem
