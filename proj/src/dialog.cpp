#include "dialogm/dialog.hpp"

#include <algorithm>
#include <sstream>

#include "dialogm/error.hpp"
#include "dialogm/tau.hpp"

namespace dialogm::dialog {

using fil::Formula;
using fil::Term;

std::string to_string(GoalStatus s) {
  switch (s) {
    case GoalStatus::Open:
      return "open";
    case GoalStatus::Answered:
      return "answered";
    case GoalStatus::Suggested:
      return "suggested";
  }
  return "open";
}

std::string action_kind(const SystemAction& a) {
  static const char* kinds[] = {"ask", "suggest", "inform", "clarify"};
  return kinds[a.index()];
}

const std::string& action_text(const SystemAction& a) {
  return std::visit([](const auto& x) -> const std::string& { return x.text; }, a);
}

std::vector<Goal> DialogState::open_goals() const {
  std::vector<Goal> out;
  for (const auto& g : agenda)
    if (g.status != GoalStatus::Answered) out.push_back(g);
  return out;
}

// ---------------------------------------------------------------------------

Engine::Engine(Domain domain, dl::FactBase facts, std::shared_ptr<const solver::ProblemSolver> solver)
    : domain_(std::move(domain)),
      knowledge_(facts.merged(domain_.lexicon.name_facts())),
      solver_(std::move(solver)),
      user_rel_(dl::compute_user_rel(domain_.terminology)) {
  if (!solver_) solver_ = std::make_shared<solver::TimetableSolver>(knowledge_);
}

DialogState Engine::new_state(const std::string& user_const) const {
  DialogState s;
  s.user_const = user_const;
  s.shared.add_constant(user_const);
  for (const auto& a : knowledge_.individuals()) s.shared.add_constant(a);
  s.shared.assert_literal({true, terminology().user_concept, {user_const}});
  for (const auto& [c, members] : knowledge_.concepts())
    for (const auto& a : members) s.shared.assert_literal({true, c, {a}});
  return s;
}

// ---------------------------------------------------------------------------

namespace {

void collect_sites(const Formula& f, fil::SortMap& sorts, std::vector<IonicSite>& out) {
  switch (f.kind()) {
    case Formula::Kind::Ionic:
      out.push_back({f, sorts});
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      fil::SortMap inner = sorts;
      if (!f.sort().empty()) inner[f.var()] = f.sort();
      collect_sites(f.body(), inner, out);
      return;
    }
    default:
      for (const auto& c : f.children()) collect_sites(c, sorts, out);
  }
}

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
  switch (f.kind()) {
    case Formula::Kind::Not:
      return Formula::negation(kids[0]);
    case Formula::Kind::And:
      return Formula::conj(std::move(kids));
    case Formula::Kind::Or:
      return Formula::disj(std::move(kids));
    case Formula::Kind::Implies:
      return Formula::implies(kids[0], kids[1]);
    case Formula::Kind::Iff:
      return Formula::iff(kids[0], kids[1]);
    case Formula::Kind::Exists:
      return Formula::exists(f.var(), f.sort(), kids[0]);
    case Formula::Kind::Forall:
      return Formula::forall(f.var(), f.sort(), kids[0]);
    case Formula::Kind::Ionic: {
      Formula conclusion = kids.back();
      kids.pop_back();
      return Formula::ionic(std::move(kids), std::move(conclusion));
    }
    default:
      return f;
  }
}

// Existentials over the user concept name the session user.
Formula bind_user(const Formula& f, const std::string& user_concept, const std::string& user_const) {
  if (f.is(Formula::Kind::Atom)) return f;
  if (f.is(Formula::Kind::Exists) && f.sort() == user_concept)
    return bind_user(fil::substitute(f.body(), f.var(), Term::constant(user_const)), user_concept, user_const);
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(bind_user(c, user_concept, user_const));
  return rebuild(f, std::move(kids));
}

// Replaces each quantified variable that a concluded ionic in its scope
// binds by the witness. Inner scopes are grounded first.
Formula ground_concluded(const Formula& f, const fil::PartialInterpretation& shared) {
  if (f.is(Formula::Kind::Atom) || f.is(Formula::Kind::Ionic)) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(ground_concluded(c, shared));
  Formula out = rebuild(f, std::move(kids));
  if (!out.is(Formula::Kind::Exists) && !out.is(Formula::Kind::Forall)) return out;

  const fil::SortMap scope{{out.var(), out.sort()}};
  for (const auto& site : ionic_sites(out.body())) {
    fil::SortMap sorts = site.sorts;
    sorts.insert(scope.begin(), scope.end());
    const fil::IonicStatus st = fil::ionic_status(site.node, shared, {}, sorts);
    const auto* c = std::get_if<fil::Concluded>(&st);
    if (!c) continue;
    auto it = c->bindings.find(out.var());
    if (it == c->bindings.end()) continue;
    return fil::substitute(out.body(), out.var(), Term::constant(it->second));
  }
  return out;
}

void collect_role_atoms(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Formula::Kind::Ionic)) return;
  if (f.is(Formula::Kind::Atom)) {
    if (f.args().size() == 2) out.push_back(f);
    return;
  }
  for (const auto& c : f.children()) collect_role_atoms(c, out);
}

std::string sort_label(const std::string& var, const Focus& f) {
  if (const drs::Referent* r = f.query.body.referent(var)) return r->sort;
  for (const auto& p : f.query.params)
    if (p.name == var) return p.sort;
  return var;
}

std::string inform_text(const Focus& f, const solver::ConjunctiveQuery& q,
                        const std::vector<solver::SolverBinding>& rows, const Engine& e) {
  if (rows.empty()) return "Sorry, no connection satisfies your constraints.";
  std::ostringstream os;
  os << "Found " << rows.size() << (rows.size() == 1 ? " result: " : " results: ");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r) os << "; ";
    for (std::size_t k = 0; k < q.answer_vars.size(); ++k) {
      if (k) os << ", ";
      const std::string& v = q.answer_vars[k];
      const std::string label = sort_label(v, f);
      if (!label.empty()) os << label << ' ';
      os << e.lexicon().display(rows[r].at(v));
    }
  }
  os << '.';
  return os.str();
}

Suggest suggestion(Goal g, const std::string& var, const std::string& value, const std::string& question,
                   const Engine& e) {
  g.status = GoalStatus::Suggested;
  return Suggest{g, {{var, value}}, "Do you mean " + e.lexicon().display(value) + " for: " + question};
}

SystemAction proceed(DialogState& s, const Engine& e) {
  Focus& focus = *s.focus;
  for (const auto& site : ionic_sites(focus.target_formula)) {
    if (std::holds_alternative<fil::Blocked>(fil::ionic_status(site.node, s.shared, {}, site.sorts))) {
      s.focus.reset();
      s.agenda.clear();
      return Inform{{}, "Sorry, no connection satisfies your constraints."};
    }
  }

  std::vector<Goal> goals = extract_goals(focus.target_formula, s.shared, e.user_rel());
  std::vector<Goal> agenda;
  for (auto g : s.agenda) {
    auto it = std::find_if(goals.begin(), goals.end(), [&](const Goal& n) { return n.key() == g.key(); });
    g.status = it == goals.end() ? GoalStatus::Answered : GoalStatus::Open;
    agenda.push_back(std::move(g));
  }
  for (const auto& g : goals)
    if (std::none_of(agenda.begin(), agenda.end(), [&](const Goal& a) { return a.key() == g.key(); }))
      agenda.push_back(g);
  s.agenda = std::move(agenda);

  if (!goals.empty()) {
    const Goal& g = goals.front();
    Question q = generate_question(g, e.terminology());
    // A single remaining candidate is offered rather than asked for.
    if (g.var_sorts.size() == 1) {
      const auto& [var, sort] = *g.var_sorts.begin();
      std::vector<std::string> viable;
      for (const auto& c : fil::sort_candidates(s.shared, sort))
        if (fil::eval_formula(fil::substitute(g.justification, fil::Bindings{{var, c}}), s.shared) != fil::TruthValue::F)
          viable.push_back(c);
      if (viable.size() == 1) {
        for (auto& a : s.agenda)
          if (a.key() == g.key()) a.status = GoalStatus::Suggested;
        return suggestion(g, var, viable.front(), q.text, e);
      }
    }
    if (focus.asked.insert(g.key()).second) return AskQuestion{g, q.text, q.expected_sort};
    return Clarify{"GoalStillOpen", q.text};
  }

  const solver::ConjunctiveQuery query = build_solver_query(focus, s.shared, e);
  std::vector<solver::SolverBinding> rows;
  try {
    rows = e.problem_solver().eval_query(query);
  } catch (const Error& err) {
    s.focus.reset();
    s.agenda.clear();
    return Clarify{err.code(), std::string("Sorry, I cannot look that up: ") + err.what() + "."};
  }
  Inform out{rows, inform_text(focus, query, rows, e)};
  s.focus.reset();
  s.agenda.clear();
  return out;
}

SystemAction clarify_for(const Error& err, const Engine& e) {
  if (const auto* u = dynamic_cast<const UnknownLexeme*>(&err))
    return Clarify{err.code(), "Sorry, I did not understand '" + u->token() + "'."};
  if (const auto* a = dynamic_cast<const AttachmentRejected*>(&err))
    return Clarify{err.code(), "Sorry, " + e.lexicon().display(a->object()) + " does not fit " + a->role() + "."};
  if (dynamic_cast<const EmptyUtterance*>(&err)) return Clarify{err.code(), "Sorry, I did not catch that."};
  return Clarify{err.code(), std::string("Sorry, ") + err.what() + "."};
}

std::string first_open_question(const DialogState& s, const Engine& e) {
  for (const auto& g : s.agenda)
    if (g.status != GoalStatus::Answered) return generate_question(g, e.terminology()).text;
  return {};
}

SystemAction on_query(DialogState& s, const sem::ParseResult& pr, const Engine& e, bool noted) {
  if (!pr.main_referent)
    return Clarify{"NoFocus", noted ? "Noted. What would you like to know?"
                                    : "Sorry, I could not tell what you are asking about."};
  const std::optional<std::string> target = infer_target(pr.drs.body, *pr.main_referent, e);
  if (!target) return Clarify{"NoTarget", "Sorry, I cannot answer that question."};
  Focus f;
  f.query = pr.drs;
  f.referent = *pr.main_referent;
  f.target = *target;
  f.target_formula = focus_formula(*target, *pr.main_referent, pr.drs, e, s.user_const);
  s.focus = std::move(f);
  s.agenda.clear();
  return proceed(s, e);
}

// Role orientation decides which argument must carry which sort.
std::string argument_sort(const dl::RoleDecl& r, std::size_t pos, const dl::Terminology& t) {
  const dl::ConceptExpr u = dl::unfold(pos == 0 ? r.domain : r.range, t);
  for (const auto& m : dl::conjuncts(u))
    if (m.kind == dl::ConceptExpr::Kind::Atomic) return m.name;
  return {};
}

SystemAction on_inform(DialogState& s, const sem::ParseResult& pr, const Engine& e) {
  const dl::Terminology& t = e.terminology();
  if (s.focus && !s.open_goals().empty()) {
    try {
      if (auto bound = bind_answer(pr.drs.body, s, e)) {
        s = std::move(*bound);
        return proceed(s, e);
      }
    } catch (const SortMismatch& m) {
      return Clarify{m.code(), "Sorry, " + e.lexicon().display(m.constant()) + " is not a " + m.expected_sort() +
                                   ". " + first_open_question(s, e)};
    } catch (const InconsistentExtension& err) {
      return Clarify{err.code(), "Sorry, that contradicts what you told me before."};
    }

    const bool asserts_user_fact = std::any_of(pr.drs.body.conditions.begin(), pr.drs.body.conditions.end(),
                                               [&](const Formula& c) { return e.user_rel().count(c.predicate()); });
    if (pr.constants.size() == 1 && !asserts_user_fact) {
      auto it = std::find_if(s.agenda.begin(), s.agenda.end(), [](const Goal& g) { return g.status != GoalStatus::Answered; });
      const std::string& c = pr.constants.front();
      const auto& [var, sort] = *it->var_sorts.begin();
      const std::string question = generate_question(*it, t).text;
      if (!sort.empty() &&
          dl::instance_check(c, dl::ConceptExpr::atomic(sort), t, e.knowledge()) != dl::ProofStatus::Proved)
        return Clarify{"SortMismatch", "Sorry, " + e.lexicon().display(c) + " is not a " + sort + ". " + question};
      it->status = GoalStatus::Suggested;
      return suggestion(*it, var, c, question, e);
    }
  }

  // No goal to bind: keep stated user facts, then treat as a query.
  bool noted = false;
  for (const auto& c : pr.drs.body.conditions) {
    if (!e.user_rel().count(c.predicate()) || c.args().size() != 2) continue;
    if (c.args()[0].is_var() || c.args()[1].is_var()) continue;
    const dl::RoleDecl* decl = t.role(c.predicate());
    for (std::size_t k = 0; k < 2; ++k) {
      const std::string sort = argument_sort(*decl, k, t);
      const std::string& arg = c.args()[k].name;
      if (sort.empty() || sort == t.user_concept) continue;
      if (dl::instance_check(arg, dl::ConceptExpr::atomic(sort), t, e.knowledge()) != dl::ProofStatus::Proved)
        return Clarify{"SortMismatch", "Sorry, " + e.lexicon().display(arg) + " is not a " + sort + "."};
    }
    try {
      s.shared.assert_literal({true, c.predicate(), {c.args()[0].name, c.args()[1].name}});
    } catch (const InconsistentExtension& err) {
      return Clarify{err.code(), "Sorry, that contradicts what you told me before."};
    }
    noted = true;
  }
  return on_query(s, pr, e, noted);
}

SystemAction on_confirmation(DialogState& s, const Suggest& pending, bool accepted, const Engine& e) {
  const Formula atom = fil::substitute(pending.goal.justification, pending.binding);
  fil::Tuple args;
  for (const auto& a : atom.args()) args.push_back(a.name);
  try {
    s.shared.assert_literal({accepted, atom.predicate(), args});
  } catch (const InconsistentExtension& err) {
    return Clarify{err.code(), "Sorry, that contradicts what you told me before."};
  }
  for (auto& g : s.agenda)
    if (g.key() == pending.goal.key()) g.status = accepted ? GoalStatus::Answered : GoalStatus::Open;
  if (!s.focus) return Clarify{"NoFocus", "Noted. What would you like to know?"};
  return proceed(s, e);
}

}  // namespace

std::vector<IonicSite> ionic_sites(const fil::Formula& f) {
  std::vector<IonicSite> out;
  fil::SortMap sorts;
  collect_sites(f, sorts, out);
  return out;
}

std::vector<Goal> extract_goals(const fil::Formula& f, const fil::PartialInterpretation& shared,
                                const std::set<std::string>& user_rel) {
  std::vector<Goal> out;
  for (const auto& site : ionic_sites(f)) {
    const fil::IonicStatus st = fil::ionic_status(site.node, shared, {}, site.sorts);
    const auto* open = std::get_if<fil::Open>(&st);
    if (!open) continue;
    for (const auto& j : site.node.justifications()) {
      if (!j.is(Formula::Kind::Atom) || !user_rel.count(j.predicate())) continue;
      Goal g;
      g.justification = j;
      g.origin_role = j.predicate();
      const std::set<std::string> fv = fil::free_vars(j);
      for (const auto& v : open->vars)
        if (fv.count(v.name)) g.var_sorts[v.name] = v.sort;
      if (g.var_sorts.empty()) continue;
      if (std::none_of(out.begin(), out.end(), [&](const Goal& o) { return o.key() == g.key(); }))
        out.push_back(std::move(g));
    }
  }
  return out;
}

Question generate_question(const Goal& g, const dl::Terminology& t) {
  Question q;
  q.expected_sort = g.var_sorts.empty() ? std::string() : g.var_sorts.begin()->second;
  auto it = t.question_templates.find(g.origin_role);
  if (it == t.question_templates.end()) {
    q.text = "Please specify: " + g.origin_role + " (" + (q.expected_sort.empty() ? "value" : q.expected_sort) + ").";
    return q;
  }
  q.text = it->second;
  for (const auto& [var, sort] : g.var_sorts) {
    const std::string slot = "{" + var + "}";
    for (auto pos = q.text.find(slot); pos != std::string::npos; pos = q.text.find(slot, pos + sort.size()))
      q.text.replace(pos, slot.size(), sort);
  }
  return q;
}

dl::FactBase skolemize(const drs::DRS& d, const dl::FactBase& kb) {
  auto name = [](const Term& t) { return t.is_var() ? "_" + t.name : t.name; };
  dl::FactBase out = kb;
  for (const auto& r : d.referents) out.add_individual(r.constant ? r.name : "_" + r.name);
  for (const auto& c : d.conditions) {
    if (c.args().size() == 1)
      out.add_concept(c.predicate(), name(c.args()[0]));
    else if (c.args().size() == 2)
      out.add_role(c.predicate(), name(c.args()[0]), name(c.args()[1]));
  }
  return out;
}

std::optional<std::string> infer_target(const drs::DRS& d, const std::string& referent, const Engine& e) {
  const dl::Terminology& t = e.terminology();
  const dl::FactBase kb = skolemize(d, e.knowledge());
  const std::string sk = "_" + referent;

  std::optional<std::string> best;
  std::size_t best_size = 0;
  for (const auto& [name, body] : t.definitions) {
    const std::vector<dl::ConceptExpr> parts = dl::conjuncts(dl::unfold(body, t));
    std::size_t entailed = 0;
    bool ok = true;
    for (const auto& part : parts) {
      const std::set<std::string> roles = dl::role_names(part);
      const bool deferred =
          std::any_of(roles.begin(), roles.end(), [&](const std::string& r) { return e.user_rel().count(r) > 0; });
      if (deferred) continue;
      if (dl::instance_check(sk, part, t, kb) != dl::ProofStatus::Proved) {
        ok = false;
        break;
      }
      ++entailed;
    }
    if (ok && entailed > 0 && parts.size() > best_size) {
      best = name;
      best_size = parts.size();
    }
  }
  return best;
}

fil::Formula focus_formula(const std::string& target, const std::string& referent, const drs::LambdaDRS& query,
                           const Engine& e, const std::string& user_const) {
  const dl::Terminology& t = e.terminology();
  std::set<std::string> reserved{user_const};
  for (const auto& r : query.body.referents) reserved.insert(r.name);
  for (const auto& p : query.params) reserved.insert(p.name);
  Formula f = tau::translate_concept_at(dl::unfold(dl::ConceptExpr::atomic(target), t), Term::constant(referent), t,
                                        e.user_rel(), reserved);
  return bind_user(f, t.user_concept, user_const);
}

solver::ConjunctiveQuery build_solver_query(const Focus& f, const fil::PartialInterpretation& shared,
                                            const Engine& e) {
  const dl::Terminology& t = e.terminology();
  std::vector<solver::QueryAtom> atoms;
  auto add = [&](solver::QueryAtom a) {
    if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(std::move(a));
  };

  for (const auto& c : f.query.body.conditions)
    if (c.args().size() == 2 && t.is_role(c.predicate()) && !e.user_rel().count(c.predicate()))
      add({c.predicate(), c.args()});

  std::vector<Formula> role_atoms;
  collect_role_atoms(ground_concluded(f.target_formula, shared), role_atoms);
  for (const auto& g : role_atoms) {
    if (!t.is_role(g.predicate()) || e.user_rel().count(g.predicate())) continue;
    bool ground = true, mentions_referent = false;
    std::vector<Term> terms;
    for (const auto& term : g.args()) {
      ground = ground && !term.is_var();
      if (!term.is_var() && term.name == f.referent) {
        mentions_referent = true;
        terms.push_back(Term::var(f.referent));
      } else {
        terms.push_back(term);
      }
    }
    if (ground && mentions_referent) add({g.predicate(), std::move(terms)});
  }

  std::sort(atoms.begin(), atoms.end(), [](const solver::QueryAtom& a, const solver::QueryAtom& b) {
    if (a.predicate != b.predicate) return a.predicate < b.predicate;
    return a.terms < b.terms;
  });

  solver::ConjunctiveQuery q;
  q.atoms = std::move(atoms);
  std::vector<std::string> vars;
  for (const auto& a : q.atoms)
    for (const auto& term : a.terms)
      if (term.is_var() && std::find(vars.begin(), vars.end(), term.name) == vars.end()) vars.push_back(term.name);
  auto take = [&](const std::string& v) {
    auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end()) return;
    q.answer_vars.push_back(v);
    vars.erase(it);
  };
  take(f.referent);
  for (const auto& p : f.query.params) take(p.name);
  for (const auto& v : vars) q.answer_vars.push_back(v);
  return q;
}

std::optional<DialogState> bind_answer(const drs::DRS& d, const DialogState& state, const Engine& e) {
  const dl::Terminology& t = e.terminology();
  for (std::size_t gi = 0; gi < state.agenda.size(); ++gi) {
    const Goal& goal = state.agenda[gi];
    if (goal.status == GoalStatus::Answered) continue;
    for (const auto& c : d.conditions) {
      if (c.predicate() != goal.justification.predicate() || c.args().size() != goal.justification.args().size())
        continue;
      fil::Bindings b;
      bool match = true;
      for (std::size_t k = 0; k < c.args().size() && match; ++k) {
        const Term& want = goal.justification.args()[k];
        const Term& got = c.args()[k];
        if (got.is_var()) {
          match = false;
        } else if (!want.is_var()) {
          match = want.name == got.name;
        } else if (auto it = b.find(want.name); it != b.end()) {
          match = it->second == got.name;
        } else {
          b[want.name] = got.name;
        }
      }
      if (!match) continue;

      for (const auto& [var, value] : b) {
        auto s = goal.var_sorts.find(var);
        if (s == goal.var_sorts.end() || s->second.empty()) continue;
        if (dl::instance_check(value, dl::ConceptExpr::atomic(s->second), t, e.knowledge()) !=
            dl::ProofStatus::Proved)
          throw SortMismatch(value, s->second);
      }
      const Formula atom = fil::substitute(goal.justification, b);
      fil::Tuple args;
      for (const auto& a : atom.args()) args.push_back(a.name);
      DialogState next = state;
      next.shared = fil::extend_interpretation(state.shared, {true, atom.predicate(), args});
      next.agenda[gi].status = GoalStatus::Answered;
      return next;
    }
  }
  return std::nullopt;
}

std::pair<DialogState, SystemAction> interpret_turn(const std::string& text, const DialogState& state,
                                                    const Engine& e) {
  DialogState s = state;
  ++s.turn;
  std::optional<Suggest> pending = std::move(s.pending_suggestion);
  s.pending_suggestion.reset();

  sem::ActContext actx;
  actx.after_suggest = pending.has_value();
  actx.has_open_goals = s.focus && !s.open_goals().empty();
  actx.user_rel = e.user_rel();

  sem::SpeechAct user_act = sem::classify_speech_act(text, nullptr, actx);
  std::optional<SystemAction> action;
  if (pending && (user_act == sem::SpeechAct::Accept || user_act == sem::SpeechAct::Reject)) {
    action = on_confirmation(s, *pending, user_act == sem::SpeechAct::Accept, e);
  } else {
    try {
      const sem::ParseResult pr =
          sem::parse_utterance(text, e.lexicon(), e.terminology(), e.knowledge(), s.user_const, actx);
      user_act = pr.act;
      s.last_drs_box = drs::render_box(pr.drs);
      action = pr.act == sem::SpeechAct::Inform ? on_inform(s, pr, e) : on_query(s, pr, e, false);
    } catch (const Error& err) {
      user_act = sem::SpeechAct::Query;
      action = clarify_for(err, e);
    }
  }

  if (const auto* sg = std::get_if<Suggest>(&*action)) s.pending_suggestion = *sg;
  s.history.push_back({s.turn, "user", sem::to_string(user_act), text});
  s.history.push_back({s.turn, "system", action_kind(*action), action_text(*action)});
  return {std::move(s), std::move(*action)};
}

std::string render_transcript(const std::vector<TurnRecord>& history) {
  std::string out;
  for (const auto& r : history)
    out += std::to_string(r.turn) + '\t' + r.speaker + '\t' + r.act + '\t' + r.text + '\n';
  return out;
}

}  // namespace dialogm::dialog
