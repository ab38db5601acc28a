#pragma once

// Mixed-initiative dialog management. A query fixes a focus (the DRS and
// the most specific defined concept it instantiates); the ionic
// subformulas of the focus translation that are still open under the
// shared knowledge become goals, asked one at a time. When no goal is
// open the problem solver answers the focus.

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dialogm/domain.hpp"
#include "dialogm/drs.hpp"
#include "dialogm/fil.hpp"
#include "dialogm/sem_parser.hpp"
#include "dialogm/solver.hpp"

namespace dialogm::dialog {

enum class GoalStatus { Open, Answered, Suggested };
std::string to_string(GoalStatus s);

struct Goal {
  fil::Formula justification = fil::Formula::truth();  // atom with unbound variables
  fil::SortMap var_sorts;                               // open variable -> sort
  std::string origin_role;
  GoalStatus status = GoalStatus::Open;

  std::string key() const { return fil::to_string(justification); }
};

struct AskQuestion {
  Goal goal;
  std::string text;
  std::string expected_sort;
};
struct Suggest {
  Goal goal;
  fil::Bindings binding;
  std::string text;
};
struct Inform {
  std::vector<solver::SolverBinding> results;
  std::string text;
};
struct Clarify {
  std::string reason;
  std::string text;
};
using SystemAction = std::variant<AskQuestion, Suggest, Inform, Clarify>;

// "ask", "suggest", "inform" or "clarify".
std::string action_kind(const SystemAction& a);
const std::string& action_text(const SystemAction& a);

struct Focus {
  drs::LambdaDRS query;
  std::string referent;  // main referent of the query
  std::string target;    // defined concept the referent should instantiate
  fil::Formula target_formula = fil::Formula::truth();
  std::set<std::string> asked;  // goal keys already asked for this focus
};

struct TurnRecord {
  int turn = 0;
  std::string speaker;  // "user" or "system"
  std::string act;
  std::string text;
  bool operator==(const TurnRecord&) const = default;
};

struct DialogState {
  fil::PartialInterpretation shared;
  std::vector<Goal> agenda;
  std::optional<Focus> focus;
  std::vector<TurnRecord> history;
  std::string user_const = "u";
  int turn = 0;
  std::optional<Suggest> pending_suggestion;
  std::string last_drs_box;

  std::vector<Goal> open_goals() const;
};

// Loaded domain plus application facts and the solver backend. Immutable
// after construction; one engine serves any number of sessions.
class Engine {
 public:
  // Without a solver, a TimetableSolver over facts is used.
  Engine(Domain domain, dl::FactBase facts, std::shared_ptr<const solver::ProblemSolver> solver = nullptr);

  const dl::Terminology& terminology() const { return domain_.terminology; }
  const sem::Lexicon& lexicon() const { return domain_.lexicon; }
  // Application facts merged with the lexicon's name facts.
  const dl::FactBase& knowledge() const { return knowledge_; }
  const std::set<std::string>& user_rel() const { return user_rel_; }
  const solver::ProblemSolver& problem_solver() const { return *solver_; }

  // Fresh state: the user constant is a User, and the concept assertions of
  // the knowledge are shared from the start.
  DialogState new_state(const std::string& user_const = "u") const;

 private:
  Domain domain_;
  dl::FactBase knowledge_;
  std::shared_ptr<const solver::ProblemSolver> solver_;
  std::set<std::string> user_rel_;
};

struct IonicSite {
  fil::Formula node;
  fil::SortMap sorts;  // sorts of the enclosing quantified variables
};

// Ionic subformulas in traversal order.
std::vector<IonicSite> ionic_sites(const fil::Formula& f);

std::vector<Goal> extract_goals(const fil::Formula& f, const fil::PartialInterpretation& shared,
                                const std::set<std::string>& user_rel);

struct Question {
  std::string text;
  std::string expected_sort;
};
Question generate_question(const Goal& g, const dl::Terminology& t);

// Most specific defined concept whose unfolded conjuncts hold for the
// skolemized referent, conjuncts mentioning user-relation roles excepted
// (those are what the dialog will establish). Specificity is the number of
// unfolded conjuncts; ties go to the earlier definition.
std::optional<std::string> infer_target(const drs::DRS& d, const std::string& referent, const Engine& e);

// Skolemized copy of kb extended with the DRS conditions; variables become
// constants prefixed with '_'.
dl::FactBase skolemize(const drs::DRS& d, const dl::FactBase& kb);

// Translation of the unfolded target applied to the referent, with
// user-sorted existentials bound to the session user.
fil::Formula focus_formula(const std::string& target, const std::string& referent, const drs::LambdaDRS& query,
                           const Engine& e, const std::string& user_const);

// Query for the solver: the non-user role atoms of the focus DRS plus role
// atoms of the target whose variables were bound by concluded ionics.
solver::ConjunctiveQuery build_solver_query(const Focus& f, const fil::PartialInterpretation& shared,
                                            const Engine& e);

// Binds an open goal from an inform DRS. Returns nullopt when no condition
// matches an open goal. Throws SortMismatch or InconsistentExtension.
std::optional<DialogState> bind_answer(const drs::DRS& d, const DialogState& state, const Engine& e);

// Never throws for user input: parse and binding errors become Clarify.
std::pair<DialogState, SystemAction> interpret_turn(const std::string& text, const DialogState& state,
                                                    const Engine& e);

// "<turn>\t<speaker>\t<act>\t<text>" lines.
std::string render_transcript(const std::vector<TurnRecord>& history);

}  // namespace dialogm::dialog
