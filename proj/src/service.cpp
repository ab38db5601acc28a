#include "dialogm/service.hpp"

#include <cstdlib>
#include <iostream>

#include <httplib.h>

#include "dialogm/error.hpp"

namespace dialogm::service {

using nlohmann::json;

namespace {

std::vector<GoalView> goal_views(const dialog::DialogState& s) {
  std::vector<GoalView> out;
  for (const auto& g : s.open_goals())
    for (const auto& [var, sort] : g.var_sorts) out.push_back({g.origin_role, var, sort});
  return out;
}

json atoms_json(const std::map<std::string, std::set<fil::Tuple>>& m) {
  json out = json::array();
  for (const auto& [pred, tuples] : m)
    for (const auto& t : tuples) {
      std::string s = pred + "(";
      for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + t[k];
      out.push_back(s + ")");
    }
  return out;
}

void log_turn(const dialog::DialogState& s) {
  const LogLevel level = log_level_from_env();
  if (level == LogLevel::Off || s.history.size() < 2) return;
  std::vector<dialog::TurnRecord> last(s.history.end() - 2, s.history.end());
  std::cerr << dialog::render_transcript(last);
  if (level == LogLevel::Debug && !s.last_drs_box.empty()) std::cerr << s.last_drs_box;
}

json error_body(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

json to_json(const TurnResponse& r) {
  json goals = json::array();
  for (const auto& g : r.open_goals) goals.push_back({{"role", g.role}, {"var", g.var}, {"sort", g.sort}});
  return {{"act", r.act}, {"text", r.text}, {"userAct", r.user_act}, {"openGoals", goals}, {"drsBox", r.drs_box}};
}

json state_json(const dialog::DialogState& s, const dialog::Engine& e) {
  json agenda = json::array();
  for (const auto& g : s.agenda)
    agenda.push_back({{"justification", fil::to_string(g.justification)},
                      {"role", g.origin_role},
                      {"status", dialog::to_string(g.status)},
                      {"question", dialog::generate_question(g, e.terminology()).text}});
  json history = json::array();
  for (const auto& r : s.history)
    history.push_back({{"turn", r.turn}, {"speaker", r.speaker}, {"act", r.act}, {"text", r.text}});
  json focus = nullptr;
  if (s.focus)
    focus = {{"referent", s.focus->referent},
             {"target", s.focus->target},
             {"formula", fil::to_string(s.focus->target_formula)}};
  return {{"turn", s.turn},
          {"user", s.user_const},
          {"focus", focus},
          {"agenda", agenda},
          {"shared", {{"plus", atoms_json(s.shared.plus())}, {"minus", atoms_json(s.shared.minus())}}},
          {"history", history},
          {"drsBox", s.last_drs_box}};
}

std::string SessionStore::create_session() {
  auto session = std::make_shared<Session>();
  session->state = engine_->new_state();
  std::lock_guard lock(mu_);
  std::string id = "s" + std::to_string(next_id_++);
  sessions_.emplace(id, std::move(session));
  return id;
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw UnknownSession(id);
  return it->second;
}

TurnResponse SessionStore::handle_utterance(const std::string& id, const std::string& text) {
  auto session = find(id);
  std::lock_guard lock(session->mu);
  auto [next, action] = dialog::interpret_turn(text, session->state, *engine_);
  session->state = std::move(next);
  const dialog::DialogState& s = session->state;
  log_turn(s);

  TurnResponse r;
  r.act = dialog::action_kind(action);
  r.text = dialog::action_text(action);
  r.user_act = s.history[s.history.size() - 2].act;
  r.open_goals = goal_views(s);
  r.drs_box = s.last_drs_box;
  return r;
}

dialog::DialogState SessionStore::snapshot(const std::string& id) const {
  auto session = find(id);
  std::lock_guard lock(session->mu);
  return session->state;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

void register_routes(httplib::Server& server, SessionStore& store) {
  auto reply = [](httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  };

  server.Post("/session", [&store, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, 201, {{"sessionId", store.create_session()}});
  });

  server.Post(R"(/session/([^/]+)/utterance)", [&store, reply](const httplib::Request& req, httplib::Response& res) {
    const json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("text") || !body["text"].is_string())
      return reply(res, 400, error_body("BadRequest", "expected a JSON object with a string field 'text'"));
    try {
      reply(res, 200, to_json(store.handle_utterance(req.matches[1], body["text"].get<std::string>())));
    } catch (const UnknownSession& e) {
      reply(res, 404, error_body(e.code(), e.what()));
    }
  });

  server.Get(R"(/session/([^/]+)/state)", [&store, reply](const httplib::Request& req, httplib::Response& res) {
    try {
      reply(res, 200, state_json(store.snapshot(req.matches[1]), store.engine()));
    } catch (const UnknownSession& e) {
      reply(res, 404, error_body(e.code(), e.what()));
    }
  });
}

int repl_loop(std::istream& in, std::ostream& out, const dialog::Engine& engine, bool interactive,
              std::ostream* transcript) {
  dialog::DialogState state = engine.new_state();
  std::string line;
  for (;;) {
    if (interactive) out << "user> " << std::flush;
    if (!std::getline(in, line)) break;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!interactive) out << "user> " << line << '\n';
    if (line == ":quit") break;
    if (line == ":state") {
      out << state_json(state, engine).dump(2) << '\n';
      continue;
    }
    auto [next, action] = dialog::interpret_turn(line, state, engine);
    state = std::move(next);
    log_turn(state);
    out << "system[" << dialog::action_kind(action) << "]> " << dialog::action_text(action) << '\n';
  }
  if (transcript) *transcript << dialog::render_transcript(state.history);
  return 0;
}

LogLevel log_level_from_env() {
  const char* v = std::getenv("DIALOG_LOG");
  if (!v) return LogLevel::Off;
  const std::string s(v);
  if (s == "transcript") return LogLevel::Transcript;
  if (s == "debug") return LogLevel::Debug;
  return LogLevel::Off;
}

}  // namespace dialogm::service
