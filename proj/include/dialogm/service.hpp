#pragma once

// Session handling shared by the HTTP API and the REPL.

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "dialogm/dialog.hpp"

namespace httplib {
class Server;
}

namespace dialogm::service {

struct GoalView {
  std::string role;
  std::string var;
  std::string sort;
};

struct TurnResponse {
  std::string act;       // system act kind
  std::string text;
  std::string user_act;  // how the utterance was read
  std::vector<GoalView> open_goals;
  std::string drs_box;
};

nlohmann::json to_json(const TurnResponse& r);
nlohmann::json state_json(const dialog::DialogState& s, const dialog::Engine& e);

// Sessions are independent; turns on one session are serialized, turns on
// different sessions run concurrently.
class SessionStore {
 public:
  explicit SessionStore(std::shared_ptr<const dialog::Engine> engine) : engine_(std::move(engine)) {}

  std::string create_session();
  // Throws UnknownSession.
  TurnResponse handle_utterance(const std::string& id, const std::string& text);
  dialog::DialogState snapshot(const std::string& id) const;
  std::size_t size() const;
  const dialog::Engine& engine() const { return *engine_; }

 private:
  struct Session {
    std::mutex mu;
    dialog::DialogState state;
  };
  std::shared_ptr<Session> find(const std::string& id) const;

  std::shared_ptr<const dialog::Engine> engine_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  int next_id_ = 1;
};

// POST /session, POST /session/{id}/utterance, GET /session/{id}/state.
void register_routes(httplib::Server& server, SessionStore& store);

// Reads utterances from in until EOF or ":quit". ":state" dumps the agenda
// and shared knowledge. Interactive sessions get a "user> " prompt; piped
// input is echoed after it instead so the output reads as a dialog. The
// transcript stream, when given, receives the final transcript.
int repl_loop(std::istream& in, std::ostream& out, const dialog::Engine& engine, bool interactive,
              std::ostream* transcript = nullptr);

// "off" (default), "transcript" or "debug", from DIALOG_LOG.
enum class LogLevel { Off, Transcript, Debug };
LogLevel log_level_from_env();

}  // namespace dialogm::service
