// dialog: command-line front end.
//
//   dialog repl DOMAIN FACTS [--transcript FILE]
//   dialog serve DOMAIN FACTS [--host H] [--port P]
//   dialog translate DOMAIN
//   dialog query FACTS QUERY [--domain DOMAIN]

#include <unistd.h>

#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <httplib.h>

#include "dialogm/dialog.hpp"
#include "dialogm/domain.hpp"
#include "dialogm/error.hpp"
#include "dialogm/service.hpp"
#include "dialogm/solver.hpp"
#include "dialogm/tau.hpp"

namespace {

constexpr int kLoadError = 2;

std::shared_ptr<dialogm::dialog::Engine> load_engine(const std::string& domain_path, const std::string& facts_path) {
  dialogm::Domain domain = dialogm::parse_domain(dialogm::read_file(domain_path));
  dialogm::dl::FactBase facts = dialogm::solver::load_facts(dialogm::read_file(facts_path), &domain.terminology);
  return std::make_shared<dialogm::dialog::Engine>(std::move(domain), std::move(facts));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Domain-configurable dialog manager"};
  app.require_subcommand(1);

  std::string domain_path, facts_path, transcript_path, query_text, host = "127.0.0.1";
  int port = 8080;

  auto* repl = app.add_subcommand("repl", "Interactive dialog on stdin/stdout");
  repl->add_option("domain", domain_path, "Domain description file")->required();
  repl->add_option("facts", facts_path, "Application facts file")->required();
  repl->add_option("--transcript", transcript_path, "Write the transcript here on exit");

  auto* serve = app.add_subcommand("serve", "HTTP JSON API");
  serve->add_option("domain", domain_path, "Domain description file")->required();
  serve->add_option("facts", facts_path, "Application facts file")->required();
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));

  auto* translate = app.add_subcommand("translate", "Print the FIL theory of a terminology");
  translate->add_option("domain", domain_path, "Domain description file")->required();

  auto* query = app.add_subcommand("query", "Evaluate a conjunctive query against facts");
  query->add_option("facts", facts_path, "Application facts file")->required();
  query->add_option("query", query_text, "e.g. \"At(t,x) & From(t,Milan)\"")->required();
  query->add_option("--domain", domain_path, "Check predicates against this domain");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*repl) {
      auto engine = load_engine(domain_path, facts_path);
      std::ofstream transcript;
      if (!transcript_path.empty()) {
        transcript.open(transcript_path);
        if (!transcript) throw dialogm::Error("FileNotFound", "cannot write " + transcript_path);
      }
      return dialogm::service::repl_loop(std::cin, std::cout, *engine, isatty(STDIN_FILENO) != 0,
                                         transcript_path.empty() ? nullptr : &transcript);
    }
    if (*serve) {
      auto engine = load_engine(domain_path, facts_path);
      dialogm::service::SessionStore store(engine);
      httplib::Server server;
      dialogm::service::register_routes(server, store);
      std::cerr << "listening on " << host << ':' << port << '\n';
      if (!server.listen(host, port)) {
        std::cerr << "error: cannot listen on " << host << ':' << port << '\n';
        return 1;
      }
      return 0;
    }
    if (*translate) {
      const auto t = dialogm::load_terminology(dialogm::read_file(domain_path));
      std::cout << dialogm::tau::render_theory(dialogm::tau::translate_terminology(t));
      return 0;
    }
    if (*query) {
      std::optional<dialogm::dl::Terminology> t;
      if (!domain_path.empty()) t = dialogm::load_terminology(dialogm::read_file(domain_path));
      const auto facts = dialogm::solver::load_facts(dialogm::read_file(facts_path), t ? &*t : nullptr);
      const auto q = dialogm::solver::parse_query(query_text, facts);
      std::cout << dialogm::solver::format_bindings(q, dialogm::solver::eval_query(q, facts));
      return 0;
    }
  } catch (const dialogm::Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << '\n';
    return kLoadError;
  }
  return 0;
}
