// Python module _dialogm. Results cross the boundary as JSON text; the
// dialogm package decodes them.

#include <memory>
#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dialogm/dialog.hpp"
#include "dialogm/domain.hpp"
#include "dialogm/error.hpp"
#include "dialogm/service.hpp"
#include "dialogm/solver.hpp"
#include "dialogm/tau.hpp"

namespace py = pybind11;
using namespace dialogm;

namespace {

class PyEngine {
 public:
  PyEngine(const std::string& domain_source, const std::string& facts_source) {
    Domain d = parse_domain(domain_source);
    dl::FactBase facts = solver::load_facts(facts_source, &d.terminology);
    store_ = std::make_unique<service::SessionStore>(std::make_shared<const dialog::Engine>(std::move(d), facts));
  }

  std::string create_session() { return store_->create_session(); }

  std::string say(const std::string& id, const std::string& text) {
    return service::to_json(store_->handle_utterance(id, text)).dump();
  }

  std::string state(const std::string& id) const {
    return service::state_json(store_->snapshot(id), store_->engine()).dump();
  }

  std::string transcript(const std::string& id) const {
    return dialog::render_transcript(store_->snapshot(id).history);
  }

 private:
  std::unique_ptr<service::SessionStore> store_;
};

std::string translate(const std::string& domain_source) {
  return tau::render_theory(tau::translate_terminology(load_terminology(domain_source)));
}

std::string query(const std::string& facts_source, const std::string& text,
                  const std::optional<std::string>& domain_source) {
  std::optional<dl::Terminology> t;
  if (domain_source) t = load_terminology(*domain_source);
  const dl::FactBase facts = solver::load_facts(facts_source, t ? &*t : nullptr);
  const auto q = solver::parse_query(text, facts);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : solver::eval_query(q, facts)) rows.push_back(row);
  return rows.dump();
}

}  // namespace

PYBIND11_MODULE(_dialogm, m) {
  m.doc() = "Dialog manager core";

  static py::handle error = py::exception<Error>(m, "Error").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // args are (code, message)
      PyErr_SetObject(error.ptr(), py::make_tuple(e.code(), e.what()).ptr());
    }
  });

  py::class_<PyEngine>(m, "Engine")
      .def(py::init<const std::string&, const std::string&>(), py::arg("domain_source"), py::arg("facts_source"))
      .def("create_session", &PyEngine::create_session)
      .def("say", &PyEngine::say, py::arg("session"), py::arg("text"), py::call_guard<py::gil_scoped_release>())
      .def("state", &PyEngine::state, py::arg("session"))
      .def("transcript", &PyEngine::transcript, py::arg("session"));

  m.def("translate", &translate, py::arg("domain_source"));
  m.def("query", &query, py::arg("facts_source"), py::arg("query"), py::arg("domain_source") = std::nullopt);
}
