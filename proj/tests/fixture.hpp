#pragma once

// The bundled train domain and timetable.

#include <memory>
#include <string>

#include "dialogm/dialog.hpp"
#include "dialogm/domain.hpp"
#include "dialogm/solver.hpp"

namespace fixture {

inline std::string data_path(const std::string& name) { return std::string(DIALOGM_DATA_DIR) + "/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(DIALOGM_GOLDEN_DIR) + "/" + name; }

inline const dialogm::Domain& domain() {
  static const dialogm::Domain d = dialogm::parse_domain(dialogm::read_file(data_path("train.domain")));
  return d;
}

inline const dialogm::dl::FactBase& facts() {
  static const dialogm::dl::FactBase kb =
      dialogm::solver::load_facts(dialogm::read_file(data_path("timetable.facts")), &domain().terminology);
  return kb;
}

// Facts plus the lexicon's name facts.
inline const dialogm::dl::FactBase& knowledge() {
  static const dialogm::dl::FactBase kb = facts().merged(domain().lexicon.name_facts());
  return kb;
}

inline const dialogm::dialog::Engine& engine() {
  static const dialogm::dialog::Engine e(domain(), facts());
  return e;
}

}  // namespace fixture
