#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dialogm {

// Base of every error raised by the engine. code() is the stable
// machine-readable identifier used in CLI output and JSON error bodies.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, const std::string& detail)
      : Error("SyntaxError", "line " + std::to_string(line) + ": " + detail), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class UndefinedName : public Error {
 public:
  explicit UndefinedName(const std::string& name)
      : Error("UndefinedName", "undefined name '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class CyclicTerminology : public Error {
 public:
  explicit CyclicTerminology(std::vector<std::string> cycle)
      : Error("CyclicTerminology", "cyclic definition: " + join(cycle)), cycle_(std::move(cycle)) {}
  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  static std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
      if (!out.empty()) out += " -> ";
      out += n;
    }
    return out;
  }
  std::vector<std::string> cycle_;
};

class UnsatisfiableDefinition : public Error {
 public:
  explicit UnsatisfiableDefinition(const std::string& name)
      : Error("UnsatisfiableDefinition", "definition of '" + name + "' has no model"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& var)
      : Error("UnboundVariable", "unbound variable '" + var + "'") {}
};

class IonicInClassicalContext : public Error {
 public:
  IonicInClassicalContext()
      : Error("IonicInClassicalContext", "ionic formula cannot be evaluated classically") {}
};

class NestedIonic : public Error {
 public:
  NestedIonic() : Error("NestedIonic", "ionic formulas may not be nested") {}
};

class InconsistentExtension : public Error {
 public:
  explicit InconsistentExtension(const std::string& atom)
      : Error("InconsistentExtension", "'" + atom + "' is already assigned the opposite value") {}
};

class SortMismatch : public Error {
 public:
  SortMismatch(const std::string& constant, const std::string& sort)
      : Error("SortMismatch", "'" + constant + "' is not a " + sort), constant_(constant), sort_(sort) {}
  const std::string& constant() const noexcept { return constant_; }
  const std::string& expected_sort() const noexcept { return sort_; }

 private:
  std::string constant_;
  std::string sort_;
};

class UnknownLexeme : public Error {
 public:
  explicit UnknownLexeme(const std::string& token)
      : Error("UnknownLexeme", "unknown word '" + token + "'"), token_(token) {}
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

class AttachmentRejected : public Error {
 public:
  AttachmentRejected(const std::string& role, const std::string& object, const std::string& restriction)
      : Error("AttachmentRejected",
              "'" + object + "' cannot fill " + role + " (requires " + restriction + ")"),
        role_(role),
        object_(object) {}
  const std::string& role() const noexcept { return role_; }
  const std::string& object() const noexcept { return object_; }

 private:
  std::string role_;
  std::string object_;
};

class EmptyUtterance : public Error {
 public:
  EmptyUtterance() : Error("EmptyUtterance", "empty utterance") {}
};

class UnknownSession : public Error {
 public:
  explicit UnknownSession(const std::string& id)
      : Error("UnknownSession", "no session '" + id + "'") {}
};

}  // namespace dialogm
