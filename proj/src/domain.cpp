#include "dialogm/domain.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "dialogm/error.hpp"

namespace dialogm {

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_identifier(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return true;
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    if (line[k] == '"') quoted = !quoted;
    if (line[k] == '#' && !quoted) return line.substr(0, k);
  }
  return line;
}

class ExprParser {
 public:
  ExprParser(const std::string& text, int line) : line_(line) {
    for (std::size_t k = 0; k < text.size();) {
      const char c = text[k];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++k;
      } else if (ident_char(c)) {
        std::size_t e = k;
        while (e < text.size() && ident_char(text[e])) ++e;
        toks_.push_back(text.substr(k, e - k));
        k = e;
      } else if (c == '(' || c == ')' || c == '.') {
        toks_.emplace_back(1, c);
        ++k;
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
  }

  dl::ConceptExpr parse_all() {
    dl::ConceptExpr c = expr();
    if (pos_ != toks_.size()) fail("unexpected '" + toks_[pos_] + "'");
    return c;
  }

  // Splits "A x B" at the top-level token x.
  std::pair<dl::ConceptExpr, dl::ConceptExpr> parse_signature() {
    dl::ConceptExpr dom = expr();
    expect("x");
    dl::ConceptExpr ran = expr();
    if (pos_ != toks_.size()) fail("unexpected '" + toks_[pos_] + "'");
    return {std::move(dom), std::move(ran)};
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(line_, msg); }

  bool at(const std::string& s) const { return pos_ < toks_.size() && toks_[pos_] == s; }

  void expect(const std::string& s) {
    if (!at(s)) fail("expected '" + s + "'");
    ++pos_;
  }

  std::string name() {
    if (pos_ >= toks_.size() || !is_identifier(toks_[pos_])) fail("expected a name");
    return toks_[pos_++];
  }

  dl::ConceptExpr expr() {
    std::vector<dl::ConceptExpr> parts{conj()};
    while (at("or")) {
      ++pos_;
      parts.push_back(conj());
    }
    return dl::ConceptExpr::disj(std::move(parts));
  }

  dl::ConceptExpr conj() {
    std::vector<dl::ConceptExpr> parts{unary()};
    while (at("and")) {
      ++pos_;
      parts.push_back(unary());
    }
    return dl::ConceptExpr::conj(std::move(parts));
  }

  dl::ConceptExpr unary() {
    if (at("exists") || at("forall")) {
      const bool ex = toks_[pos_++] == "exists";
      dl::RoleExpr r = role();
      expect(".");
      dl::ConceptExpr filler = unary();
      return ex ? dl::ConceptExpr::exists(std::move(r), std::move(filler))
                : dl::ConceptExpr::forall(std::move(r), std::move(filler));
    }
    if (at("top")) {
      ++pos_;
      return dl::ConceptExpr::top();
    }
    if (at("(")) {
      ++pos_;
      dl::ConceptExpr c = expr();
      expect(")");
      return c;
    }
    const std::string n = name();
    if (n == "and" || n == "or" || n == "x") fail("unexpected '" + n + "'");
    return dl::ConceptExpr::atomic(n);
  }

  dl::RoleExpr role() {
    if (at("inv")) {
      ++pos_;
      expect("(");
      dl::RoleExpr r = role();
      expect(")");
      return dl::RoleExpr::inverse(std::move(r));
    }
    if (at("(")) {
      ++pos_;
      std::vector<dl::RoleExpr> members{role()};
      while (at("or")) {
        ++pos_;
        members.push_back(role());
      }
      expect(")");
      return dl::RoleExpr::union_of(std::move(members));
    }
    return dl::RoleExpr::atomic(name());
  }

  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
  int line_;
};

struct LexLine {
  int line;
  std::string surface;
  sem::LexEntry entry;
};

}  // namespace

dl::ConceptExpr parse_concept(const std::string& text) { return ExprParser(text, 0).parse_all(); }

Domain parse_domain(const std::string& source) {
  Domain d;
  dl::Terminology& t = d.terminology;
  std::vector<LexLine> lex_lines;
  std::set<std::string> declared;

  auto declare = [&](const std::string& n, int line) {
    if (!is_identifier(n)) throw SyntaxError(line, "invalid name '" + n + "'");
    if (!declared.insert(n).second) throw SyntaxError(line, "'" + n + "' declared twice");
  };

  std::istringstream in(source);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(strip_comment(raw));
    if (text.empty()) continue;
    const std::vector<std::string> w = split_words(text);
    const std::string& kw = w[0];
    const std::string rest = trim(text.substr(kw.size()));

    if (kw == "concept") {
      if (w.size() != 2) throw SyntaxError(line, "expected: concept <Name>");
      declare(w[1], line);
      t.primitive_concepts.push_back(w[1]);
    } else if (kw == "user-concept") {
      if (w.size() != 2) throw SyntaxError(line, "expected: user-concept <Name>");
      if (!t.user_concept.empty()) throw SyntaxError(line, "user concept already designated");
      declare(w[1], line);
      t.user_concept = w[1];
    } else if (kw == "role") {
      const auto colon = rest.find(':');
      if (colon == std::string::npos) throw SyntaxError(line, "expected: role <Name> : <Domain> x <Range>");
      const std::string n = trim(rest.substr(0, colon));
      declare(n, line);
      auto [dom, ran] = ExprParser(rest.substr(colon + 1), line).parse_signature();
      t.roles.push_back({n, std::move(dom), std::move(ran)});
    } else if (kw == "define") {
      const auto eq = rest.find('=');
      if (eq == std::string::npos) throw SyntaxError(line, "expected: define <Name> = <expression>");
      const std::string n = trim(rest.substr(0, eq));
      declare(n, line);
      t.definitions.emplace_back(n, ExprParser(rest.substr(eq + 1), line).parse_all());
    } else if (kw == "synonym") {
      if (w.size() != 4 || w[2] != "=>") throw SyntaxError(line, "expected: synonym <surface> => <Name>");
      t.synonyms.emplace_back(w[1], w[3]);
    } else if (kw == "question") {
      const auto eq = rest.find('=');
      const auto q1 = rest.find('"');
      const auto q2 = rest.rfind('"');
      if (eq == std::string::npos || q1 == std::string::npos || q2 == q1 || q1 < eq)
        throw SyntaxError(line, "expected: question <Role> = \"<template>\"");
      const std::string role = trim(rest.substr(0, eq));
      if (!trim(rest.substr(q2 + 1)).empty()) throw SyntaxError(line, "text after template");
      t.question_templates[role] = rest.substr(q1 + 1, q2 - q1 - 1);
    } else if (kw == "lex") {
      if (w.size() < 5 || w[3] != "=>") throw SyntaxError(line, "expected: lex <kind> <surface> => ...");
      const std::string& kind = w[1];
      const std::string& surface = w[2];
      if (kind == "verb" || kind == "noun") {
        if (w.size() != 6 || w[4] != "concept") throw SyntaxError(line, "expected: => concept <Name>");
        lex_lines.push_back({line, surface, sem::VerbConcept{w[5]}});
      } else if (kind == "prep") {
        if (w.size() < 6 || w[4] != "role") throw SyntaxError(line, "expected: => role <Name> restrict <expr>");
        dl::ConceptExpr restriction = dl::ConceptExpr::top();
        if (w.size() > 6) {
          if (w[6] != "restrict") throw SyntaxError(line, "expected 'restrict'");
          const auto at = text.find(" restrict ");
          restriction = ExprParser(text.substr(at + 10), line).parse_all();
        }
        lex_lines.push_back({line, surface, sem::PrepRole{w[5], std::move(restriction)}});
      } else if (kind == "name") {
        if (w.size() != 7 || w[5] != ":") throw SyntaxError(line, "expected: => <Constant> : <Concept>");
        lex_lines.push_back({line, surface, sem::ProperName{w[4], w[6], surface}});
      } else if (kind == "wh") {
        if (w.size() != 6 || w[4] != "sort") throw SyntaxError(line, "expected: => sort <Concept>");
        lex_lines.push_back({line, surface, sem::WhWord{w[5]}});
      } else if (kind == "answerprep") {
        if (w.size() != 6 || w[4] != "role") throw SyntaxError(line, "expected: => role <Name>");
        lex_lines.push_back({line, surface, sem::AnswerPrep{w[5]}});
      } else {
        throw SyntaxError(line, "unknown lexicon kind '" + kind + "'");
      }
    } else {
      throw SyntaxError(line, "unknown directive '" + kw + "'");
    }
  }

  dl::validate(t);
  for (auto& l : lex_lines) d.lexicon.add(l.surface, std::move(l.entry), t);
  return d;
}

dl::Terminology load_terminology(const std::string& source) { return parse_domain(source).terminology; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("FileNotFound", "file not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace dialogm
