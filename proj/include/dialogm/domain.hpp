#pragma once

// Line-oriented domain description files:
//
//   concept <Name>
//   role <Name> : <Domain> x <Range>
//   define <Name> = <concept expression>
//   synonym <surface> => <Name>
//   question <Role> = "<template with {var}>"
//   user-concept <Name>
//   lex verb|noun <surface> => concept <Name>
//   lex prep <surface> => role <Name> restrict <concept expression>
//   lex name <surface> => <Constant> : <Concept>
//   lex wh <surface> => sort <Concept>
//   lex answerprep <surface> => role <Name>
//
// Concept expressions use `and`, `or`, `exists <role>.`, `forall <role>.`,
// `inv(<role>)`, `top`, parentheses, and `(R or S)` for role unions.
// `#` starts a comment.

#include <string>

#include "dialogm/dl.hpp"
#include "dialogm/sem_parser.hpp"

namespace dialogm {

struct Domain {
  dl::Terminology terminology;
  sem::Lexicon lexicon;
};

// Throws SyntaxError(line), UndefinedName, CyclicTerminology,
// UnsatisfiableDefinition.
Domain parse_domain(const std::string& source);
dl::Terminology load_terminology(const std::string& source);

dl::ConceptExpr parse_concept(const std::string& text);

// Whole-file read; throws Error("FileNotFound") when missing.
std::string read_file(const std::string& path);

}  // namespace dialogm
