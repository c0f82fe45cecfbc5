#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sctcheck/term.hpp"

namespace sctcheck {

struct SymbolDecl {
  std::string name;
  Term type;
  int line = 0;
};

struct RuleDecl {
  Term lhs;
  Term rhs;
  int line = 0;
};

/// `infix "+" := plus.`
struct InfixDecl {
  std::string op;
  std::string symbol;
  int line = 0;
};

using Declaration = std::variant<SymbolDecl, RuleDecl, InfixDecl>;

/// Operator sugar: maps operator tokens to symbol names and back.
struct InfixTable {
  std::map<std::string, std::string, std::less<>> op_to_symbol;
  std::map<std::string, std::string, std::less<>> symbol_to_op;

  void add(const std::string& op, const std::string& symbol);
};

InfixTable infix_table(const std::vector<Declaration>& decls);

enum class ParseErrorKind {
  Lexical,
  Syntax,
  UnknownIdentifier,
  LhsNotSymbolHeaded,
  FreeVariableEscape,
  WildcardInRhs,
  Shadowing,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, int column, const std::string& message);

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ParseErrorKind kind_;
  int line_;
  int column_;
};

/// Parses a whole input file. Symbols must be declared before use; in a rule
/// lhs every identifier that is not a declared symbol is a pattern variable and
/// every `_` is a fresh one. Throws ParseError.
std::vector<Declaration> parse_file(std::string_view text);

/// Prints t with minimal parentheses. With an infix table, binary applications
/// of operator symbols are printed infix.
std::string print_term(const Term& t, const InfixTable* infix = nullptr);

std::string print_declaration(const Declaration& decl, const InfixTable* infix = nullptr);

/// Prints every declaration on its own line; parse_file reads the result back.
std::string print_file(const std::vector<Declaration>& decls);

}  // namespace sctcheck
