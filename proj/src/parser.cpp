#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sctcheck/syntax.hpp"

namespace sctcheck {

ParseError::ParseError(ParseErrorKind kind, int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

void InfixTable::add(const std::string& op, const std::string& symbol) {
  op_to_symbol[op] = symbol;
  symbol_to_op.emplace(symbol, op);
}

InfixTable infix_table(const std::vector<Declaration>& decls) {
  InfixTable table;
  for (const auto& d : decls)
    if (const auto* infix = std::get_if<InfixDecl>(&d)) table.add(infix->op, infix->symbol);
  return table;
}

namespace {

enum class Tok {
  Ident,
  String,
  Op,
  Arrow,
  RuleArrow,
  Forall,
  Lambda,
  LParen,
  RParen,
  Colon,
  Assign,
  Comma,
  Dot,
  Underscore,
  KwType,
  KwSymbol,
  KwRule,
  KwInfix,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

constexpr std::string_view kOpChars = "+-*/<>=^&|@%~?#";

bool is_op_char(char c) { return kOpChars.find(c) != std::string_view::npos; }

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        return;
      }
    }
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
        ++col_;
      }
      ++pos_;
    }
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  Token make(Tok kind, std::size_t len, int line, int col) {
    Token t{kind, std::string(text_.substr(pos_, len)), line, col};
    advance(len);
    return t;
  }

  Token next() {
    int line = line_;
    int col = col_;
    char c = text_[pos_];
    if (starts_with("→")) return make(Tok::Arrow, std::string_view("→").size(), line, col);
    if (starts_with("∀")) return make(Tok::Forall, std::string_view("∀").size(), line, col);
    if (starts_with("λ")) return make(Tok::Lambda, std::string_view("λ").size(), line, col);
    switch (c) {
      case '(':
        return make(Tok::LParen, 1, line, col);
      case ')':
        return make(Tok::RParen, 1, line, col);
      case ',':
        return make(Tok::Comma, 1, line, col);
      case '.':
        return make(Tok::Dot, 1, line, col);
      case '!':
        return make(Tok::Forall, 1, line, col);
      case '\\':
        return make(Tok::Lambda, 1, line, col);
      case ':':
        if (starts_with(":=")) return make(Tok::Assign, 2, line, col);
        return make(Tok::Colon, 1, line, col);
      case '"': {
        std::size_t end = text_.find('"', pos_ + 1);
        if (end == std::string_view::npos || text_.substr(pos_, end - pos_).find('\n') != std::string_view::npos)
          throw ParseError(ParseErrorKind::Lexical, line, col, "unterminated string");
        Token t{Tok::String, std::string(text_.substr(pos_ + 1, end - pos_ - 1)), line, col};
        advance(end - pos_ + 1);
        return t;
      }
      default:
        break;
    }
    if (is_op_char(c)) {
      std::size_t len = 0;
      while (pos_ + len < text_.size() && is_op_char(text_[pos_ + len])) ++len;
      std::string_view op = text_.substr(pos_, len);
      if (op == "->") return make(Tok::Arrow, len, line, col);
      if (op == "-->") return make(Tok::RuleArrow, len, line, col);
      return make(Tok::Op, len, line, col);
    }
    if (is_ident_char(c)) {
      std::size_t len = 0;
      while (pos_ + len < text_.size() && is_ident_char(text_[pos_ + len])) ++len;
      std::string_view word = text_.substr(pos_, len);
      if (word == "_") return make(Tok::Underscore, len, line, col);
      if (word.front() == '_')
        throw ParseError(ParseErrorKind::Lexical, line, col,
                         "identifiers may not start with '_': " + std::string(word));
      if (word == "TYPE") return make(Tok::KwType, len, line, col);
      if (word == "KIND")
        throw ParseError(ParseErrorKind::Lexical, line, col, "KIND is not writable");
      if (word == "symbol") return make(Tok::KwSymbol, len, line, col);
      if (word == "rule") return make(Tok::KwRule, len, line, col);
      if (word == "infix") return make(Tok::KwInfix, len, line, col);
      return make(Tok::Ident, len, line, col);
    }
    throw ParseError(ParseErrorKind::Lexical, line, col,
                     std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::String: return "string";
    case Tok::Op: return "operator";
    case Tok::Arrow: return "'->'";
    case Tok::RuleArrow: return "'-->'";
    case Tok::Forall: return "'!'";
    case Tok::Lambda: return "'\\'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "':='";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Underscore: return "'_'";
    case Tok::KwType: return "TYPE";
    case Tok::KwSymbol: return "'symbol'";
    case Tok::KwRule: return "'rule'";
    case Tok::KwInfix: return "'infix'";
    case Tok::End: return "end of input";
  }
  return "token";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  std::vector<Declaration> run() {
    std::vector<Declaration> out;
    while (peek().kind != Tok::End) out.push_back(declaration());
    return out;
  }

 private:
  enum class Mode { Type, Lhs, Rhs };

  struct Binding {
    std::string source;
    std::string actual;
  };

  const Token& peek() const { return tokens_[idx_]; }
  const Token& take() { return tokens_[idx_++]; }

  [[noreturn]] void fail(ParseErrorKind kind, const Token& at, const std::string& message) const {
    throw ParseError(kind, at.line, at.column, message);
  }

  const Token& expect(Tok kind) {
    if (peek().kind != kind)
      fail(ParseErrorKind::Syntax, peek(),
           std::string("expected ") + describe(kind) + ", found " + describe(peek().kind));
    return take();
  }

  Declaration declaration() {
    const Token& start = peek();
    switch (start.kind) {
      case Tok::KwSymbol: {
        take();
        std::string name = expect(Tok::Ident).text;
        expect(Tok::Colon);
        mode_ = Mode::Type;
        Term type = term();
        expect(Tok::Dot);
        symbols_.insert(name);
        return SymbolDecl{name, type, start.line};
      }
      case Tok::KwRule:
        take();
        return rule(start);
      case Tok::KwInfix: {
        take();
        const Token& op = expect(Tok::String);
        if (op.text.empty() || !std::all_of(op.text.begin(), op.text.end(), is_op_char) ||
            op.text == "->" || op.text == "-->")
          fail(ParseErrorKind::Syntax, op, "invalid infix operator \"" + op.text + "\"");
        expect(Tok::Assign);
        const Token& target = expect(Tok::Ident);
        if (!symbols_.count(target.text))
          fail(ParseErrorKind::UnknownIdentifier, target, "unknown symbol " + target.text);
        expect(Tok::Dot);
        infix_.add(op.text, target.text);
        return InfixDecl{op.text, target.text, start.line};
      }
      default:
        fail(ParseErrorKind::Syntax, start,
             std::string("expected a declaration, found ") + describe(start.kind));
    }
  }

  Declaration rule(const Token& start) {
    pattern_vars_.clear();
    wildcards_ = 0;
    mode_ = Mode::Lhs;
    const Token& lhs_start = peek();
    Term lhs = term();
    if (head_symbol(lhs).empty())
      fail(ParseErrorKind::LhsNotSymbolHeaded, lhs_start, "rule left-hand side is not headed by a symbol");
    expect(Tok::RuleArrow);
    mode_ = Mode::Rhs;
    const Token& rhs_start = peek();
    Term rhs = term();
    expect(Tok::Dot);
    for (const auto& v : rhs.free_vars())
      if (!lhs.has_free(v))
        fail(ParseErrorKind::FreeVariableEscape, rhs_start, "variable " + v + " does not occur in the lhs");
    return RuleDecl{lhs, rhs, start.line};
  }

  bool bound(const std::string& name) const {
    return std::any_of(scope_.begin(), scope_.end(),
                       [&](const Binding& b) { return b.source == name || b.actual == name; });
  }

  std::string declare_binder(const Token& tok) {
    if (tok.kind == Tok::Underscore) return "_";
    const std::string& name = tok.text;
    if (symbols_.count(name))
      fail(ParseErrorKind::Shadowing, tok, "binder " + name + " shadows a declared symbol");
    if (mode_ != Mode::Type && (pattern_vars_.count(name) || bound(name))) {
      std::set<std::string> avoid(symbols_.begin(), symbols_.end());
      avoid.insert(pattern_vars_.begin(), pattern_vars_.end());
      for (const auto& b : scope_) {
        avoid.insert(b.source);
        avoid.insert(b.actual);
      }
      return fresh_name(name, avoid);
    }
    return name;
  }

  struct BinderGroup {
    std::vector<std::string> names;
    Term domain;
  };

  // binders ::= binder ":" term | ("(" binder+ ":" term ")")+
  // Each binder enters scope as soon as its group is read.
  std::vector<BinderGroup> binders() {
    std::vector<BinderGroup> groups;
    auto binder_token = [&]() -> const Token& {
      if (peek().kind != Tok::Ident && peek().kind != Tok::Underscore)
        fail(ParseErrorKind::Syntax, peek(), std::string("expected a binder, found ") + describe(peek().kind));
      return take();
    };
    if (peek().kind != Tok::LParen) {
      const Token& tok = binder_token();
      expect(Tok::Colon);
      Term domain = term();
      std::string actual = declare_binder(tok);
      scope_.push_back({tok.text, actual});
      groups.push_back({{actual}, domain});
      return groups;
    }
    while (peek().kind == Tok::LParen) {
      take();
      std::vector<const Token*> toks;
      do {
        toks.push_back(&binder_token());
      } while (peek().kind != Tok::Colon);
      expect(Tok::Colon);
      Term domain = term();
      expect(Tok::RParen);
      BinderGroup group{{}, domain};
      for (const Token* tok : toks) {
        std::string actual = declare_binder(*tok);
        scope_.push_back({tok->kind == Tok::Underscore ? "_" : tok->text, actual});
        group.names.push_back(actual);
      }
      groups.push_back(std::move(group));
    }
    return groups;
  }

  Term term() {
    if (peek().kind == Tok::Forall || peek().kind == Tok::Lambda) {
      bool is_prod = take().kind == Tok::Forall;
      std::size_t depth = scope_.size();
      auto groups = binders();
      expect(Tok::Comma);
      Term body = term();
      scope_.resize(depth);
      for (auto g = groups.rbegin(); g != groups.rend(); ++g)
        for (auto n = g->names.rbegin(); n != g->names.rend(); ++n)
          body = is_prod ? Term::prod(*n, g->domain, body) : Term::abs(*n, g->domain, body);
      return body;
    }
    Term lhs = opterm();
    if (peek().kind == Tok::Arrow) {
      take();
      Term rhs = term();
      return Term::arrow(lhs, rhs);
    }
    return lhs;
  }

  Term opterm() {
    Term acc = appterm();
    while (peek().kind == Tok::Op) {
      const Token& op = take();
      auto it = infix_.op_to_symbol.find(op.text);
      if (it == infix_.op_to_symbol.end())
        fail(ParseErrorKind::Syntax, op, "undeclared operator " + op.text);
      Term rhs = appterm();
      acc = Term::app(Term::app(Term::sym(it->second), acc), rhs);
    }
    return acc;
  }

  bool starts_atom() const {
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::KwType:
      case Tok::Underscore:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  Term appterm() {
    if (!starts_atom())
      fail(ParseErrorKind::Syntax, peek(), std::string("expected a term, found ") + describe(peek().kind));
    Term acc = atom();
    while (starts_atom()) acc = Term::app(acc, atom());
    return acc;
  }

  Term atom() {
    const Token& tok = take();
    switch (tok.kind) {
      case Tok::KwType:
        return Term::type();
      case Tok::LParen: {
        Term inner = term();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::Underscore:
        if (mode_ == Mode::Rhs) fail(ParseErrorKind::WildcardInRhs, tok, "'_' in a rule right-hand side");
        if (mode_ == Mode::Type) fail(ParseErrorKind::Syntax, tok, "'_' outside a rule left-hand side");
        return Term::var("_" + std::to_string(++wildcards_));
      case Tok::Ident:
        return identifier(tok);
      default:
        fail(ParseErrorKind::Syntax, tok, std::string("expected a term, found ") + describe(tok.kind));
    }
  }

  Term identifier(const Token& tok) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->source == tok.text) return Term::var(it->actual);
    if (symbols_.count(tok.text)) return Term::sym(tok.text);
    switch (mode_) {
      case Mode::Lhs:
        pattern_vars_.insert(tok.text);
        return Term::var(tok.text);
      case Mode::Rhs:
        if (pattern_vars_.count(tok.text)) return Term::var(tok.text);
        fail(ParseErrorKind::FreeVariableEscape, tok, "variable " + tok.text + " does not occur in the lhs");
      case Mode::Type:
        break;
    }
    fail(ParseErrorKind::UnknownIdentifier, tok, "unknown identifier " + tok.text);
  }

  std::vector<Token> tokens_;
  std::size_t idx_ = 0;
  std::set<std::string> symbols_;
  InfixTable infix_;
  Mode mode_ = Mode::Type;
  std::set<std::string> pattern_vars_;
  int wildcards_ = 0;
  std::vector<Binding> scope_;
};

}  // namespace

std::vector<Declaration> parse_file(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

}  // namespace sctcheck
