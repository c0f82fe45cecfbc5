#include <string>

#include "sctcheck/syntax.hpp"

namespace sctcheck {

namespace {

// Precedence levels, loosest first.
enum Level { kTerm = 0, kOperand = 1, kApp = 2, kAtom = 3 };

class Printer {
 public:
  explicit Printer(const InfixTable* infix) : infix_(infix) {}

  std::string print(const Term& t, int level) {
    switch (t.kind()) {
      case TermKind::Sort:
        return t.sort_kind() == SortKind::Type ? "TYPE" : "KIND";
      case TermKind::Var:
        return is_wildcard_name(t.name()) ? "_" : t.name();
      case TermKind::Sym:
        return t.name();
      case TermKind::Prod:
        if (!t.codomain().has_free(t.binder()))
          return wrap(print(t.domain(), kOperand) + " -> " + print(t.codomain(), kTerm), level > kTerm);
        return wrap("!" + t.binder() + ":" + binder_domain(t.domain()) + ", " + print(t.codomain(), kTerm),
                    level > kTerm);
      case TermKind::Abs:
        return wrap("\\" + t.binder() + ":" + binder_domain(t.domain()) + ", " + print(t.body(), kTerm),
                    level > kTerm);
      case TermKind::App:
        return application(t, level);
    }
    return {};
  }

 private:
  static std::string wrap(std::string s, bool parens) { return parens ? "(" + s + ")" : s; }

  std::string binder_domain(const Term& domain) {
    return domain.is_prod() || domain.is_abs() ? "(" + print(domain, kTerm) + ")" : print(domain, kTerm);
  }

  std::string application(const Term& t, int level) {
    Spine s = spine(t);
    if (infix_ != nullptr && s.head.is_sym() && s.args.size() == 2) {
      auto it = infix_->symbol_to_op.find(s.head.name());
      if (it != infix_->symbol_to_op.end())
        return wrap(print(s.args[0], kApp) + " " + it->second + " " + print(s.args[1], kApp),
                    level > kOperand);
    }
    std::string out = print(s.head, kAtom);
    for (const auto& a : s.args) out += " " + print(a, kAtom);
    return wrap(out, level > kApp);
  }

  const InfixTable* infix_;
};

}  // namespace

std::string print_term(const Term& t, const InfixTable* infix) {
  return Printer(infix).print(t, kTerm);
}

std::string print_declaration(const Declaration& decl, const InfixTable* infix) {
  if (const auto* s = std::get_if<SymbolDecl>(&decl))
    return "symbol " + s->name + ": " + print_term(s->type, infix) + ".";
  if (const auto* r = std::get_if<RuleDecl>(&decl))
    return "rule " + print_term(r->lhs, infix) + " --> " + print_term(r->rhs, infix) + ".";
  const auto& i = std::get<InfixDecl>(decl);
  return "infix \"" + i.op + "\" := " + i.symbol + ".";
}

std::string print_file(const std::vector<Declaration>& decls) {
  // Operators become usable only after their declaration, so the table grows
  // as the file is printed.
  InfixTable table;
  std::string out;
  for (const auto& d : decls) {
    out += print_declaration(d, &table) + "\n";
    if (const auto* i = std::get_if<InfixDecl>(&d)) table.add(i->op, i->symbol);
  }
  return out;
}

}  // namespace sctcheck
