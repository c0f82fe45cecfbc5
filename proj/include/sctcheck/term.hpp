#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sctcheck {

enum class SortKind { Type, Kind };

enum class TermKind { Sort, Var, Sym, Prod, App, Abs };

struct TermNode;

/// Immutable, shared term of the λΠ/R language.
///
/// A Term is a cheap handle onto a shared node; copying never copies the tree.
/// Every node caches its set of free variables so that substitution and
/// occurrence checks do not rescan subterms.
class Term {
 public:
  Term() = default;

  static Term sort(SortKind kind);
  static Term type() { return sort(SortKind::Type); }
  static Term kind_sort() { return sort(SortKind::Kind); }
  static Term var(std::string name);
  static Term sym(std::string name);
  static Term prod(std::string binder, Term domain, Term codomain);
  static Term arrow(Term domain, Term codomain);
  static Term app(Term fun, Term arg);
  static Term abs(std::string binder, Term domain, Term body);

  TermKind kind() const;
  bool is_sort() const { return kind() == TermKind::Sort; }
  bool is_var() const { return kind() == TermKind::Var; }
  bool is_sym() const { return kind() == TermKind::Sym; }
  bool is_prod() const { return kind() == TermKind::Prod; }
  bool is_app() const { return kind() == TermKind::App; }
  bool is_abs() const { return kind() == TermKind::Abs; }

  SortKind sort_kind() const;
  /// Name of a Var or Sym, binder of a Prod or Abs.
  const std::string& name() const;
  const std::string& binder() const { return name(); }

  const Term& fun() const;       // App
  const Term& arg() const;       // App
  const Term& domain() const;    // Prod, Abs
  const Term& codomain() const;  // Prod
  const Term& body() const;      // Abs

  /// Free variables, sorted.
  const std::vector<std::string>& free_vars() const;
  bool has_free(std::string_view name) const;

  explicit operator bool() const { return static_cast<bool>(node_); }
  const TermNode* node() const { return node_.get(); }

 private:
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  TermKind kind = TermKind::Sort;
  SortKind sort = SortKind::Type;
  std::string name;
  Term left;
  Term right;
  std::vector<std::string> free;
};

/// Head and arguments of a left-nested application spine.
struct Spine {
  Term head;
  std::vector<Term> args;
};

Spine spine(const Term& t);
Term make_spine(Term head, const std::vector<Term>& args);

/// Head symbol name of a symbol-headed spine, empty otherwise.
std::string head_symbol(const Term& t);

std::set<std::string> free_vars(const Term& t);

/// Every symbol name occurring anywhere in t (including type annotations).
std::set<std::string> symbols_of(const Term& t);

bool alpha_equal(const Term& a, const Term& b);

/// Canonical text of t modulo α-renaming of bound variables; equal keys iff
/// alpha_equal.
std::string alpha_key(const Term& t);

/// Path of child indices from the root. App: 0 = function, 1 = argument.
/// Prod and Abs: 0 = domain, 1 = codomain/body.
using Position = std::vector<int>;

struct Subterm {
  Position position;
  Term term;
};

/// Leftmost-outermost preorder enumeration of the spine-maximal subterms of t:
/// for a spine `h a1 ... an` this lists the spine, then h, then the subterms of
/// each ai. Partial-application prefixes are not listed separately.
std::vector<Subterm> structural_subterms(const Term& t);

Term subterm_at(const Term& t, const Position& position);
Term replace_at(const Term& t, const Position& position, const Term& replacement);

std::size_t term_size(const Term& t);

/// base with its numeric suffix replaced by the least index giving a name
/// outside avoid (wildcards and empty bases use "x").
std::string fresh_name(std::string_view base, const std::set<std::string>& avoid);

/// Variables produced by the parser for `_` wildcards are named `_<n>`.
bool is_wildcard_name(std::string_view name);

}  // namespace sctcheck
