#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sctcheck/rewrite.hpp"
#include "sctcheck/syntax.hpp"
#include "sctcheck/term.hpp"

namespace sctcheck {

/// Number of leading products of T.
std::size_t product_arity(const Term& type);

/// Binder names of the leading products of T, in order (`_` for arrows).
std::vector<std::string> product_binders(const Term& type);

/// True iff T is a kind: TYPE or a product ending in TYPE.
bool is_kind(const Term& type);

struct SymbolInfo {
  std::string name;
  Term theta;
  SortKind sort = SortKind::Type;  // sort of theta
  std::size_t arity = 0;
  bool defined = false;
  std::size_t prec_class = 0;
  int line = 0;
};

class SignatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Signature {
 public:
  void declare(const std::string& name, const Term& theta, int line = 0);

  const SymbolInfo* find(const std::string& name) const;
  const SymbolInfo& at(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  /// Unknown names (e.g. fresh constants) count as undefined.
  bool is_defined(const std::string& name) const;
  std::size_t arity(const std::string& name) const { return at(name).arity; }

  /// Symbols in declaration order.
  const std::vector<SymbolInfo>& symbols() const { return symbols_; }

  void mark_defined(const std::string& name);
  void set_prec_class(const std::string& name, std::size_t cls);

  InfixTable infix;

 private:
  std::vector<SymbolInfo> symbols_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// The quasi-order f ⪰ g generated by "g occurs in Θ_f or in the rhs of a rule
/// headed by f", represented by its SCC condensation.
class Precedence {
 public:
  Precedence() = default;
  Precedence(std::vector<std::string> symbols, const std::vector<std::vector<std::size_t>>& edges);

  /// f ⪰ g.
  bool geq(const std::string& f, const std::string& g) const;
  /// f ≻ g, the strict part.
  bool gt(const std::string& f, const std::string& g) const;
  bool equivalent(const std::string& f, const std::string& g) const;

  std::size_t class_of(const std::string& f) const;
  /// SCCs, listed so that every class comes after all classes below it.
  const std::vector<std::vector<std::string>>& classes() const { return classes_; }
  /// Direct edges of the condensation DAG, (upper, lower).
  const std::vector<std::pair<std::size_t, std::size_t>>& dag_edges() const { return dag_edges_; }
  /// Length of the longest path down from the class.
  std::size_t rank(std::size_t cls) const { return ranks_[cls]; }

 private:
  std::map<std::string, std::size_t, std::less<>> class_of_;
  std::vector<std::vector<std::string>> classes_;
  std::vector<std::pair<std::size_t, std::size_t>> dag_edges_;
  std::vector<std::vector<bool>> reach_;
  std::vector<std::size_t> ranks_;
};

/// Strongly connected components of a directed graph (Tarjan), sinks first.
std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& graph);

Precedence build_precedence(const Signature& sig, const RuleSet& rules);

/// A validated input: signature, rules and the induced precedence.
struct System {
  Signature signature;
  RuleSet rules;
  Precedence precedence;
  std::vector<Declaration> declarations;
};

/// Throws SignatureError on duplicate declarations or on rules for undeclared
/// symbols.
System build_system(std::vector<Declaration> decls);
System build_system_from_text(std::string_view text);

struct RuleArityCheck {
  std::size_t rule = 0;
  bool pass = false;
  std::size_t args = 0;
  std::size_t arity = 0;
};

/// Condition (b): |l̄| ≤ arit(Θ_f) for every rule f l̄ → r.
std::vector<RuleArityCheck> check_condition_b(const RuleSet& rules, const Signature& sig);

}  // namespace sctcheck
