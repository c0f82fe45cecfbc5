#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sctcheck/term.hpp"

namespace sctcheck {

/// Finite map from variables to terms; identity outside its domain.
using Substitution = std::map<std::string, Term>;

/// Capture-avoiding simultaneous substitution.
Term substitute(const Term& t, const Substitution& sigma);

/// Syntactic matching. Free variables of the pattern are the matchable ones;
/// repeated variables must receive α-equal terms. No matching modulo β or η.
std::optional<Substitution> match(const Term& pattern, const Term& t);

/// A rule `f l1 ... ln --> r`, with its lhs decomposition cached.
struct Rule {
  Term lhs;
  Term rhs;
  std::size_t index = 0;
  int line = 0;
  std::string head;
  std::vector<Term> args;

  Rule(Term lhs, Term rhs, std::size_t index, int line = 0);
};

/// Ordered rule list indexed by head symbol.
class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::vector<Rule> rules);

  void add(Term lhs, Term rhs, int line = 0);

  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  const Rule& operator[](std::size_t i) const { return rules_[i]; }
  auto begin() const { return rules_.begin(); }
  auto end() const { return rules_.end(); }

  /// Indices of rules headed by symbol, in file order.
  const std::vector<std::size_t>& headed_by(const std::string& symbol) const;
  bool defines(const std::string& symbol) const;

 private:
  std::vector<Rule> rules_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_head_;
};

enum class ReductKind { Beta, Rule };

struct Reduct {
  Term term;
  ReductKind kind = ReductKind::Beta;
  std::size_t rule = 0;  // meaningful for ReductKind::Rule
  Position position;
};

/// Every one-step reduct of t, at every position (under binders too). Order:
/// preorder positions; at a position, β before rules, rules in file order.
std::vector<Reduct> reduce_step(const Term& t, const RuleSet& rules);

/// The first element reduce_step would return, computed without the others.
std::optional<Reduct> first_reduct(const Term& t, const RuleSet& rules);

struct NormalizeResult {
  Term term;
  bool normal = false;  // false: fuel ran out before a normal form
  std::size_t steps = 0;
};

/// Leftmost-outermost reduction for at most fuel steps.
NormalizeResult normalize(const Term& t, const RuleSet& rules, std::size_t fuel);

enum class Joinability { Yes, No, Unknown };

/// Normalizes both sides with the given fuel each and compares the results.
Joinability joinable(const Term& a, const Term& b, const RuleSet& rules, std::size_t fuel);

const char* to_string(Joinability j);

}  // namespace sctcheck
