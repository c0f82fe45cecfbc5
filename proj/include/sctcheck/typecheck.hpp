#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sctcheck/deppairs.hpp"
#include "sctcheck/rewrite.hpp"
#include "sctcheck/signature.hpp"
#include "sctcheck/term.hpp"

namespace sctcheck {

struct TypedVariable {
  std::string name;
  Term type;
};

/// Ordered typing environment; later types may mention earlier variables.
class Environment {
 public:
  Environment() = default;
  explicit Environment(std::vector<TypedVariable> entries) : entries_(std::move(entries)) {}

  void push(std::string name, Term type) { entries_.push_back({std::move(name), std::move(type)}); }
  void pop() { entries_.pop_back(); }

  /// Innermost binding of name, or null.
  const Term* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }

  const std::vector<TypedVariable>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<TypedVariable> entries_;
};

/// Δ for a rule together with the unifier that made its lhs well typed
/// (e.g. `_` ↦ a for the wildcard inside `cons _ x p l`).
struct RuleEnvironment {
  Environment delta;
  Substitution unifier;
};

enum class EnvironmentErrorKind { NonAlgebraic, ConflictingTypes, ArityOverflow, NotInferable };

class EnvironmentError : public std::runtime_error {
 public:
  EnvironmentError(EnvironmentErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  EnvironmentErrorKind kind() const { return kind_; }

 private:
  EnvironmentErrorKind kind_;
};

/// Walks Θ_f along the lhs arguments, instantiating constructor telescopes
/// and unifying each constructor's result type with its expected type.
/// Throws EnvironmentError.
RuleEnvironment infer_rule_environment(const Rule& rule, const Signature& sig, const RuleSet& rules,
                                       std::size_t fuel = 10000);

struct PfpResult {
  bool pass = true;
  std::string variable;  // offending variable on failure
  std::string reason;
};

/// Plain function-passing check for one rule.
PfpResult check_pfp(const Rule& rule, const RuleEnvironment& env, const Signature& sig,
                    const RuleSet& rules, std::size_t fuel = 10000);

enum class Outcome { Pass, Fail, Unknown };

const char* to_string(Outcome o);

struct ConditionDResult {
  Outcome outcome = Outcome::Pass;
  std::string reason;
  /// Typing rules used, in order (e.g. "var", "const:s", "dp:C", "conv").
  std::vector<std::string> trace;
};

/// Checks Δ ⊢_{f l̄} r : U π with the restricted rules: recursive calls only via
/// the rule's own dependency pairs, type-level premises in ⊢_{≺f}.
/// Unknown when a conversion runs out of fuel.
ConditionDResult check_condition_d(const Rule& rule, const RuleEnvironment& env, const System& sys,
                                   const std::vector<DependencyPair>& dps, std::size_t fuel);

}  // namespace sctcheck
