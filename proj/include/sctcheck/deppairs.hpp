#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sctcheck/rewrite.hpp"
#include "sctcheck/signature.hpp"
#include "sctcheck/term.hpp"

namespace sctcheck {

/// `f l1 ... lp > g m1 ... mq`: a defined-symbol call g m̄ found in the rhs of
/// the rule f l̄ → r, where m̄ are all the arguments g is applied to there.
struct DependencyPair {
  std::string label;
  std::string lhs_head;
  std::vector<Term> lhs_args;
  std::string rhs_head;
  std::vector<Term> rhs_args;
  std::size_t source_rule = 0;
  Position rhs_position;

  Term lhs() const;
  Term rhs() const;
};

/// A, B, ..., Z, AA, AB, ...
std::string dp_label(std::size_t index);

/// One pair per spine-maximal defined-headed subterm of each rhs (binders
/// included), in rule order then leftmost-outermost order.
std::vector<DependencyPair> extract_dependency_pairs(const RuleSet& rules, const Signature& sig);

struct CallArityCheck {
  std::size_t dp = 0;
  bool pass = false;
  std::size_t args = 0;
  std::size_t arity = 0;
};

/// Condition (c): |m̄| ≤ arit(Θ_g) for every pair.
std::vector<CallArityCheck> check_condition_c(const std::vector<DependencyPair>& dps,
                                              const Signature& sig);

/// `f l1 ... lp > g m1 ... mq` in prefix form.
std::string print_dependency_pair(const DependencyPair& dp, const InfixTable* infix = nullptr);

}  // namespace sctcheck
