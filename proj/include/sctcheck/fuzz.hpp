#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sctcheck/rewrite.hpp"
#include "sctcheck/signature.hpp"
#include "sctcheck/term.hpp"

namespace sctcheck {

/// A reduction sequence start -> t1 -> ... -> tn whose last term is α-equal to
/// the term at index cycle_start (index 0 is start).
struct FuzzWitness {
  Term start;
  std::vector<Reduct> steps;
  std::size_t cycle_start = 0;

  /// start followed by the term of every step.
  std::vector<Term> terms() const;
  std::size_t cycle_length() const { return steps.size() - cycle_start; }
};

struct FuzzOptions {
  std::size_t seeds = 16;
  std::size_t depth = 50;
  /// Distinct terms explored per start term.
  std::size_t node_limit = 128;
  /// Nesting depth of generated constructor terms.
  std::size_t term_depth = 3;
};

/// Instantiates every rule lhs with small generated ground terms and searches
/// the reduction graph for a cycle. Deterministic in (seed, rule).
std::optional<FuzzWitness> fuzz_nontermination(const System& sys, const FuzzOptions& options = {});

/// True iff consecutive terms are related by the recorded steps and the last
/// term is α-equal to the one at cycle_start.
bool is_valid_witness(const FuzzWitness& w, const RuleSet& rules);

}  // namespace sctcheck
