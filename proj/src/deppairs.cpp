#include "sctcheck/deppairs.hpp"

namespace sctcheck {

Term DependencyPair::lhs() const { return make_spine(Term::sym(lhs_head), lhs_args); }
Term DependencyPair::rhs() const { return make_spine(Term::sym(rhs_head), rhs_args); }

std::string dp_label(std::size_t index) {
  std::string out;
  std::size_t n = index + 1;
  while (n > 0) {
    --n;
    out.insert(out.begin(), static_cast<char>('A' + n % 26));
    n /= 26;
  }
  return out;
}

namespace {

// The head of a listed spine is listed too; it is not a call on its own.
bool is_spine_head(const Term& rhs, const Position& position) {
  if (position.empty() || position.back() != 0) return false;
  Position parent(position.begin(), position.end() - 1);
  return subterm_at(rhs, parent).is_app();
}

}  // namespace

std::vector<DependencyPair> extract_dependency_pairs(const RuleSet& rules, const Signature& sig) {
  std::vector<DependencyPair> out;
  for (const auto& rule : rules) {
    for (auto& sub : structural_subterms(rule.rhs)) {
      Spine s = spine(sub.term);
      if (!s.head.is_sym() || !sig.is_defined(s.head.name())) continue;
      if (is_spine_head(rule.rhs, sub.position)) continue;
      DependencyPair dp;
      dp.label = dp_label(out.size());
      dp.lhs_head = rule.head;
      dp.lhs_args = rule.args;
      dp.rhs_head = s.head.name();
      dp.rhs_args = std::move(s.args);
      dp.source_rule = rule.index;
      dp.rhs_position = std::move(sub.position);
      out.push_back(std::move(dp));
    }
  }
  return out;
}

std::vector<CallArityCheck> check_condition_c(const std::vector<DependencyPair>& dps,
                                              const Signature& sig) {
  std::vector<CallArityCheck> out;
  for (std::size_t i = 0; i < dps.size(); ++i) {
    std::size_t arity = sig.arity(dps[i].rhs_head);
    out.push_back({i, dps[i].rhs_args.size() <= arity, dps[i].rhs_args.size(), arity});
  }
  return out;
}

std::string print_dependency_pair(const DependencyPair& dp, const InfixTable* infix) {
  return print_term(dp.lhs(), infix) + " > " + print_term(dp.rhs(), infix);
}

}  // namespace sctcheck
