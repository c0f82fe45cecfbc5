#include "sctcheck/rewrite.hpp"

#include <functional>
#include <set>
#include <utility>

namespace sctcheck {

namespace {

bool touches(const Term& t, const Substitution& sigma) {
  for (const auto& v : t.free_vars())
    if (sigma.count(v)) return true;
  return false;
}

Term substitute_binder(const Term& t, const Substitution& sigma) {
  Term domain = substitute(t.domain(), sigma);
  const Term& body = t.node()->right;
  Substitution inner;
  for (const auto& v : body.free_vars()) {
    if (v == t.binder()) continue;
    auto it = sigma.find(v);
    if (it != sigma.end()) inner.emplace(v, it->second);
  }
  std::string binder = t.binder();
  Term new_body = body;
  if (!inner.empty()) {
    bool capture = false;
    for (const auto& [v, image] : inner)
      if (image.has_free(binder)) capture = true;
    if (capture) {
      std::set<std::string> avoid = free_vars(body);
      for (const auto& [v, image] : inner) {
        avoid.insert(v);
        avoid.insert(image.free_vars().begin(), image.free_vars().end());
      }
      std::string renamed = fresh_name(binder, avoid);
      inner[binder] = Term::var(renamed);
      binder = renamed;
    }
    new_body = substitute(body, inner);
  }
  return t.is_prod() ? Term::prod(binder, domain, new_body) : Term::abs(binder, domain, new_body);
}

struct MatchState {
  Substitution sigma;
  // Binder pairs (pattern side, term side), innermost last.
  std::vector<std::pair<std::string, std::string>> bound;
};

bool match_rec(const Term& p, const Term& t, MatchState& st) {
  switch (p.kind()) {
    case TermKind::Var: {
      for (auto it = st.bound.rbegin(); it != st.bound.rend(); ++it) {
        bool left = it->first == p.name();
        bool right = t.is_var() && it->second == t.name();
        if (left || right) return left && right;
      }
      for (const auto& [pb, tb] : st.bound)
        if (t.has_free(tb)) return false;
      auto [it, inserted] = st.sigma.emplace(p.name(), t);
      return inserted || alpha_equal(it->second, t);
    }
    case TermKind::Sym:
      return t.is_sym() && t.name() == p.name();
    case TermKind::Sort:
      return t.is_sort() && t.sort_kind() == p.sort_kind();
    case TermKind::App:
      return t.is_app() && match_rec(p.fun(), t.fun(), st) && match_rec(p.arg(), t.arg(), st);
    case TermKind::Prod:
    case TermKind::Abs: {
      if (t.kind() != p.kind() || !match_rec(p.domain(), t.domain(), st)) return false;
      st.bound.emplace_back(p.binder(), t.binder());
      bool ok = match_rec(p.node()->right, t.node()->right, st);
      st.bound.pop_back();
      return ok;
    }
  }
  return false;
}

// Calls visit(reduct) in reduce_step order until it returns false. Returns
// false when stopped early.
bool for_each_reduct(const Term& root, const RuleSet& rules,
                     const std::function<bool(Reduct&&)>& visit) {
  Position pos;
  std::function<bool(const Term&)> walk = [&](const Term& t) -> bool {
    if (t.is_app() && t.fun().is_abs()) {
      const Term& lam = t.fun();
      Term contractum = substitute(lam.body(), {{lam.binder(), t.arg()}});
      if (!visit({replace_at(root, pos, contractum), ReductKind::Beta, 0, pos})) return false;
    }
    std::string head = head_symbol(t);
    if (!head.empty()) {
      std::size_t nargs = 0;
      for (Term cur = t; cur.is_app(); cur = cur.fun()) ++nargs;
      for (std::size_t idx : rules.headed_by(head)) {
        const Rule& rule = rules[idx];
        if (rule.args.size() != nargs) continue;
        if (auto sigma = match(rule.lhs, t)) {
          Term contractum = substitute(rule.rhs, *sigma);
          if (!visit({replace_at(root, pos, contractum), ReductKind::Rule, idx, pos})) return false;
        }
      }
    }
    if (t.is_app() || t.is_prod() || t.is_abs()) {
      pos.push_back(0);
      if (!walk(t.node()->left)) return false;
      pos.back() = 1;
      if (!walk(t.node()->right)) return false;
      pos.pop_back();
    }
    return true;
  };
  return walk(root);
}

}  // namespace

Term substitute(const Term& t, const Substitution& sigma) {
  if (sigma.empty() || !touches(t, sigma)) return t;
  switch (t.kind()) {
    case TermKind::Var:
      return sigma.at(t.name());
    case TermKind::App:
      return Term::app(substitute(t.fun(), sigma), substitute(t.arg(), sigma));
    case TermKind::Prod:
    case TermKind::Abs:
      return substitute_binder(t, sigma);
    default:
      return t;
  }
}

std::optional<Substitution> match(const Term& pattern, const Term& t) {
  MatchState st;
  if (!match_rec(pattern, t, st)) return std::nullopt;
  return std::move(st.sigma);
}

Rule::Rule(Term lhs_, Term rhs_, std::size_t index_, int line_)
    : lhs(std::move(lhs_)), rhs(std::move(rhs_)), index(index_), line(line_) {
  Spine s = spine(lhs);
  head = s.head.is_sym() ? s.head.name() : std::string();
  args = std::move(s.args);
}

RuleSet::RuleSet(std::vector<Rule> rules) {
  for (auto& r : rules) add(std::move(r.lhs), std::move(r.rhs), r.line);
}

void RuleSet::add(Term lhs, Term rhs, int line) {
  std::size_t idx = rules_.size();
  rules_.emplace_back(std::move(lhs), std::move(rhs), idx, line);
  by_head_[rules_.back().head].push_back(idx);
}

const std::vector<std::size_t>& RuleSet::headed_by(const std::string& symbol) const {
  static const std::vector<std::size_t> none;
  auto it = by_head_.find(symbol);
  return it == by_head_.end() ? none : it->second;
}

bool RuleSet::defines(const std::string& symbol) const { return by_head_.count(symbol) != 0; }

std::vector<Reduct> reduce_step(const Term& t, const RuleSet& rules) {
  std::vector<Reduct> out;
  for_each_reduct(t, rules, [&](Reduct&& r) {
    out.push_back(std::move(r));
    return true;
  });
  return out;
}

std::optional<Reduct> first_reduct(const Term& t, const RuleSet& rules) {
  std::optional<Reduct> out;
  for_each_reduct(t, rules, [&](Reduct&& r) {
    out = std::move(r);
    return false;
  });
  return out;
}

NormalizeResult normalize(const Term& t, const RuleSet& rules, std::size_t fuel) {
  NormalizeResult res{t, false, 0};
  for (;;) {
    auto next = first_reduct(res.term, rules);
    if (!next) {
      res.normal = true;
      return res;
    }
    if (res.steps == fuel) return res;
    res.term = std::move(next->term);
    ++res.steps;
  }
}

Joinability joinable(const Term& a, const Term& b, const RuleSet& rules, std::size_t fuel) {
  if (alpha_equal(a, b)) return Joinability::Yes;
  NormalizeResult na = normalize(a, rules, fuel);
  NormalizeResult nb = normalize(b, rules, fuel);
  if (!na.normal || !nb.normal) return Joinability::Unknown;
  return alpha_equal(na.term, nb.term) ? Joinability::Yes : Joinability::No;
}

const char* to_string(Joinability j) {
  switch (j) {
    case Joinability::Yes: return "yes";
    case Joinability::No: return "no";
    case Joinability::Unknown: return "unknown";
  }
  return "?";
}

}  // namespace sctcheck
