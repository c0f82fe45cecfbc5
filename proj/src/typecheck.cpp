#include "sctcheck/typecheck.hpp"

#include <map>
#include <set>
#include <utility>

namespace sctcheck {

const Term* Environment::find(const std::string& name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->name == name) return &it->type;
  return nullptr;
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Unknown: return "unknown";
  }
  return "?";
}

namespace {

/// Codomain of a product instantiated with the argument.
Term instantiate(const Term& prod, const Term& arg) {
  if (!prod.codomain().has_free(prod.binder())) return prod.codomain();
  return substitute(prod.codomain(), {{prod.binder(), arg}});
}

/// Domains of Θ along args: T_i[x_1..x_{i-1} := a_1..a_{i-1}]. Stops early
/// when Θ has fewer products than args.
std::vector<Term> instantiated_domains(const Term& theta, const std::vector<Term>& args, Term* rest) {
  std::vector<Term> out;
  Term cur = theta;
  for (const auto& a : args) {
    if (!cur.is_prod()) break;
    out.push_back(cur.domain());
    cur = instantiate(cur, a);
  }
  if (rest != nullptr) *rest = cur;
  return out;
}

// ---------------------------------------------------------------------------
// Environment inference

class EnvironmentInference {
 public:
  EnvironmentInference(const Rule& rule, const Signature& sig, const RuleSet& rules, std::size_t fuel)
      : rule_(rule), sig_(sig), rules_(rules), fuel_(fuel) {
    for (const auto& v : rule.lhs.free_vars()) unknowns_.insert(v);
  }

  RuleEnvironment run() {
    const SymbolInfo& head = sig_.at(rule_.head);
    Term type = head.theta;
    for (const auto& a : rule_.args) {
      Term p = product(type, rule_.head);
      check_pattern(a, p.domain());
      type = instantiate(p, a);
    }
    RuleEnvironment env;
    for (const auto& name : order_) env.delta.push(name, apply(types_.at(name)));
    env.unifier = theta_;
    return env;
  }

 private:
  Term product(const Term& type, const std::string& owner) {
    if (type.is_prod()) return type;
    NormalizeResult nf = normalize(apply(type), rules_, fuel_);
    if (nf.term.is_prod()) return nf.term;
    throw EnvironmentError(EnvironmentErrorKind::ArityOverflow,
                           owner + " is applied to more arguments than its type allows");
  }

  void check_pattern(const Term& p, const Term& expected) {
    switch (p.kind()) {
      case TermKind::Var: {
        auto it = types_.find(p.name());
        if (it == types_.end()) {
          order_.push_back(p.name());
          index_[p.name()] = order_.size() - 1;
          types_.emplace(p.name(), expected);
        } else if (!unify(it->second, expected)) {
          throw EnvironmentError(EnvironmentErrorKind::ConflictingTypes,
                                 "variable " + p.name() + " receives types " + print_term(apply(it->second)) +
                                     " and " + print_term(apply(expected)));
        }
        return;
      }
      case TermKind::Sort:
      case TermKind::Prod:
      case TermKind::Abs:
        throw EnvironmentError(EnvironmentErrorKind::NonAlgebraic,
                               "non-algebraic pattern " + print_term(p) + " in the lhs");
      default:
        break;
    }
    Spine s = spine(p);
    if (!s.head.is_sym())
      throw EnvironmentError(EnvironmentErrorKind::NonAlgebraic,
                             "variable-headed application " + print_term(p) + " in the lhs");
    const std::string& c = s.head.name();
    Term type = sig_.at(c).theta;
    for (const auto& a : s.args) {
      Term prod = product(type, c);
      check_pattern(a, prod.domain());
      type = instantiate(prod, a);
    }
    if (!unify(type, expected))
      throw EnvironmentError(EnvironmentErrorKind::NotInferable,
                             "pattern " + print_term(p) + " has type " + print_term(apply(type)) +
                                 ", expected " + print_term(apply(expected)));
  }

  Term apply(const Term& t) const { return substitute(t, theta_); }

  bool unify(const Term& a, const Term& b) {
    Substitution saved = theta_;
    std::set<std::string> rigid;
    if (unify_struct(apply(a), apply(b), rigid)) return true;
    theta_ = saved;
    NormalizeResult na = normalize(apply(a), rules_, fuel_);
    NormalizeResult nb = normalize(apply(b), rules_, fuel_);
    if (unify_struct(na.term, nb.term, rigid)) return true;
    theta_ = saved;
    return false;
  }

  bool is_unknown(const Term& t) const { return t.is_var() && unknowns_.count(t.name()) && !theta_.count(t.name()); }

  bool bind(const std::string& v, const Term& value, const std::set<std::string>& rigid) {
    if (value.has_free(v)) return false;
    for (const auto& r : rigid)
      if (value.has_free(r)) return false;
    for (auto& [k, image] : theta_) image = substitute(image, {{v, value}});
    theta_[v] = value;
    return true;
  }

  std::size_t order_of(const std::string& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? static_cast<std::size_t>(-1) : it->second;
  }

  bool unify_struct(const Term& a0, const Term& b0, std::set<std::string>& rigid) {
    Term a = apply(a0);
    Term b = apply(b0);
    if (alpha_equal(a, b)) return true;
    bool ua = is_unknown(a);
    bool ub = is_unknown(b);
    if (ua && ub) {
      // Keep the variable introduced first.
      if (order_of(a.name()) < order_of(b.name())) return bind(b.name(), a, rigid);
      return bind(a.name(), b, rigid);
    }
    if (ua) return bind(a.name(), b, rigid);
    if (ub) return bind(b.name(), a, rigid);
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case TermKind::App:
        return unify_struct(a.fun(), b.fun(), rigid) && unify_struct(a.arg(), b.arg(), rigid);
      case TermKind::Prod:
      case TermKind::Abs: {
        if (!unify_struct(a.domain(), b.domain(), rigid)) return false;
        std::set<std::string> avoid = free_vars(a);
        avoid.insert(b.free_vars().begin(), b.free_vars().end());
        avoid.insert(unknowns_.begin(), unknowns_.end());
        avoid.insert(rigid.begin(), rigid.end());
        std::string fresh = fresh_name(a.binder(), avoid);
        Term x = Term::var(fresh);
        rigid.insert(fresh);
        bool ok = unify_struct(substitute(a.node()->right, {{a.binder(), x}}),
                               substitute(b.node()->right, {{b.binder(), x}}), rigid);
        rigid.erase(fresh);
        return ok;
      }
      default:
        return false;
    }
  }

  const Rule& rule_;
  const Signature& sig_;
  const RuleSet& rules_;
  std::size_t fuel_;
  std::set<std::string> unknowns_;
  std::vector<std::string> order_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, Term> types_;
  Substitution theta_;
};

// ---------------------------------------------------------------------------
// Restricted typing

struct TypingFailure {
  std::string reason;
};

struct TypingUndecided {
  std::string reason;
};

class RestrictedChecker {
 public:
  RestrictedChecker(const Rule& rule, const RuleEnvironment& env, const System& sys,
                    const std::vector<DependencyPair>& dps, std::size_t fuel)
      : rule_(rule), env_(env), sys_(sys), sig_(sys.signature), fuel_(fuel), f_(rule.head) {
    for (const auto& dp : dps)
      if (dp.source_rule == rule.index) dps_.push_back(&dp);
  }

  ConditionDResult run() {
    ConditionDResult res;
    try {
      const SymbolInfo& head = sig_.at(f_);
      Term rest;
      auto domains = instantiated_domains(head.theta, rule_.args, &rest);
      if (domains.size() < rule_.args.size())
        throw TypingFailure{"lhs has more arguments than the type of " + f_};
      Term expected = substitute(rest, env_.unifier);
      Environment ctx = env_.delta;
      for (const auto& entry : env_.delta.entries()) {
        try {
          sort_below(ctx, entry.type);
        } catch (TypingFailure& e) {
          throw TypingFailure{"type of " + entry.name + " is not typable below " + f_ + ": " + e.reason};
        }
      }
      Term rhs = substitute(rule_.rhs, env_.unifier);
      check_full(ctx, rhs, expected, {});
      res.outcome = Outcome::Pass;
    } catch (TypingFailure& e) {
      res.outcome = Outcome::Fail;
      res.reason = e.reason;
    } catch (TypingUndecided& e) {
      res.outcome = Outcome::Unknown;
      res.reason = e.reason;
    } catch (SignatureError& e) {
      res.outcome = Outcome::Fail;
      res.reason = e.what();
    }
    res.trace = std::move(trace_);
    return res;
  }

 private:
  [[noreturn]] static void fail(std::string reason) { throw TypingFailure{std::move(reason)}; }

  std::string show(const Term& t) const { return print_term(t, &sig_.infix); }

  Term product(const Term& type) {
    if (type.is_prod()) return type;
    NormalizeResult nf = normalize(type, sys_.rules, fuel_);
    if (!nf.normal) throw TypingUndecided{"normalizing " + show(type) + " ran out of fuel"};
    if (!nf.term.is_prod()) fail("expected a product type, found " + show(type));
    return nf.term;
  }

  SortKind as_sort(const Term& type, const Term& of) {
    if (type.is_sort()) return type.sort_kind();
    NormalizeResult nf = normalize(type, sys_.rules, fuel_);
    if (!nf.normal) throw TypingUndecided{"normalizing " + show(type) + " ran out of fuel"};
    if (!nf.term.is_sort()) fail(show(of) + " is not a type");
    return nf.term.sort_kind();
  }

  /// Binder name usable in ctx, and the body renamed accordingly.
  std::pair<std::string, Term> open(const Environment& ctx, const Term& binder_term) {
    const std::string& x = binder_term.binder();
    const Term& body = binder_term.node()->right;
    if (!ctx.contains(x)) return {x, body};
    if (!body.has_free(x)) return {x, body};
    std::set<std::string> avoid = free_vars(body);
    for (const auto& e : ctx.entries()) avoid.insert(e.name);
    std::string fresh = fresh_name(x, avoid);
    return {fresh, substitute(body, {{x, Term::var(fresh)}})};
  }

  void convert(const Environment& ctx, const Term& actual, const Term& expected) {
    switch (joinable(actual, expected, sys_.rules, fuel_)) {
      case Joinability::Yes:
        return;
      case Joinability::No:
        fail("type mismatch: " + show(actual) + " is not convertible to " + show(expected));
      case Joinability::Unknown:
        throw TypingUndecided{"conversion " + show(actual) + " ~ " + show(expected) + " undecided (fuel)"};
    }
    (void)ctx;
  }

  // ⊢_{≺f} -------------------------------------------------------------

  void symbol_type_below(const std::string& g) {
    auto [it, inserted] = symbol_checked_.emplace(g, false);
    if (!inserted) {
      if (!it->second) fail("cyclic dependency while typing the type of " + g);
      return;
    }
    const SymbolInfo& info = sig_.at(g);
    Environment empty;
    SortKind s = sort_below(empty, info.theta);
    if (s != info.sort) fail("type of " + g + " does not have its expected sort");
    symbol_checked_[g] = true;
  }

  SortKind sort_below(Environment& ctx, const Term& type) { return as_sort(infer_below(ctx, type), type); }

  Term infer_below(Environment& ctx, const Term& t) {
    switch (t.kind()) {
      case TermKind::Sort:
        if (t.sort_kind() == SortKind::Kind) fail("KIND is not typable");
        return Term::kind_sort();
      case TermKind::Var: {
        const Term* type = ctx.find(t.name());
        if (type == nullptr) fail("unbound variable " + t.name());
        return *type;
      }
      case TermKind::Sym: {
        const std::string& g = t.name();
        if (!sig_.contains(g)) fail("unknown symbol " + g);
        if (sig_.is_defined(g)) {
          if (!sys_.precedence.gt(f_, g)) fail("(fun<f) inadmissible: " + g + " is not below " + f_);
          trace_.push_back("fun<f:" + g);
        } else {
          trace_.push_back("const<f:" + g);
        }
        symbol_type_below(g);
        return sig_.at(g).theta;
      }
      case TermKind::App: {
        Term p = product(infer_below(ctx, t.fun()));
        check_below(ctx, t.arg(), p.domain());
        return instantiate(p, t.arg());
      }
      case TermKind::Prod: {
        if (sort_below(ctx, t.domain()) != SortKind::Type)
          fail("product domain " + show(t.domain()) + " is not of type TYPE");
        auto [x, body] = open(ctx, t);
        ctx.push(x, t.domain());
        SortKind s = sort_below(ctx, body);
        ctx.pop();
        return Term::sort(s);
      }
      case TermKind::Abs: {
        if (sort_below(ctx, t.domain()) != SortKind::Type)
          fail("abstraction domain " + show(t.domain()) + " is not of type TYPE");
        auto [x, body] = open(ctx, t);
        ctx.push(x, t.domain());
        Term body_type = infer_below(ctx, body);
        ctx.pop();
        Term p = Term::prod(x, t.domain(), body_type);
        sort_below(ctx, p);
        return p;
      }
    }
    fail("unexpected term");
  }

  void check_below(Environment& ctx, const Term& t, const Term& expected) {
    Term actual = infer_below(ctx, t);
    if (alpha_equal(actual, expected)) return;
    convert(ctx, actual, expected);
    sort_below(ctx, expected);
  }

  // ⊢_{f l̄} ------------------------------------------------------------

  static Position extend(const Position& pos, std::size_t zeros, bool arg) {
    Position out = pos;
    out.insert(out.end(), zeros, 0);
    if (arg) out.push_back(1);
    return out;
  }

  const DependencyPair* pair_at(const Position& pos, const std::string& g, const std::vector<Term>& args) const {
    for (const DependencyPair* dp : dps_) {
      if (dp->rhs_position != pos || dp->rhs_head != g || dp->rhs_args.size() != args.size()) continue;
      bool same = true;
      for (std::size_t i = 0; i < args.size() && same; ++i)
        same = alpha_equal(substitute(dp->rhs_args[i], env_.unifier), args[i]);
      if (same) return dp;
    }
    return nullptr;
  }

  SortKind sort_full(Environment& ctx, const Term& type, const Position& pos) {
    return as_sort(infer_full(ctx, type, pos), type);
  }

  Term infer_full(Environment& ctx, const Term& t, const Position& pos) {
    switch (t.kind()) {
      case TermKind::Sort:
        if (t.sort_kind() == SortKind::Kind) fail("KIND is not typable");
        trace_.push_back("ax");
        return Term::kind_sort();
      case TermKind::Var: {
        const Term* type = ctx.find(t.name());
        if (type == nullptr) fail("unbound variable " + t.name());
        trace_.push_back("var");
        return *type;
      }
      case TermKind::Prod: {
        trace_.push_back("prod");
        if (sort_full(ctx, t.domain(), extend(pos, 1, false)) != SortKind::Type)
          fail("product domain " + show(t.domain()) + " is not of type TYPE");
        auto [x, body] = open(ctx, t);
        ctx.push(x, t.domain());
        Position body_pos = pos;
        body_pos.push_back(1);
        SortKind s = sort_full(ctx, body, body_pos);
        ctx.pop();
        return Term::sort(s);
      }
      case TermKind::Abs: {
        trace_.push_back("abs");
        if (sort_below(ctx, t.domain()) != SortKind::Type)
          fail("abstraction domain " + show(t.domain()) + " is not of type TYPE");
        auto [x, body] = open(ctx, t);
        ctx.push(x, t.domain());
        Position body_pos = pos;
        body_pos.push_back(1);
        Term body_type = infer_full(ctx, body, body_pos);
        ctx.pop();
        Term p = Term::prod(x, t.domain(), body_type);
        sort_below(ctx, p);
        return p;
      }
      case TermKind::Sym:
      case TermKind::App:
        return infer_spine(ctx, t, pos);
    }
    fail("unexpected term");
  }

  Term infer_spine(Environment& ctx, const Term& t, const Position& pos) {
    Spine s = spine(t);
    const std::size_t n = s.args.size();
    auto arg_pos = [&](std::size_t i) { return extend(pos, n - 1 - i, true); };
    Term type;
    if (s.head.is_sym()) {
      const std::string& g = s.head.name();
      const SymbolInfo& info = sig_.at(g);
      if (info.defined) {
        const DependencyPair* dp = pair_at(pos, g, s.args);
        if (dp == nullptr)
          fail("(dp)/(fun) inadmissible: no dependency pair covers the call to " + g + " in " + show(t));
        trace_.push_back("dp:" + dp->label);
        symbol_type_below(g);
        type = info.theta;
        for (std::size_t i = 0; i < n; ++i) {
          Term p = product(type);
          check_full(ctx, s.args[i], p.domain(), arg_pos(i));
          type = instantiate(p, s.args[i]);
        }
        return type;
      }
      trace_.push_back("const:" + g);
      symbol_type_below(g);
      type = info.theta;
    } else {
      type = infer_full(ctx, s.head, extend(pos, n, false));
    }
    for (std::size_t i = 0; i < n; ++i) {
      Term p = product(type);
      trace_.push_back("app'");
      sort_below(ctx, p);
      check_full(ctx, s.args[i], p.domain(), arg_pos(i));
      type = instantiate(p, s.args[i]);
    }
    return type;
  }

  void check_full(Environment& ctx, const Term& t, const Term& expected, const Position& pos) {
    Term actual = infer_full(ctx, t, pos);
    if (alpha_equal(actual, expected)) return;
    trace_.push_back("conv'");
    convert(ctx, actual, expected);
    sort_below(ctx, expected);
    sort_below(ctx, actual);
  }

  const Rule& rule_;
  const RuleEnvironment& env_;
  const System& sys_;
  const Signature& sig_;
  std::size_t fuel_;
  std::string f_;
  std::vector<const DependencyPair*> dps_;
  std::map<std::string, bool> symbol_checked_;
  std::vector<std::string> trace_;
};

}  // namespace

RuleEnvironment infer_rule_environment(const Rule& rule, const Signature& sig, const RuleSet& rules,
                                       std::size_t fuel) {
  return EnvironmentInference(rule, sig, rules, fuel).run();
}

PfpResult check_pfp(const Rule& rule, const RuleEnvironment& env, const Signature& sig,
                    const RuleSet& rules, std::size_t fuel) {
  const SymbolInfo& head = sig.at(rule.head);
  auto domains = instantiated_domains(head.theta, rule.args, nullptr);
  if (domains.size() < rule.args.size())
    return {false, "", "lhs has more arguments than the type of " + rule.head};
  for (const auto& l : rule.args)
    if (l.is_sort() || is_kind(l)) return {false, "", "lhs argument " + print_term(l) + " is a kind"};

  for (const auto& entry : env.delta.entries()) {
    bool direct = false;
    bool nested = false;
    for (std::size_t i = 0; i < rule.args.size(); ++i) {
      const Term& l = rule.args[i];
      if (l.is_var() && l.name() == entry.name &&
          alpha_equal(entry.type, substitute(domains[i], env.unifier)))
        direct = true;
      if (l.has_free(entry.name)) nested = true;
    }
    if (direct) continue;
    if (nested) {
      Spine s = spine(entry.type);
      if (s.head.is_sym() && sig.contains(s.head.name()) && s.args.size() == sig.arity(s.head.name())) {
        if (!sig.is_defined(s.head.name())) continue;
        // A defined head is accepted only when the type cannot reduce.
        if (!first_reduct(entry.type, rules)) continue;
      }
      (void)fuel;
      return {false, entry.name,
              "variable " + entry.name + " is not an lhs argument and its type " +
                  print_term(entry.type, &sig.infix) + " is not a fully applied type constant"};
    }
    return {false, entry.name, "variable " + entry.name + " does not occur in the lhs arguments"};
  }
  return {};
}

ConditionDResult check_condition_d(const Rule& rule, const RuleEnvironment& env, const System& sys,
                                   const std::vector<DependencyPair>& dps, std::size_t fuel) {
  return RestrictedChecker(rule, env, sys, dps, fuel).run();
}

}  // namespace sctcheck
