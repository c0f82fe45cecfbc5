#include "sctcheck/fuzz.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <unordered_map>

#include "sctcheck/typecheck.hpp"

namespace sctcheck {

std::vector<Term> FuzzWitness::terms() const {
  std::vector<Term> out{start};
  for (const auto& s : steps) out.push_back(s.term);
  return out;
}

namespace {

class Generator {
 public:
  Generator(const Signature& sig, std::uint32_t seed) : sig_(sig), rng_(seed) {}

  Term constant() {
    for (;;) {
      std::string name = "c" + std::to_string(++counter_);
      if (!sig_.contains(name)) return Term::sym(name);
    }
  }

  Term generate(const Term& type, std::size_t depth) {
    std::vector<TypedVariable> locals;
    return generate(type, depth, locals);
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  static Term codomain_of(Term t) {
    while (t.is_prod()) t = t.codomain();
    return t;
  }

  Term generate(const Term& type, std::size_t depth, std::vector<TypedVariable>& locals) {
    std::vector<Term> candidates;
    for (const auto& v : locals)
      if (alpha_equal(v.type, type)) candidates.push_back(Term::var(v.name));
    if (!candidates.empty() && pick(2) == 0) return candidates[pick(candidates.size())];

    if (type.is_prod()) {
      std::set<std::string> avoid = free_vars(type);
      for (const auto& v : locals) avoid.insert(v.name);
      std::string x = fresh_name(type.binder() == "_" ? "x" : type.binder(), avoid);
      Term body_type = substitute(type.codomain(), {{type.binder(), Term::var(x)}});
      locals.push_back({x, type.domain()});
      Term body = generate(body_type, depth == 0 ? 0 : depth - 1, locals);
      locals.pop_back();
      return Term::abs(x, type.domain(), body);
    }

    Spine s = spine(type);
    if (depth > 0 && s.head.is_sym()) {
      std::vector<const SymbolInfo*> ctors;
      for (const auto& info : sig_.symbols()) {
        if (info.defined) continue;
        Term result = codomain_of(info.theta);
        if (head_symbol(result) == s.head.name()) ctors.push_back(&info);
      }
      if (!ctors.empty()) {
        const SymbolInfo* c = ctors[pick(ctors.size())];
        Term t = Term::sym(c->name);
        Term cur = c->theta;
        while (cur.is_prod()) {
          Term a = generate(cur.domain(), depth - 1, locals);
          t = Term::app(t, a);
          cur = cur.codomain().has_free(cur.binder()) ? substitute(cur.codomain(), {{cur.binder(), a}})
                                                      : cur.codomain();
        }
        return t;
      }
    }
    return constant();
  }

  const Signature& sig_;
  std::mt19937 rng_;
  std::size_t counter_ = 0;
};

Term instantiate_rule(const Rule& rule, const System& sys, std::uint32_t seed, std::size_t depth) {
  Generator gen(sys.signature, seed);
  Substitution sigma;
  try {
    RuleEnvironment env = infer_rule_environment(rule, sys.signature, sys.rules);
    for (const auto& entry : env.delta.entries()) {
      if (env.unifier.count(entry.name)) continue;
      sigma[entry.name] = gen.generate(substitute(entry.type, sigma), depth);
    }
    for (const auto& [name, image] : env.unifier) sigma[name] = substitute(image, sigma);
  } catch (const EnvironmentError&) {
    sigma.clear();
  }
  for (const auto& v : rule.lhs.free_vars())
    if (!sigma.count(v)) sigma[v] = gen.constant();
  return substitute(rule.lhs, sigma);
}

struct Node {
  Term term;
  std::size_t depth = 0;
  std::vector<std::pair<std::size_t, Reduct>> out;
};

std::optional<FuzzWitness> search(const Term& start, const RuleSet& rules, const FuzzOptions& options) {
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> index;
  nodes.push_back({start, 0, {}});
  index.emplace(alpha_key(start), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].depth >= options.depth) continue;
    for (auto& r : reduce_step(nodes[i].term, rules)) {
      std::string key = alpha_key(r.term);
      auto it = index.find(key);
      std::size_t target;
      if (it != index.end()) {
        target = it->second;
      } else {
        if (nodes.size() >= options.node_limit) continue;
        target = nodes.size();
        index.emplace(std::move(key), target);
        nodes.push_back({r.term, nodes[i].depth + 1, {}});
      }
      nodes[i].out.emplace_back(target, std::move(r));
    }
  }

  // Iterative DFS; a root-to-node path plus a back edge is a cycle.
  enum class Color : std::uint8_t { White, Grey, Black };
  std::vector<Color> color(nodes.size(), Color::White);
  struct Frame {
    std::size_t node;
    std::size_t next = 0;
  };
  std::vector<Frame> stack{{0}};
  color[0] = Color::Grey;
  while (!stack.empty()) {
    Frame& top = stack.back();
    Node& n = nodes[top.node];
    if (top.next == n.out.size()) {
      color[top.node] = Color::Black;
      stack.pop_back();
      continue;
    }
    std::size_t edge = top.next++;
    std::size_t target = n.out[edge].first;
    if (color[target] == Color::Grey) {
      FuzzWitness w;
      w.start = start;
      for (std::size_t k = 0; k + 1 < stack.size(); ++k) {
        const Frame& f = stack[k];
        w.steps.push_back(nodes[f.node].out[f.next - 1].second);
        if (stack[k].node == target) w.cycle_start = k;
      }
      if (stack.back().node == target) w.cycle_start = stack.size() - 1;
      w.steps.push_back(n.out[edge].second);
      return w;
    }
    if (color[target] == Color::White) {
      color[target] = Color::Grey;
      stack.push_back({target});
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<FuzzWitness> fuzz_nontermination(const System& sys, const FuzzOptions& options) {
  if (sys.rules.empty()) return std::nullopt;
  std::set<std::string> tried;
  for (std::size_t seed = 0; seed < options.seeds; ++seed) {
    for (const auto& rule : sys.rules) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(rule.index)};
      std::uint32_t value = 0;
      seq.generate(&value, &value + 1);
      Term start = instantiate_rule(rule, sys, value, options.term_depth);
      if (!tried.insert(alpha_key(start)).second) continue;
      if (auto w = search(start, sys.rules, options)) return w;
    }
  }
  return std::nullopt;
}

bool is_valid_witness(const FuzzWitness& w, const RuleSet& rules) {
  if (w.steps.empty() || w.cycle_start >= w.steps.size()) return false;
  Term cur = w.start;
  for (const auto& step : w.steps) {
    bool found = false;
    for (const auto& r : reduce_step(cur, rules))
      if (r.position == step.position && alpha_equal(r.term, step.term)) found = true;
    if (!found) return false;
    cur = step.term;
  }
  return alpha_equal(w.terms()[w.cycle_start], cur);
}

}  // namespace sctcheck
