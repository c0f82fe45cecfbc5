#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "sctcheck/rewrite.hpp"
#include "sctcheck/signature.hpp"
#include "sctcheck/syntax.hpp"
#include "sctcheck/term.hpp"

namespace sctcheck::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(SCTCHECK_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline System load_system(const std::string& name) { return build_system_from_text(read_fixture(name)); }

/// Parses `text` as a term over the symbols declared in `prelude`; unknown
/// identifiers become variables (it is read as a rule argument).
inline Term parse_term_in(const std::string& prelude, const std::string& text) {
  auto decls = parse_file(prelude + "\nsymbol zzprobe: TYPE.\nrule zzprobe (" + text + ") --> zzprobe.\n");
  return std::get<RuleDecl>(decls.back()).lhs.arg();
}

/// The rule declared on the given 0-based rule index of a fixture.
inline const Rule& rule_at(const System& sys, std::size_t i) { return sys.rules[i]; }

/// Random untyped terms over z, s, p, d, with λ and β-redexes, at most the
/// given depth.
class TermSampler {
 public:
  explicit TermSampler(unsigned seed) : rng_(seed) {}

  Term sample(int depth) { return gen(depth, 0); }

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

 private:
  Term gen(int depth, int bound) {
    const Term n = Term::sym("N");
    std::size_t choices = depth <= 0 ? 2 : 8;
    switch (pick(choices)) {
      case 0: return Term::sym("z");
      case 1: {
        static const char* free[] = {"u", "v"};
        if (bound > 0 && pick(2) == 0) return Term::var("x" + std::to_string(pick(bound)));
        return Term::var(free[pick(2)]);
      }
      case 2: return Term::app(Term::sym("s"), gen(depth - 1, bound));
      case 3: return Term::app(Term::app(Term::sym("p"), gen(depth - 1, bound)), gen(depth - 1, bound));
      case 4: return Term::app(Term::sym("d"), gen(depth - 1, bound));
      case 5: {
        std::string x = "x" + std::to_string(bound);
        return Term::abs(x, n, gen(depth - 1, bound + 1));
      }
      case 6: {
        std::string x = "x" + std::to_string(bound);
        return Term::app(Term::abs(x, n, gen(depth - 2, bound + 1)), gen(depth - 1, bound));
      }
      default: return Term::app(Term::sym("p"), gen(depth - 1, bound));
    }
  }

  std::mt19937 rng_;
};

/// Signature and rules used with TermSampler.
inline const char* kSamplerSystem = R"(
symbol N: TYPE.
symbol z: N.
symbol s: N -> N.
symbol p: N -> N -> N.
symbol d: N -> N.
rule p z y --> y.
rule p (s x) y --> s (p x y).
rule d x --> p x x.
rule p x x --> d x.
rule d (s z) --> z.
)";

// Independent enumeration: visit every node of the binary tree in preorder
// and try β then every rule at that node.
inline void preorder(const Term& t, Position& pos, std::vector<Position>& out) {
  out.push_back(pos);
  if (t.is_app() || t.is_prod() || t.is_abs()) {
    pos.push_back(0);
    preorder(t.node()->left, pos, out);
    pos.back() = 1;
    preorder(t.node()->right, pos, out);
    pos.pop_back();
  }
}

inline std::vector<Reduct> brute_force_reducts(const Term& t, const RuleSet& rules) {
  std::vector<Position> positions;
  Position pos;
  preorder(t, pos, positions);
  std::vector<Reduct> out;
  for (const auto& p : positions) {
    Term sub = subterm_at(t, p);
    if (sub.is_app() && sub.fun().is_abs()) {
      Term contractum = substitute(sub.fun().body(), {{sub.fun().binder(), sub.arg()}});
      out.push_back({replace_at(t, p, contractum), ReductKind::Beta, 0, p});
    }
    for (std::size_t i = 0; i < rules.size(); ++i)
      if (auto m = match(rules[i].lhs, sub))
        out.push_back({replace_at(t, p, substitute(rules[i].rhs, *m)), ReductKind::Rule, i, p});
  }
  return out;
}

}  // namespace sctcheck::testing
