// Acceptance driver: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "sctcheck/analyze.hpp"
#include "sctcheck/deppairs.hpp"
#include "sctcheck/sct.hpp"
#include "sctcheck/syntax.hpp"
#include "../support.hpp"

using namespace sctcheck;

namespace {

struct Criterion {
  bool ok = true;
  std::vector<std::string> notes;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

bool same_up_to_renaming(const Term& a, const Term& b, std::map<std::string, std::string>& fwd,
                         std::map<std::string, std::string>& back) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Sort: return a.sort_kind() == b.sort_kind();
    case TermKind::Sym: return a.name() == b.name();
    case TermKind::Var: {
      auto [f, fnew] = fwd.emplace(a.name(), b.name());
      auto [g, gnew] = back.emplace(b.name(), a.name());
      return f->second == b.name() && g->second == a.name();
    }
    default:
      return same_up_to_renaming(a.node()->left, b.node()->left, fwd, back) &&
             same_up_to_renaming(a.node()->right, b.node()->right, fwd, back);
  }
}

const std::vector<std::pair<const char*, const char*>> kExpectedPairs = {
    {"El (arrow a b)", "El a"},
    {"El (arrow a b)", "El b"},
    {"(s p) + q", "p + q"},
    {"app a _ (cons _ x p l) q m", "p + q"},
    {"app a _ (cons _ x p l) q m", "app a p l q m"},
    {"len_fil a f _ (cons _ x p l)", "len_fil_aux (f x) a f p l"},
    {"len_fil a f _ (app _ p l q m)", "(len_fil a f p l) + (len_fil a f q m)"},
    {"len_fil a f _ (app _ p l q m)", "len_fil a f p l"},
    {"len_fil a f _ (app _ p l q m)", "len_fil a f q m"},
    {"len_fil_aux true a f p l", "len_fil a f p l"},
    {"len_fil_aux false a f p l", "len_fil a f p l"},
    {"fil a f _ (cons _ x p l)", "fil_aux (f x) a f x p l"},
    {"fil a f _ (app _ p l q m)", "app a (len_fil a f p l) (fil a f p l) (len_fil a f q m) (fil a f q m)"},
    {"fil a f _ (app _ p l q m)", "len_fil a f p l"},
    {"fil a f _ (app _ p l q m)", "fil a f p l"},
    {"fil a f _ (app _ p l q m)", "len_fil a f q m"},
    {"fil a f _ (app _ p l q m)", "fil a f q m"},
    {"fil_aux true a f x p l", "len_fil a f p l"},
    {"fil_aux true a f x p l", "fil a f p l"},
    {"fil_aux false a f x p l", "fil a f p l"},
};

Criterion dependency_pairs() {
  Criterion c;
  std::string text = testing::read_fixture("example1.sct");
  System sys = build_system_from_text(text);
  auto dps = extract_dependency_pairs(sys.rules, sys.signature);
  c.require(dps.size() == kExpectedPairs.size(), std::to_string(dps.size()) + " pairs");
  for (std::size_t i = 0; i < dps.size() && i < kExpectedPairs.size(); ++i) {
    auto [l, r] = kExpectedPairs[i];
    auto decls = parse_file(text + "\nrule " + l + " --> " + r + ".\n");
    const auto& want = std::get<RuleDecl>(decls.back());
    std::map<std::string, std::string> fwd, back;
    bool same = same_up_to_renaming(dps[i].lhs(), want.lhs, fwd, back) &&
                same_up_to_renaming(dps[i].rhs(), want.rhs, fwd, back);
    c.require(same, dps[i].label + ": " + print_dependency_pair(dps[i], &sys.signature.infix));
  }
  return c;
}

constexpr int X = 1;  // ∞ in matrix literals

// Index of the parameter named "a" in the symbol's telescope, or npos.
std::size_t param_a(const Signature& sig, const std::string& f) {
  Term t = sig.at(f).theta;
  for (std::size_t i = 0; t.is_prod(); ++i, t = t.codomain())
    if (t.binder() == "a") return i;
  return static_cast<std::size_t>(-1);
}

SizeMatrix drop_a(const SizeMatrix& m, const Signature& sig, const std::string& from, const std::string& to) {
  return m.without(param_a(sig, from), param_a(sig, to));
}

const std::map<std::string, SizeMatrix> kExpectedMatrices = [] {
  std::map<std::string, SizeMatrix> m;
  m["C"] = SizeMatrix::from_rows({{-1, X}, {X, 0}});
  m["D"] = SizeMatrix::from_rows({{X, X}, {-1, X}, {X, 0}, {X, X}});
  m["E"] = SizeMatrix::from_rows({{X, X, X, X}, {-1, -1, X, X}, {X, X, 0, X}, {X, X, X, 0}});
  m["F"] = SizeMatrix::from_rows({{X, 0, X, X}, {X, X, X, X}, {X, X, -1, -1}});
  m["G"] = SizeMatrix::from_rows({{X, X}, {X, X}, {X, X}});
  SizeMatrix h = SizeMatrix::from_rows({{0, X, X}, {X, X, X}, {X, -1, -1}});
  for (const char* k : {"H", "I", "N", "O", "P", "Q"}) m[k] = h;
  SizeMatrix j = SizeMatrix::from_rows({{X, X, X}, {0, X, X}, {X, 0, X}, {X, X, 0}});
  m["J"] = m["K"] = j;
  m["L"] = SizeMatrix::from_rows({{X, 0, X, X, X}, {X, X, X, X, X}, {X, X, -1, -1, -1}});
  m["M"] = SizeMatrix::from_rows({{X, X, X, X}, {X, X, X, X}, {X, X, X, X}});
  SizeMatrix r = SizeMatrix::from_rows({{X, X, X}, {0, X, X}, {X, X, X}, {X, 0, X}, {X, X, 0}});
  for (const char* k : {"R", "S", "T"}) m[k] = r;
  return m;
}();

Criterion matrices() {
  Criterion c;
  System sys = testing::load_system("example1.sct");
  auto dps = extract_dependency_pairs(sys.rules, sys.signature);
  const std::vector<std::string> checked = {"C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M", "R", "S", "T"};
  for (const auto& dp : dps) {
    if (std::find(checked.begin(), checked.end(), dp.label) == checked.end()) continue;
    SizeMatrix got = drop_a(build_matrix(dp, sys.signature), sys.signature, dp.lhs_head, dp.rhs_head);
    c.require(got == kExpectedMatrices.at(dp.label), dp.label + ":\n" + got.to_string());
  }
  // The plus pair has no omitted argument and is compared in full.
  c.require(build_matrix(dps.at(2), sys.signature) == kExpectedMatrices.at("C"), "C in full");
  return c;
}

Criterion closure() {
  Criterion c;
  System sys = testing::load_system("example1.sct");
  const Signature& sig = sys.signature;
  auto dps = extract_dependency_pairs(sys.rules, sig);
  std::map<std::string, SizeMatrix> by_label;
  for (const auto& dp : dps) by_label[dp.label] = build_matrix(dp, sig);
  CallGraph closed = transitive_closure(build_call_graph(dps, sig));
  SctResult res = check_sct(closed);

  auto loop_set = [&](const std::string& f) {
    std::vector<SizeMatrix> out;
    if (const auto* set = closed.edge(f, f))
      for (const auto& [m, d] : *set) out.push_back(m.without(param_a(sig, f), param_a(sig, f)));
    return out;
  };
  SizeMatrix tc1 = SizeMatrix::from_rows({{X, X, X, X}, {X, 0, X, X}, {X, X, X, X}, {X, X, -1, -1}});
  SizeMatrix tc4 = SizeMatrix::from_rows(
      {{X, X, X, X, X}, {X, 0, X, X, X}, {X, X, X, X, X}, {X, X, X, X, X}, {X, X, -1, -1, -1}});
  SizeMatrix tc23 = kExpectedMatrices.at("H");

  SizeMatrix j_f = compose(by_label["J"], by_label["F"]);
  SizeMatrix f_j = compose(by_label["F"], by_label["J"]);
  SizeMatrix l_s = compose(by_label["L"], by_label["S"]);
  SizeMatrix s_l = compose(by_label["S"], by_label["L"]);
  c.require(j_f.without(1, 1) == tc1, "TC1 = J x F");
  c.require(f_j.without(0, 0) == tc23, "TC2 = F x J");
  c.require(l_s.without(0, 0) == tc23, "TC3 = L x S");
  c.require(s_l.without(1, 1) == tc4, "TC4 = S x L");
  c.require(f_j == by_label["H"] && l_s == by_label["O"], "TC2 = H and TC3 = O");
  c.require(closed.contains("len_fil_aux", "len_fil_aux", j_f), "TC1 in closure");
  c.require(closed.contains("len_fil", "len_fil", f_j), "TC2 in closure");
  c.require(closed.contains("fil", "fil", l_s), "TC3 in closure");
  c.require(closed.contains("fil_aux", "fil_aux", s_l), "TC4 in closure");
  c.require(loop_set("len_fil_aux") == std::vector<SizeMatrix>{tc1}, "len_fil_aux loops");
  c.require(loop_set("fil_aux") == std::vector<SizeMatrix>{tc4}, "fil_aux loops");
  c.require(loop_set("len_fil") == std::vector<SizeMatrix>{tc23}, "len_fil loops");
  c.require(loop_set("fil") == std::vector<SizeMatrix>{tc23}, "fil loops");
  for (const auto& lm : res.loops) c.require(lm.idempotent, "loop on " + lm.symbol + " not idempotent");
  c.require(res.pass, "sct");
  return c;
}

Criterion verdicts() {
  Criterion c;
  AnalysisOptions o;
  o.measure_timing = false;
  auto has = [](const Report& r, const std::string& needle) {
    for (const auto& s : r.reasons)
      if (s.find(needle) != std::string::npos) return true;
    return false;
  };
  auto run = [&](const char* f, AnalysisOptions opts = {}) {
    opts.measure_timing = false;
    return analyze_file(testing::fixture_path(f), opts);
  };

  Report ex1 = run("example1.sct");
  c.require(ex1.verdict == Verdict::Terminating && exit_code(ex1.verdict) == 0, "example1");
  c.require(run("plus.sct").verdict == Verdict::Terminating, "plus");

  AnalysisOptions fuzz;
  fuzz.fuzz = true;
  fuzz.fuzz_depth = 5;
  Report app = run("app_f.sct", fuzz);
  c.require(app.verdict == Verdict::Maybe && !app.sct.pass, "app_f sct");
  c.require(app.witness && app.witness->cycle_length() == 2 && app.witness->steps.size() <= 5 &&
                is_valid_witness(*app.witness, app.system->rules),
            "app_f witness");

  Report ord = run("ordrec.sct");
  c.require(ord.verdict == Verdict::Maybe && has(ord, "pfp fails for rule 2 on f"), "ordrec pfp");
  bool lim_loop = false;
  for (const auto& v : ord.sct.violations)
    for (const auto& label : v.derivation)
      for (const auto& dp : ord.dps)
        lim_loop |= dp.label == label && dp.source_rule == 2;
  c.require(!ord.sct.pass && lim_loop, "ordrec sct on the lim rule");

  Report stlc = run("stlc.sct");
  c.require(stlc.verdict == Verdict::Maybe && has(stlc, "pfp fails"), "stlc");
  Report div = run("division.sct");
  c.require(div.verdict == Verdict::Maybe && has(div, "idempotent loop on div"), "division");
  Report inc = run("size_increase.sct");
  c.require(inc.verdict == Verdict::Maybe && !inc.sct.pass, "size_increase");
  return c;
}

Criterion properties() {
  Criterion c;
  std::mt19937 rng(5);
  auto random_matrix = [&](std::size_t r, std::size_t k) {
    SizeMatrix m(r, k);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < k; ++j) m.set(i, j, static_cast<Entry>(static_cast<int>(rng() % 3) - 1));
    return m;
  };
  auto closed_entries = [](const SizeMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        int e = static_cast<int>(m.at(i, j));
        if (e < -1 || e > 1) return false;
      }
    return true;
  };
  bool assoc = true;
  for (int n = 0; n < 2000; ++n) {
    std::size_t a = 1 + rng() % 4, b = 1 + rng() % 4, d = 1 + rng() % 4, e = 1 + rng() % 4;
    SizeMatrix x = random_matrix(a, b), y = random_matrix(b, d), z = random_matrix(d, e);
    SizeMatrix left = compose(compose(x, y), z), right = compose(x, compose(y, z));
    assoc &= left == right && closed_entries(left);
  }
  c.require(assoc, "compose associativity");

  bool idem = true;
  for (int n = 0; n < 1000; ++n) {
    CallGraph g;
    std::size_t nodes = 1 + rng() % 4, edges = rng() % 6;
    std::vector<std::size_t> dim(nodes);
    for (auto& d : dim) d = 1 + rng() % 3;
    for (std::size_t k = 0; k < edges; ++k) {
      std::size_t f = rng() % nodes, t = rng() % nodes;
      g.add("f" + std::to_string(f), "f" + std::to_string(t), random_matrix(dim[f], dim[t]), {"e" + std::to_string(k)});
    }
    CallGraph once = transitive_closure(g);
    idem &= transitive_closure(once) == once;
  }
  c.require(idem, "closure idempotence");

  testing::TermSampler sampler(17);
  bool roundtrip = true;
  for (int n = 0; n < 1000; ++n) {
    Term pattern = sampler.sample(3);
    Substitution sigma;
    for (const auto& v : pattern.free_vars()) sigma[v] = sampler.sample(2);
    Term instance = substitute(pattern, sigma);
    auto m = match(pattern, instance);
    roundtrip &= m.has_value() && alpha_equal(substitute(pattern, *m), instance);
  }
  c.require(roundtrip, "match/substitute");

  System sampler_sys = build_system_from_text(testing::kSamplerSystem);
  bool complete = true;
  for (int n = 0; n < 1000; ++n) {
    Term t = sampler.sample(4);
    auto got = reduce_step(t, sampler_sys.rules);
    auto want = testing::brute_force_reducts(t, sampler_sys.rules);
    complete &= got.size() == want.size();
    for (std::size_t k = 0; complete && k < got.size(); ++k)
      complete &= got[k].position == want[k].position && alpha_equal(got[k].term, want[k].term);
  }
  c.require(complete, "reduce_step completeness");

  bool printed = true;
  for (const char* f : {"example1.sct", "plus.sct", "list_length.sct", "app_f.sct", "ordrec.sct", "stlc.sct",
                        "division.sct", "size_increase.sct"}) {
    auto decls = parse_file(testing::read_fixture(f));
    std::string once = print_file(decls);
    printed &= print_file(parse_file(once)) == once;
  }
  c.require(printed, "parse/print roundtrip");
  return c;
}

Criterion soundness_smoke() {
  Criterion c;
  FuzzOptions o;
  o.seeds = 64;
  o.depth = 100;
  for (const char* f : {"example1.sct", "plus.sct", "list_length.sct", "app_f.sct", "ordrec.sct", "stlc.sct",
                        "division.sct", "size_increase.sct"}) {
    AnalysisOptions ao;
    ao.measure_timing = false;
    Report r = analyze_file(testing::fixture_path(f), ao);
    if (r.verdict != Verdict::Terminating) continue;
    c.require(!fuzz_nontermination(*r.system, o).has_value(), std::string(f) + " has a witness");
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Criterion()>>> criteria = {
      {"dependency pairs of the list example", dependency_pairs},
      {"size-change matrices of the list example", matrices},
      {"closure loops of the list example", closure},
      {"verdict corpus", verdicts},
      {"property suites", properties},
      {"no fuzz witness on terminating systems", soundness_smoke},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.notes.push_back(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %zu: %s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first);
    for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
    failures += c.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
