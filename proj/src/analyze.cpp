#include "sctcheck/analyze.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "sctcheck/syntax.hpp"

namespace sctcheck {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Terminating: return "TERMINATING";
    case Verdict::Maybe: return "MAYBE";
    case Verdict::Error: return "ERROR";
  }
  return "ERROR";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Terminating: return 0;
    case Verdict::Maybe: return 1;
    case Verdict::Error: return 2;
  }
  return 2;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Unknown: return "unknown";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

namespace {

CheckStatus status_of(Outcome o) {
  switch (o) {
    case Outcome::Pass: return CheckStatus::Pass;
    case Outcome::Fail: return CheckStatus::Fail;
    case Outcome::Unknown: return CheckStatus::Unknown;
  }
  return CheckStatus::Fail;
}

std::string rule_text(const Rule& r, const InfixTable& infix) {
  return print_term(r.lhs, &infix) + " --> " + print_term(r.rhs, &infix);
}

void type_rules(Report& rep, const AnalysisOptions& options) {
  const System& sys = *rep.system;
  for (RuleReport& rr : rep.rules) {
    const Rule& rule = sys.rules[rr.rule];
    if (!rr.arity.pass) {
      rr.d = CheckStatus::Fail;
      rr.d_reason = "condition (b) fails";
      rr.pfp = CheckStatus::Fail;
      rr.pfp_reason = "condition (b) fails";
      continue;
    }
    RuleEnvironment env;
    try {
      env = infer_rule_environment(rule, sys.signature, sys.rules, options.fuel);
    } catch (const EnvironmentError& e) {
      rr.environment_error = e.what();
      rr.d = CheckStatus::Fail;
      rr.d_reason = std::string("no typing environment: ") + e.what();
      rr.pfp = CheckStatus::Fail;
      rr.pfp_reason = rr.d_reason;
      continue;
    }
    rr.delta = env.delta.entries();
    ConditionDResult d = check_condition_d(rule, env, sys, rep.dps, options.fuel);
    rr.d = status_of(d.outcome);
    rr.d_reason = d.reason;
    rr.d_trace = std::move(d.trace);
    PfpResult pfp = check_pfp(rule, env, sys.signature, sys.rules, options.fuel);
    rr.pfp = pfp.pass ? CheckStatus::Pass : CheckStatus::Fail;
    rr.pfp_variable = pfp.variable;
    rr.pfp_reason = pfp.reason;
  }
}

void decide(Report& rep) {
  const System& sys = *rep.system;
  const InfixTable& infix = sys.signature.infix;
  bool ok = true;
  for (const auto& rr : rep.rules)
    if (!rr.arity.pass) {
      ok = false;
      rep.reasons.push_back("condition (b) fails for rule " + std::to_string(rr.rule) + ": " + rr.text);
    }
  for (const auto& c : rep.call_arity)
    if (!c.pass) {
      ok = false;
      rep.reasons.push_back("condition (c) fails for pair " + rep.dps[c.dp].label + ": " +
                            print_dependency_pair(rep.dps[c.dp], &infix));
    }
  if (rep.typing_skipped) {
    ok = false;
    rep.reasons.push_back("condition (d) skipped");
    rep.reasons.push_back("pfp skipped");
  } else {
    for (const auto& rr : rep.rules) {
      if (!rr.arity.pass) continue;
      if (rr.d != CheckStatus::Pass) {
        ok = false;
        rep.reasons.push_back("condition (d) " + std::string(to_string(rr.d)) + " for rule " +
                              std::to_string(rr.rule) + ": " + rr.d_reason);
      }
      if (rr.pfp != CheckStatus::Pass && !rr.environment_error) {
        ok = false;
        rep.reasons.push_back("pfp fails for rule " + std::to_string(rr.rule) +
                              (rr.pfp_variable.empty() ? "" : " on " + rr.pfp_variable) + ": " + rr.pfp_reason);
      }
    }
  }
  if (!rep.sct.pass) {
    ok = false;
    for (const auto& v : rep.sct.violations) {
      std::string chain;
      for (const auto& l : v.derivation) chain += (chain.empty() ? "" : "*") + l;
      rep.reasons.push_back("sct fails: idempotent loop on " + v.symbol + " (" + chain +
                            ") has no decreasing diagonal entry");
    }
  }
  rep.verdict = ok ? Verdict::Terminating : Verdict::Maybe;
}

}  // namespace

Report analyze_text(std::string_view text, const AnalysisOptions& options) {
  auto started = std::chrono::steady_clock::now();
  Report rep;
  try {
    rep.system = build_system_from_text(text);
  } catch (const ParseError& e) {
    rep.verdict = Verdict::Error;
    rep.error = std::string("parse error at ") + e.what();
    return rep;
  } catch (const SignatureError& e) {
    rep.verdict = Verdict::Error;
    rep.error = std::string("signature error: ") + e.what();
    return rep;
  }
  const System& sys = *rep.system;

  rep.dps = extract_dependency_pairs(sys.rules, sys.signature);
  for (const auto& dp : rep.dps) rep.matrices.push_back(build_matrix(dp, sys.signature));
  rep.call_arity = check_condition_c(rep.dps, sys.signature);
  for (const auto& b : check_condition_b(sys.rules, sys.signature)) {
    RuleReport rr;
    rr.rule = b.rule;
    rr.line = sys.rules[b.rule].line;
    rr.text = rule_text(sys.rules[b.rule], sys.signature.infix);
    rr.arity = b;
    rep.rules.push_back(std::move(rr));
  }

  rep.graph = build_call_graph(rep.dps, sys.signature);
  rep.closure = transitive_closure(rep.graph);
  rep.sct = check_sct(rep.closure);

  rep.typing_skipped = options.skip_typing;
  if (!options.skip_typing) type_rules(rep, options);

  if (options.fuzz) {
    FuzzOptions fo;
    fo.seeds = options.fuzz_seeds;
    fo.depth = options.fuzz_depth;
    rep.witness = fuzz_nontermination(sys, fo);
  }

  decide(rep);
  if (options.measure_timing)
    rep.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return rep;
}

Report analyze_file(const std::string& path, const AnalysisOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    Report rep;
    rep.verdict = Verdict::Error;
    rep.error = "cannot read " + path;
    return rep;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return analyze_text(buf.str(), options);
}

}  // namespace sctcheck
