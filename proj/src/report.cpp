#include <cmath>
#include <sstream>

#include <json.hpp>

#include "sctcheck/analyze.hpp"
#include "sctcheck/syntax.hpp"

namespace sctcheck {

namespace {

using Json = nlohmann::ordered_json;

Json matrix_json(const SizeMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      switch (m.at(i, j)) {
        case Entry::MinusOne: row.push_back(-1); break;
        case Entry::Zero: row.push_back(0); break;
        case Entry::Infinity: row.push_back("inf"); break;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json position_json(const Position& p) {
  Json out = Json::array();
  for (int i : p) out.push_back(i);
  return out;
}

Json loop_json(const LoopMatrix& l) {
  Json j;
  j["symbol"] = l.symbol;
  j["matrix"] = matrix_json(l.matrix);
  j["derivation"] = l.derivation;
  j["idempotent"] = l.idempotent;
  j["decreasing"] = l.decreasing;
  return j;
}

std::string chain_label(const CallGraph::Derivation& d) {
  std::string out;
  for (const auto& l : d) out += (out.empty() ? "" : "*") + l;
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::size_t count_pass(const std::vector<RuleReport>& rules, CheckStatus RuleReport::*field) {
  std::size_t n = 0;
  for (const auto& r : rules) n += (r.*field == CheckStatus::Pass);
  return n;
}

}  // namespace

std::string report_to_json(const Report& rep) {
  Json j;
  j["verdict"] = to_string(rep.verdict);
  j["reasons"] = rep.reasons;
  if (!rep.error.empty()) j["error"] = rep.error;
  j["assumptions"] = {{"local_confluence", "unchecked"}, {"subject_reduction", "unchecked"}};

  const InfixTable* infix = rep.system ? &rep.system->signature.infix : nullptr;

  Json conditions;
  if (rep.system) {
    conditions["a"] = {{"status", "pass"}};
    Json b = Json::array();
    Json d = Json::array();
    Json pfp = Json::array();
    for (const auto& rr : rep.rules) {
      b.push_back({{"rule", rr.rule},
                   {"line", rr.line},
                   {"status", rr.arity.pass ? "pass" : "fail"},
                   {"args", rr.arity.args},
                   {"arity", rr.arity.arity}});
      Json dj = {{"rule", rr.rule}, {"status", to_string(rr.d)}};
      if (!rr.d_reason.empty()) dj["reason"] = rr.d_reason;
      if (!rr.d_trace.empty()) dj["trace"] = rr.d_trace;
      if (!rr.delta.empty()) {
        Json env = Json::array();
        for (const auto& v : rr.delta) env.push_back({{"name", v.name}, {"type", print_term(v.type, infix)}});
        dj["environment"] = std::move(env);
      }
      d.push_back(std::move(dj));
      Json pj = {{"rule", rr.rule}, {"status", to_string(rr.pfp)}};
      if (!rr.pfp_variable.empty()) pj["variable"] = rr.pfp_variable;
      if (!rr.pfp_reason.empty()) pj["reason"] = rr.pfp_reason;
      pfp.push_back(std::move(pj));
    }
    Json c = Json::array();
    for (const auto& ca : rep.call_arity)
      c.push_back({{"dp", rep.dps[ca.dp].label},
                   {"status", ca.pass ? "pass" : "fail"},
                   {"args", ca.args},
                   {"arity", ca.arity}});
    conditions["b"] = std::move(b);
    conditions["c"] = std::move(c);
    conditions["d"] = std::move(d);
    conditions["pfp"] = std::move(pfp);
    Json violations = Json::array();
    for (const auto& v : rep.sct.violations) violations.push_back(loop_json(v));
    conditions["sct"] = {{"status", rep.sct.pass ? "pass" : "fail"}, {"violations", std::move(violations)}};
  }
  j["conditions"] = std::move(conditions);

  Json dps = Json::array();
  Json matrices = Json::array();
  for (std::size_t i = 0; i < rep.dps.size(); ++i) {
    const DependencyPair& dp = rep.dps[i];
    dps.push_back({{"label", dp.label},
                   {"rule", dp.source_rule},
                   {"lhs_head", dp.lhs_head},
                   {"rhs_head", dp.rhs_head},
                   {"lhs", print_term(dp.lhs(), infix)},
                   {"rhs", print_term(dp.rhs(), infix)},
                   {"position", position_json(dp.rhs_position)}});
    matrices.push_back({{"dp", dp.label},
                        {"from", dp.lhs_head},
                        {"to", dp.rhs_head},
                        {"entries", matrix_json(rep.matrices[i])}});
  }
  j["dependency_pairs"] = std::move(dps);
  j["matrices"] = std::move(matrices);

  Json loops = Json::array();
  for (const auto& l : rep.sct.loops) loops.push_back(loop_json(l));
  j["closure_loops"] = std::move(loops);

  if (rep.system) {
    Json classes = Json::array();
    for (const auto& cls : rep.system->precedence.classes()) classes.push_back(cls);
    j["precedence"] = {{"classes", std::move(classes)}};
  }

  if (rep.witness) {
    Json trace = Json::array();
    for (const auto& s : rep.witness->steps) {
      Json step = {{"term", print_term(s.term, infix)}, {"kind", s.kind == ReductKind::Beta ? "beta" : "rule"}};
      if (s.kind == ReductKind::Rule) step["rule"] = s.rule;
      step["position"] = position_json(s.position);
      trace.push_back(std::move(step));
    }
    j["fuzz_witness"] = {{"start", print_term(rep.witness->start, infix)},
                         {"trace", std::move(trace)},
                         {"cycle_start", rep.witness->cycle_start},
                         {"cycle_length", rep.witness->cycle_length()}};
  } else {
    j["fuzz_witness"] = nullptr;
  }
  j["timing_ms"] = static_cast<long long>(std::llround(rep.timing_ms));
  return j.dump(2) + "\n";
}

std::string report_to_text(const Report& rep) {
  std::ostringstream out;
  out << "verdict: " << to_string(rep.verdict) << "\n";
  if (!rep.error.empty()) {
    out << "error: " << rep.error << "\n";
    return out.str();
  }
  for (const auto& r : rep.reasons) out << "  - " << r << "\n";
  std::size_t b_pass = 0;
  for (const auto& rr : rep.rules) b_pass += rr.arity.pass;
  std::size_t c_pass = 0;
  for (const auto& c : rep.call_arity) c_pass += c.pass;
  const std::size_t n = rep.rules.size();
  out << "rules: " << n << ", dependency pairs: " << rep.dps.size()
      << ", closure matrices: " << rep.closure.matrix_count() << "\n";
  out << "condition (b): " << b_pass << "/" << n << " rules pass\n";
  out << "condition (c): " << c_pass << "/" << rep.call_arity.size() << " pairs pass\n";
  if (rep.typing_skipped) {
    out << "condition (d): skipped\n";
    out << "pfp: skipped\n";
  } else {
    out << "condition (d): " << count_pass(rep.rules, &RuleReport::d) << "/" << n << " rules pass\n";
    out << "pfp: " << count_pass(rep.rules, &RuleReport::pfp) << "/" << n << " rules pass\n";
  }
  out << "sct: " << (rep.sct.pass ? "pass" : "fail") << " (" << rep.sct.loops.size() << " loop matrices, "
      << rep.sct.violations.size() << " violations)\n";
  if (rep.witness) {
    const InfixTable* infix = &rep.system->signature.infix;
    out << "fuzz witness (cycle of length " << rep.witness->cycle_length() << "):\n";
    auto terms = rep.witness->terms();
    for (std::size_t i = 0; i < terms.size(); ++i)
      out << (i == 0 ? "    " : "  > ") << print_term(terms[i], infix)
          << (i == rep.witness->cycle_start ? "   <- cycle start" : "") << "\n";
  }
  return out.str();
}

std::string format_dependency_pairs(const Report& rep) {
  std::ostringstream out;
  const InfixTable* infix = rep.system ? &rep.system->signature.infix : nullptr;
  for (const auto& dp : rep.dps) out << dp.label << ": " << print_dependency_pair(dp, infix) << "\n";
  return out.str();
}

std::string format_matrices(const Report& rep) {
  std::ostringstream out;
  const InfixTable* infix = rep.system ? &rep.system->signature.infix : nullptr;
  for (std::size_t i = 0; i < rep.dps.size(); ++i) {
    out << rep.dps[i].label << ": " << print_dependency_pair(rep.dps[i], infix) << "\n";
    out << rep.matrices[i].to_string() << "\n";
  }
  for (const auto& l : rep.sct.loops)
    out << "loop " << l.symbol << " (" << chain_label(l.derivation) << ")"
        << (l.idempotent ? " idempotent" : "") << (l.decreasing ? " decreasing" : "") << "\n"
        << l.matrix.to_string() << "\n";
  return out.str();
}

std::string export_dot(const CallGraph& g, std::string_view name, const CallGraph* base) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  node [shape=box, fontname=\"monospace\"];\n";
  for (const auto& n : g.nodes()) out << "  \"" << dot_escape(n) << "\";\n";
  for (const auto& [key, set] : g.edges()) {
    for (const auto& [m, d] : set) {
      std::string label = chain_label(d);
      std::string rows = m.to_string();
      for (std::size_t p = rows.find('\n'); p != std::string::npos; p = rows.find('\n', p + 2))
        rows.replace(p, 1, "\\n");
      out << "  \"" << dot_escape(key.first) << "\" -> \"" << dot_escape(key.second) << "\" [label=\""
          << dot_escape(label) << "\\n" << rows << "\"";
      if (base != nullptr && !base->contains(key.first, key.second, m)) out << ", style=dashed";
      out << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace sctcheck
