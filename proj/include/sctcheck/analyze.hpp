#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sctcheck/deppairs.hpp"
#include "sctcheck/fuzz.hpp"
#include "sctcheck/sct.hpp"
#include "sctcheck/signature.hpp"
#include "sctcheck/typecheck.hpp"

namespace sctcheck {

struct AnalysisOptions {
  std::size_t fuel = 10000;
  bool skip_typing = false;
  bool fuzz = false;
  std::size_t fuzz_seeds = 16;
  std::size_t fuzz_depth = 50;
  /// When false, timing_ms is reported as 0 so that reports are reproducible.
  bool measure_timing = true;
};

enum class Verdict { Terminating, Maybe, Error };

const char* to_string(Verdict v);

/// 0 TERMINATING, 1 MAYBE, 2 ERROR.
int exit_code(Verdict v);

enum class CheckStatus { Pass, Fail, Unknown, Skipped };

const char* to_string(CheckStatus s);

struct RuleReport {
  std::size_t rule = 0;
  int line = 0;
  std::string text;
  RuleArityCheck arity;
  std::optional<std::string> environment_error;
  std::vector<TypedVariable> delta;
  CheckStatus d = CheckStatus::Skipped;
  std::string d_reason;
  std::vector<std::string> d_trace;
  CheckStatus pfp = CheckStatus::Skipped;
  std::string pfp_variable;
  std::string pfp_reason;
};

struct Report {
  Verdict verdict = Verdict::Error;
  std::vector<std::string> reasons;
  std::string error;

  std::optional<System> system;
  std::vector<DependencyPair> dps;
  std::vector<SizeMatrix> matrices;  // parallel to dps
  std::vector<CallArityCheck> call_arity;
  std::vector<RuleReport> rules;
  CallGraph graph;
  CallGraph closure;
  SctResult sct;
  std::optional<FuzzWitness> witness;
  bool typing_skipped = false;
  double timing_ms = 0;
};

Report analyze_text(std::string_view text, const AnalysisOptions& options = {});
Report analyze_file(const std::string& path, const AnalysisOptions& options = {});

/// Machine-readable report; byte-identical for identical reports.
std::string report_to_json(const Report& report);

/// Human-readable summary.
std::string report_to_text(const Report& report);

/// One line per pair: `A: f l1 ... > g m1 ...`.
std::string format_dependency_pairs(const Report& report);

/// Each pair followed by its matrix.
std::string format_matrices(const Report& report);

/// DOT rendering of g. When base is given, matrices absent from base are drawn
/// dashed.
std::string export_dot(const CallGraph& g, std::string_view name, const CallGraph* base = nullptr);

}  // namespace sctcheck
