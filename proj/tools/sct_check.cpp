#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sctcheck/analyze.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Size-change termination checker for dependently typed rewrite systems"};

  std::string file;
  bool json = false;
  std::string dot_path;
  bool list_dps = false;
  bool matrices = false;
  sctcheck::AnalysisOptions options;

  app.add_option("FILE", file, "Input file with symbol and rule declarations")->required();
  app.add_flag("--json", json, "Print the report as JSON");
  app.add_option("--dot", dot_path, "Write the call graph before and after closure in DOT format");
  app.add_flag("--list-dps", list_dps, "Print the dependency pairs");
  app.add_flag("--matrices", matrices, "Print the size-change matrix of every dependency pair");
  app.add_option("--fuel", options.fuel, "Normalization step budget for conversion checks")
      ->capture_default_str();
  app.add_flag("--fuzz", options.fuzz, "Search for a reduction cycle");
  app.add_option("--fuzz-seeds", options.fuzz_seeds, "Number of fuzzing seeds")->capture_default_str();
  app.add_option("--fuzz-depth", options.fuzz_depth, "Reduction depth explored per start term")
      ->capture_default_str();
  app.add_flag("--skip-typing", options.skip_typing, "Check only conditions (b), (c) and size-change");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  sctcheck::Report report = sctcheck::analyze_file(file, options);

  if (!dot_path.empty() && report.system) {
    std::ofstream out(dot_path);
    if (!out) {
      std::cerr << "sct-check: cannot write " << dot_path << "\n";
      return 2;
    }
    out << sctcheck::export_dot(report.graph, "pre_closure") << "\n"
        << sctcheck::export_dot(report.closure, "post_closure", &report.graph);
  }

  if (json) {
    std::cout << sctcheck::report_to_json(report);
  } else {
    if (list_dps) std::cout << sctcheck::format_dependency_pairs(report) << "\n";
    if (matrices) std::cout << sctcheck::format_matrices(report);
    std::cout << sctcheck::report_to_text(report);
  }
  if (report.verdict == sctcheck::Verdict::Error) std::cerr << "sct-check: " << report.error << "\n";
  return sctcheck::exit_code(report.verdict);
}
