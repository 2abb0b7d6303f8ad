#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "leibniz/error.hpp"
#include "leibniz/family_spec.hpp"
#include "leibniz/io.hpp"
#include "leibniz/suite.hpp"

namespace {

using namespace leibniz;

constexpr int kUsageError = 2;

std::set<std::string> split_checks(const std::string& text) {
  std::set<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification engine for Leibniz algebra families"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  std::string format = "json";
  bool timings = false;
  app.add_option("--out", out_path, "Write the report to this file instead of standard output");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timings", timings, "Include wall-clock seconds per record (breaks bit-identical re-runs)");

  auto* construct = app.add_subcommand("construct", "Print the algebra JSON for a family spec such as mu1:n=8,k=2");
  std::string family;
  construct->add_option("spec", family, "Family spec string")->required();

  auto* analyze = app.add_subcommand("analyze", "Run checks on an algebra JSON document");
  std::string input = "-";
  std::string spec_input;
  std::string checks_text = "leibniz,series,annihilator,charseq,derivations,cohomology,complete";
  analyze->add_option("input", input, "Algebra JSON file, or - for standard input");
  analyze->add_option("--family", spec_input, "Analyze a family spec instead of a JSON document");
  analyze->add_option("--checks", checks_text,
                      "Comma-separated subset of leibniz,series,annihilator,charseq,derivations,cohomology,complete");

  auto* suite = app.add_subcommand("paper-suite", "Run every registry claim over a parameter grid");
  SuiteConfig config;
  std::string modules_text;
  suite->add_option("--seed", config.seed, "Seed of the single random generator");
  suite->add_option("--n-max", config.n_max, "Largest n in the grid");
  suite->add_option("--k-max", config.k_max, "Largest k in the grid");
  suite->add_option("--samples", config.samples, "Random parameter tuples per (n,k)");
  suite->add_option("--transports", config.transports, "Random basis changes per property-suite algebra");
  suite->add_option("--max-cohomology-dim", config.max_cohomology_dim, "Skip HL^2 above this dimension");
  suite->add_option("--modules", modules_text,
                    "Comma-separated subset of core_algebra,families,derivations,cohomology,isomorphism");
  suite->add_option("--threads", config.threads, "Worker threads (0 = hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*construct) {
      const Algebra a = construct_from_spec(family);
      emit(format == "json" ? algebra_to_json(a).dump(2) + "\n" : algebra_to_text(a), out_path);
      return 0;
    }
    if (*analyze) {
      Algebra a;
      std::string instance;
      if (!spec_input.empty()) {
        a = construct_from_spec(spec_input);
        instance = spec_input;
      } else {
        a = algebra_from_string(read_input(input));
        instance = input == "-" ? "stdin" : input;
      }
      const auto records = analyze_algebra(a, split_checks(checks_text), instance);
      emit(format == "json" ? analysis_to_json(records, instance, timings).dump(2) + "\n"
                            : records_to_text(records, timings),
           out_path);
      for (const auto& r : records)
        if (r.verdict == Verdict::Fail) return 1;
      return 0;
    }
    config.modules = split_checks(modules_text);
    validate(config);
    const SuiteReport report = run_paper_suite(config);
    if (format == "json") {
      emit(suite_to_json(report, timings).dump(2) + "\n", out_path);
      if (!out_path.empty()) std::cerr << suite_to_text(report, timings);
    } else {
      emit(suite_to_text(report, timings), out_path);
    }
    return report.any_fail() ? 1 : 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ConstraintViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
