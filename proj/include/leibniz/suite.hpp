#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/io.hpp"

namespace leibniz {

enum class Verdict { Pass, Fail, Flagged };

std::string_view verdict_name(Verdict v);

/// One entry of the fixed claim registry. `module` is the engine module the claim exercises,
/// `statement` the mathematical assertion being checked.
struct Claim {
  std::string id;
  std::string module;
  std::string statement;
};

/// Registry in suite order.
const std::vector<Claim>& claim_registry();
/// Throws Error for an unknown id.
const Claim& find_claim(std::string_view id);

struct VerificationRecord {
  std::string claim_id;
  std::string instance;  // family spec string, or a context description
  Verdict verdict = Verdict::Fail;
  Json evidence = Json::object();
  double seconds = 0;
};

struct SuiteConfig {
  std::size_t n_max = 10;
  std::size_t k_max = 3;
  std::size_t samples = 5;
  std::uint64_t seed = 0;
  std::set<std::string> modules;           // empty = every module
  std::size_t max_cohomology_dim = 12;     // HL^2 instances above this size are skipped
  std::size_t transports = 10;             // random basis changes per property-suite algebra
  std::size_t threads = 0;                 // 0 = hardware concurrency
};

/// Throws ConstraintViolation for grids that contain no valid family instance.
void validate(const SuiteConfig& config);

struct SuiteReport {
  SuiteConfig config;
  std::vector<VerificationRecord> records;  // registry order, then grid order

  std::size_t count(Verdict v) const;
  bool any_fail() const { return count(Verdict::Fail) > 0; }
};

/// Runs every registry claim over the configured grid. Random parameters are drawn up front
/// from a single mt19937_64 seeded with config.seed, so records do not depend on scheduling.
SuiteReport run_paper_suite(const SuiteConfig& config);

/// Names accepted by analyze_algebra, in report order.
const std::vector<std::string>& analyze_check_names();

/// One record per requested check, in analyze_check_names() order. Unknown names throw ParseError.
std::vector<VerificationRecord> analyze_algebra(const Algebra& a, const std::set<std::string>& checks,
                                                const std::string& instance);

Json record_to_json(const VerificationRecord& r, bool timings);
Json suite_to_json(const SuiteReport& report, bool timings);
Json analysis_to_json(const std::vector<VerificationRecord>& records, const std::string& instance, bool timings);
std::string records_to_text(const std::vector<VerificationRecord>& records, bool timings);
std::string suite_to_text(const SuiteReport& report, bool timings);

}  // namespace leibniz
