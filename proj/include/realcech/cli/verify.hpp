#pragma once

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace realcech {

struct VerifyOptions {
  std::vector<std::string> spaces;  // empty: every catalog entry
  int samples = 100;                // random flat cocycles per space
  std::uint64_t seed = 1;
  std::function<void(const std::string&)> progress;  // optional, one line per space
};

// One failed check with enough context to reproduce it.
struct VerifyFailure {
  std::string suite;
  std::string space;
  std::string check;
  nlohmann::ordered_json detail;
};

struct SuiteResult {
  std::string suite;
  std::size_t checks = 0;
  std::vector<VerifyFailure> failures;

  bool passed() const { return failures.empty(); }
};

// snf, les, refinement, bockstein
const std::vector<std::string>& suite_names();

// `all` runs every suite. Throws std::invalid_argument for an unknown suite.
std::vector<SuiteResult> run_suites(const std::string& suite, const VerifyOptions& options);

nlohmann::ordered_json to_json(const VerifyFailure& f);
nlohmann::ordered_json to_json(const SuiteResult& r);

}  // namespace realcech
