#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lipfree/scalar.hpp"

namespace lipfree {

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0;  // largest observed gap or violation
  std::string note;

  bool passed() const noexcept { return failures == 0; }
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 42;
  Mode mode = Mode::Float;  // arithmetic actually used
  std::vector<CheckResult> checks;

  bool passed() const noexcept;
};

// s2 projection (float only), s3 molecules and free norms, s4 duality,
// s5 quotient, s6 real line (exact only).
const std::vector<std::string>& suite_names();

// Deterministic for a fixed (name, seed, mode). Throws Error on an unknown name.
SuiteReport run_suite(std::string_view name, std::uint64_t seed, Mode mode);

// "all" expands to every suite.
std::vector<SuiteReport> run_suites(std::string_view name, std::uint64_t seed, Mode mode);

nlohmann::json to_json(const SuiteReport& r);

}  // namespace lipfree
