#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace stiefelgeo {

/// One invariant of a suite. The margin is tolerance minus observed error
/// (or inequality slack plus tolerance); the invariant passes when the worst
/// margin over all samples is nonnegative.
struct InvariantResult {
  std::string suite;
  std::string name;
  std::size_t samples = 0;
  double worst_margin = 0.0;
  bool passed = false;
  std::string error;  ///< exception text, if a sample threw
};

struct CheckReport {
  std::uint64_t seed = 0;
  std::vector<std::string> suites;
  std::vector<InvariantResult> invariants;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// matexp, stiefel, curvature, loops, conjugate.
const std::vector<std::string>& check_suite_names();

/// Runs one suite or "all". Throws DomainError for an unknown suite name.
/// Reports are identical for identical seeds.
CheckReport run_checks(const std::string& suite, std::uint64_t seed);

}  // namespace stiefelgeo
