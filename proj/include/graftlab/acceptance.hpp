#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace graftlab {

enum class Profile { Quick, Full };

inline constexpr std::uint64_t kDefaultSeed = 0x6a7f;

struct AcceptanceOptions {
  Profile profile = Profile::Full;
  std::uint64_t seed = kDefaultSeed;
  bool fail_fast = false;  // stop a criterion at its first failure (used by the mutation sweep)
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = true;
  std::size_t checks = 0;
  std::string detail;  // first failure, or a summary
  double seconds = 0;
};

inline constexpr int kCriterionCount = 10;

// Criteria 1..10. Each result is deterministic for a given seed and profile.
CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

// "PASS  criterion 3: ..." single line; the timing suffix is optional so reports can be byte-stable.
std::string format_line(const CriterionResult& r, bool with_time = true);

}  // namespace graftlab
