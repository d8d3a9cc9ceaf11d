#pragma once

// Seeded sweep over every checkable invariant of the library. Output is a
// pure function of (seed, level, fault flag).

#include <cstdint>
#include <string>
#include <vector>

namespace symbidisc {

enum class SelftestLevel { quick, full };

struct SelftestOptions {
  std::uint64_t seed = 42;
  SelftestLevel level = SelftestLevel::quick;
  /// Negative control: flips the sign of s in Phi inside the royal-collapse check.
  bool inject_phi_sign_fault = false;
};

struct CheckOutcome {
  std::string module;
  std::string name;
  int samples = 0;
  double worst = 0;  // largest residual (or failure count)
  double limit = 0;
  bool passed = false;
};

struct SelftestReport {
  std::vector<CheckOutcome> checks;
  bool all_passed() const;
};

SelftestReport run_selftest(const SelftestOptions& options);

/// One line per check followed by a summary line.
std::string format_report(const SelftestReport& report, const SelftestOptions& options);

}  // namespace symbidisc
