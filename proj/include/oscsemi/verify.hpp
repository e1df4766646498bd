#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace osc {

struct InvariantResult {
  std::string name;
  double measured = 0;  // worst observed error (or deficit) over the samples
  double tol = 0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<InvariantResult> results;
  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
};

// Runs the cross-module invariant sweep with the given seed. scale multiplies
// the per-check sample counts (1 = the quick default).
VerifyReport run_verify(std::uint64_t seed, int scale = 1);

std::string format_report(const VerifyReport& report);

}  // namespace osc
