#pragma once

#include <string>
#include <vector>

#include "kpwave/asymptotics.hpp"
#include "kpwave/wave.hpp"

namespace kpwave {

struct Check {
  enum class Kind { AtMost, GreaterThan };

  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  Kind kind = Kind::AtMost;
  bool pass = false;
  std::string note;  // error message when the measurement itself failed
};

struct VerifyReport {
  std::vector<Check> checks;
  std::optional<IndexVerdict> index;
  bool all_pass() const;
};

// Runs the invariant suite on one wave. Thresholds are multiplied by
// threshold_scale; computations use tol.
VerifyReport run_verification(const WaveProfile& profile, const Tolerances& tol = {}, double threshold_scale = 1.0,
                              unsigned threads = 0);

}  // namespace kpwave
