#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kpwave/asymptotics.hpp"
#include "kpwave/conserved.hpp"
#include "kpwave/evans.hpp"
#include "kpwave/verify.hpp"
#include "kpwave/wave.hpp"

namespace kpwave {

using Json = nlohmann::ordered_json;

struct HighFreqRequest {
  std::vector<double> k;
  std::vector<double> mu;
};

struct ScanConfig {
  std::vector<double> mu_grid;  // explicit list or {"from", "to", "count"}
  std::vector<double> k;
  cplx lambda{1.0, 0.0};
  std::optional<HighFreqRequest> high_freq;
  std::optional<std::vector<double>> low_freq_k;
};

struct ProblemConfig {
  WaveParams params;
  Tolerances tol;
  int grid = 1024;
  std::optional<ScanConfig> scan;
};

// Parsing throws InvalidArgument on malformed input or unknown keys.
NonlinearitySpec parse_nonlinearity(const Json& j);
ProblemConfig parse_config(const Json& j);
ProblemConfig load_config(const std::string& path);

Json to_json(const NonlinearitySpec& nl);
Json to_json(const WaveParams& p);
Json to_json(const Tolerances& t);
Json to_json(const InvariantSet& inv);
Json to_json(const ScanReport& r);
Json to_json(const HighFreqReport& r);
Json to_json(const LowFreqReport& r);
Json to_json(const IndexVerdict& v);
Json to_json(const BlockReductionReport& r);
Json to_json(const VerifyReport& r);

// Full-precision scientific notation, 17 significant digits.
std::string fmt17(double v);

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_profile_csv(std::ostream& os, const WaveProfile& profile);
void write_scan_csv(std::ostream& os, const ScanReport& r);
void write_high_freq_csv(std::ostream& os, const HighFreqReport& r);
void write_low_freq_csv(std::ostream& os, const LowFreqReport& r);

}  // namespace kpwave
