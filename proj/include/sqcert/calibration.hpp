#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sqcert {

// Frozen empirical constants for the big-O bounds the source material leaves
// unspecified. Regenerated by `sqcert gauss calibrate`; regression tests and
// reports read them from the checked-in JSON file.
struct MajorantDeviationPoint {
  std::uint64_t W = 0;
  std::uint64_t b = 0;
  std::uint64_t N = 0;
  double max_relative_deviation = 0.0;
};

struct Calibration {
  std::string version;
  double gauss_bound_c = 0.0;           // |sum over squares| <= C * gcd * sqrt(p)
  double nu_hat_statistic_bound = 0.0;  // |nu_hat(xi)| * sqrt(min p) <= this
  double qr_equidistribution_bound = 0.0;
  double restriction_ratio_k = 0.0;     // ratio(p) <= 1 + K/p
  std::vector<MajorantDeviationPoint> majorant_points;
};

// Path resolution: $SQCERT_CALIBRATION when set, else data/calibration.json
// next to the sources.
std::string calibration_path();
const Calibration& calibration();     // loaded once; throws on malformed file
std::string calibration_digest();     // "fnv64:<hex>" of the file bytes

}  // namespace sqcert
