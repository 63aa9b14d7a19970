#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isacregion/channel.hpp"

namespace isacregion {

struct McEstimate {
  long long trials = 0;
  long long errors_observed = 0;
  double p_hat = 0.0;
  double ci_half_width = 0.0;  // 95% normal-approximation half-width
};

McEstimate make_mc_estimate(long long trials, long long errors);

// Simulates S uniform on {0,1}, X ~ dist, Y = S X + Z, and counts
// minimum-distance detection errors. Deterministic given the seed.
McEstimate mc_detection_error(const InputDistribution& dist, int n, const ChannelParams& params,
                              long long trials, std::uint64_t seed);

struct ExponentFit {
  std::vector<int> n_grid;
  std::vector<double> log2_errors;
  double slope = 0.0;  // negated regression slope, estimates E >= 0
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Least-squares fit of -log2(eps_n) against n; eps_n from exact quadrature
// (sampling cannot reach the tail values involved).
ExponentFit fit_exponent(const InputDistribution& dist, const ChannelParams& params,
                         const std::vector<int>& n_grid, const QuadratureConfig& cfg);

struct BoundAuditEntry {
  std::string dist;
  int n = 0;
  double exact = 0.0;
  double chernoff = 0.0;
  double sandwich_lo = 0.0;  // populated for deterministic-power inputs only
  double sandwich_hi = 0.0;
  bool has_sandwich = false;
  bool pass = false;
};

struct BoundAuditReport {
  std::vector<BoundAuditEntry> entries;
  bool all_pass = true;
  // Smallest of chernoff - exact over all entries; negative means violation.
  double worst_margin = 0.0;
};

// Checks exact <= Chernoff for every n, and for deterministic-power inputs
// that the Q-function sandwich brackets the exact error. Failures are
// reported, not thrown.
BoundAuditReport audit_bounds(const InputDistribution& dist, const ChannelParams& params,
                              const std::vector<int>& n_grid, const QuadratureConfig& cfg);

std::string distribution_name(const InputDistribution& dist);

}  // namespace isacregion
