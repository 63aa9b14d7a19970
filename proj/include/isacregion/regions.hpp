#pragma once

#include <string>
#include <vector>

#include "isacregion/channel.hpp"
#include "isacregion/specfun.hpp"

namespace isacregion {

/// An achievable (rate, exponent) pair, both in bits per channel use.
struct RatePoint {
  double rate = 0.0;
  double exponent = 0.0;
};

enum class Scheme { TimeSharing, GaussianMixture, SignedChi, CornerSensing, CornerComm };

std::string scheme_name(Scheme s);

struct CurvePoint {
  double param = 0.0;
  RatePoint point;
  bool converged = true;  // false marks entropy non-convergence; point is unset
};

struct RegionCurve {
  Scheme scheme = Scheme::TimeSharing;
  ChannelParams params;
  std::vector<CurvePoint> grid;
};

// Mutual information in bits of the binary-PAM AWGN channel at the given
// linear SNR, by Gauss-Hermite quadrature.
double rate_binary_awgn(double snr, const QuadratureConfig& cfg);

// Sensing-optimal corner: constant-power binary PAM.
RatePoint corner_sensing(const ChannelParams& params, const QuadratureConfig& cfg);

// Communication-optimal corner: Gaussian input at capacity.
RatePoint corner_comm(const ChannelParams& params);

RegionCurve time_sharing_segment(const RatePoint& p1, const RatePoint& p2, int steps);

// Gaussian-mixture superposition scheme. The PAM layer rate is
// rate_binary_awgn at effective SNR a*SNR1/(1+a+SNR1); a = 0 returns
// corner_comm exactly and a -> infinity approaches corner_sensing.
RatePoint theorem1_point(double a, const ChannelParams& params, const QuadratureConfig& cfg);

// Alternative form of the mixture rate that drops the factor a under the
// square root. Kept for side-by-side comparison; it does not reduce to
// the corner points at the limits.
double theorem1_rate_printed_form(double a, const ChannelParams& params,
                                  const QuadratureConfig& cfg);

// Density of the signed-chi law: |x|^{k-1} e^{-x^2/2} / (2^{k/2} Gamma(k/2)).
double signed_chi_pdf(double x, int k);

// Signed-chi scheme: exponent in closed form, rate via the differential
// entropy of X + Z with Z ~ N(0, k/SNR1), computed by nested quadrature.
RatePoint theorem2_point(int k, const ChannelParams& params, const QuadratureConfig& cfg);

// Differential entropy h(X + Z) in bits for X signed-chi(k), Z Gaussian
// with the given variance. Exposed for validation against the k = 1
// Gaussian closed form.
double signed_chi_plus_noise_entropy(int k, double noise_var, const QuadratureConfig& cfg);

// Evaluates one scheme over a strictly increasing parameter grid. Points
// whose entropy integral fails to converge are marked, not dropped.
RegionCurve sweep_region(Scheme scheme, const ChannelParams& params,
                         const std::vector<double>& grid, const QuadratureConfig& cfg);

// Default parameter grids used by the CLI and the figure reproduction.
std::vector<double> default_mixture_grid();
std::vector<double> default_signed_chi_grid();

// Thread cap for sweep fan-out: ISACREGION_THREADS, 0 or unset = auto.
int sweep_thread_count();

}  // namespace isacregion
