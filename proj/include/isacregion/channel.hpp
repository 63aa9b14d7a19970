#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "isacregion/specfun.hpp"

namespace isacregion {

// Deterministic random stream: mt19937_64 plus an in-house Box-Muller so
// draws are bit-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  // Uniform on (0, 1).
  double uniform() {
    // 53-bit mantissa; +0.5 keeps the draw strictly inside (0, 1).
    return (double(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal();

  bool coin() { return (engine_() >> 63) != 0; }

  // Independent substream for partitioned Monte Carlo work.
  Rng derive(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

struct BinaryPam {
  double amplitude = 1.0;
};
struct Gaussian {
  double variance = 1.0;
};
struct GaussianMixture {
  double a = 0.0;  // PAM component amplitude^2; total power 1 + a
};
struct SignedChi {
  int k = 1;  // chi degrees of freedom; total power k
};

using InputDistribution = std::variant<BinaryPam, Gaussian, GaussianMixture, SignedChi>;

// Per-symbol second moment E[X^2] of the input law.
double second_moment(const InputDistribution& dist);

void validate(const InputDistribution& dist);

struct ChannelParams {
  double snr1 = 1.0;  // communication SNR, linear
  double snr2 = 1.0;  // sensing SNR, linear

  static ChannelParams from_db(double snr1_db, double snr2_db);
  void validate() const;

  // Noise variances under the convention that the input is used at its
  // natural power, so sigma^2 = E[X^2] / SNR.
  double sensing_noise_var(const InputDistribution& dist) const;
  double comm_noise_var(const InputDistribution& dist) const;
};

double db_to_linear(double db);
double linear_to_db(double lin);

std::vector<double> sample_inputs(const InputDistribution& dist, int n, Rng& rng);

// Inverse-variance-weighted reduction sum(x_i y_i) / sum(x_i^2).
double sufficient_statistic(const std::vector<double>& x, const std::vector<double>& y);

// Minimum-distance rule for S in {0,1}: decide 1 iff the statistic >= 1/2.
// A tie at exactly 1/2 resolves to 1.
bool detect_state(const std::vector<double>& x, const std::vector<double>& y);

// Exact detection error conditioned on the transmitted energy:
// Q(sqrt(power_sum) / (2 sigma)).
double exact_error_given_power(double power_sum, double sigma);
double log_error_given_power(double power_sum, double sigma);

// Average detection error E[Q(sqrt(sum X^2)/(2 sigma))], by quadrature over
// the power law of the input (chi^2, noncentral chi^2, or deterministic).
double avg_error_exact(const InputDistribution& dist, int n, const ChannelParams& params,
                       const QuadratureConfig& cfg);

// Closed-form Chernoff-averaged upper bound on the same quantity.
double chernoff_avg_error(const InputDistribution& dist, int n, const ChannelParams& params);

// Integral of the (noncentral) chi^2 density against the Chernoff weight
// exp(-x/(8 sigma^2)); closed form (1+1/(4 sigma^2))^{-dof/2} for lambda = 0
// and times exp(-lambda/(8 sigma^2 + 2)) otherwise. Used as a quadrature
// identity check against those closed forms.
double chernoff_weighted_power_integral(double dof, double lambda, double sigma,
                                        const QuadratureConfig& cfg);

// log pdf of the chi^2 distribution with dof degrees of freedom.
double log_chi2_pdf(double x, double dof);

// log pdf of the noncentral chi^2 distribution (dof, noncentrality lambda).
double log_noncentral_chi2_pdf(double x, double dof, double lambda);

}  // namespace isacregion
