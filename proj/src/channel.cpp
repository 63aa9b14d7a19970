#include "isacregion/channel.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace isacregion {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * kPi * u2);
  return r * std::cos(2.0 * kPi * u2);
}

Rng Rng::derive(std::uint64_t stream) const {
  return Rng(splitmix64(seed_ ^ splitmix64(stream + 1)));
}

double second_moment(const InputDistribution& dist) {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, BinaryPam>) return d.amplitude * d.amplitude;
        if constexpr (std::is_same_v<T, Gaussian>) return d.variance;
        if constexpr (std::is_same_v<T, GaussianMixture>) return 1.0 + d.a;
        if constexpr (std::is_same_v<T, SignedChi>) return double(d.k);
      },
      dist);
}

void validate(const InputDistribution& dist) {
  std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, BinaryPam>) {
          if (!(d.amplitude > 0)) throw std::domain_error("BinaryPam: amplitude must be > 0");
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          if (!(d.variance > 0)) throw std::domain_error("Gaussian: variance must be > 0");
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          if (!(d.a >= 0)) throw std::domain_error("GaussianMixture: a must be >= 0");
        } else if constexpr (std::is_same_v<T, SignedChi>) {
          if (d.k < 1) throw std::domain_error("SignedChi: k must be a positive integer");
        }
      },
      dist);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

ChannelParams ChannelParams::from_db(double snr1_db, double snr2_db) {
  ChannelParams p{db_to_linear(snr1_db), db_to_linear(snr2_db)};
  p.validate();
  return p;
}

void ChannelParams::validate() const {
  if (!(snr1 > 0) || !(snr2 > 0)) throw std::domain_error("ChannelParams: SNRs must be > 0");
}

double ChannelParams::sensing_noise_var(const InputDistribution& dist) const {
  return second_moment(dist) / snr2;
}

double ChannelParams::comm_noise_var(const InputDistribution& dist) const {
  return second_moment(dist) / snr1;
}

std::vector<double> sample_inputs(const InputDistribution& dist, int n, Rng& rng) {
  if (n < 1) throw std::domain_error("sample_inputs: requires n >= 1");
  validate(dist);
  std::vector<double> out(static_cast<size_t>(n), 0.0);
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        for (auto& v : out) {
          if constexpr (std::is_same_v<T, BinaryPam>) {
            v = rng.coin() ? d.amplitude : -d.amplitude;
          } else if constexpr (std::is_same_v<T, Gaussian>) {
            v = std::sqrt(d.variance) * rng.normal();
          } else if constexpr (std::is_same_v<T, GaussianMixture>) {
            v = rng.normal() + (rng.coin() ? std::sqrt(d.a) : -std::sqrt(d.a));
          } else if constexpr (std::is_same_v<T, SignedChi>) {
            double ss = 0.0;
            for (int j = 0; j < d.k; ++j) {
              const double g = rng.normal();
              ss += g * g;
            }
            v = (rng.coin() ? 1.0 : -1.0) * std::sqrt(ss);
          }
        }
      },
      dist);
  return out;
}

double sufficient_statistic(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || x.size() != y.size()) {
    throw std::domain_error("sufficient_statistic: vectors must be non-empty and equal length");
  }
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    num += x[i] * y[i];
    den += x[i] * x[i];
  }
  if (den == 0.0) throw std::domain_error("sufficient_statistic: all-zero input (degenerate)");
  return num / den;
}

bool detect_state(const std::vector<double>& x, const std::vector<double>& y) {
  return sufficient_statistic(x, y) >= 0.5;
}

double exact_error_given_power(double power_sum, double sigma) {
  if (!(sigma > 0)) throw std::domain_error("exact_error_given_power: requires sigma > 0");
  if (power_sum < 0) throw std::domain_error("exact_error_given_power: requires power_sum >= 0");
  return q_function(std::sqrt(power_sum) / (2.0 * sigma));
}

double log_error_given_power(double power_sum, double sigma) {
  if (!(sigma > 0)) throw std::domain_error("log_error_given_power: requires sigma > 0");
  if (power_sum < 0) throw std::domain_error("log_error_given_power: requires power_sum >= 0");
  return log_q_function(std::sqrt(power_sum) / (2.0 * sigma));
}

double log_chi2_pdf(double x, double dof) {
  if (!(dof > 0)) throw std::domain_error("log_chi2_pdf: requires dof > 0");
  if (x < 0) return -std::numeric_limits<double>::infinity();
  const double h = 0.5 * dof;
  return -h * std::log(2.0) - std::lgamma(h) + (h - 1.0) * std::log(x) - 0.5 * x;
}

double log_noncentral_chi2_pdf(double x, double dof, double lambda) {
  if (!(dof > 0)) throw std::domain_error("log_noncentral_chi2_pdf: requires dof > 0");
  if (lambda < 0) throw std::domain_error("log_noncentral_chi2_pdf: requires lambda >= 0");
  if (lambda == 0.0) return log_chi2_pdf(x, dof);
  if (x < 0) return -std::numeric_limits<double>::infinity();
  const double nu = 0.5 * dof - 1.0;
  return -std::log(2.0) - 0.5 * (x + lambda) + (0.5 * nu) * std::log(x / lambda) +
         log_bessel_i(nu, std::sqrt(lambda * x));
}

namespace {

// Integrates g of the power variable against its density, in the amplitude
// domain t = sqrt(x) so the chi^2 endpoint singularity at dof = 1 vanishes
// and the density becomes a near-Gaussian bump of O(1) width.
double integrate_power_law(double dof, double lambda, double sigma, const QuadratureConfig& cfg) {
  const double t_hi = std::sqrt(dof + lambda) + 30.0;
  auto integrand = [dof, lambda, sigma](double t) {
    if (t <= 0.0) return 0.0;
    const double x = t * t;
    const double lp = log_noncentral_chi2_pdf(x, dof, lambda) + std::log(2.0 * t) +
                      log_q_function(t / (2.0 * sigma));
    return std::exp(lp);
  };
  const int panels = std::max(32, int(t_hi));
  return adaptive_integrate(integrand, 0.0, t_hi, cfg, panels);
}

}  // namespace

double chernoff_weighted_power_integral(double dof, double lambda, double sigma,
                                        const QuadratureConfig& cfg) {
  if (!(dof > 0)) throw std::domain_error("chernoff_weighted_power_integral: requires dof > 0");
  if (lambda < 0) throw std::domain_error("chernoff_weighted_power_integral: requires lambda >= 0");
  if (!(sigma > 0)) throw std::domain_error("chernoff_weighted_power_integral: requires sigma > 0");
  cfg.validate();
  const double t_hi = std::sqrt(dof + lambda) + 30.0;
  auto integrand = [dof, lambda, sigma](double t) {
    if (t <= 0.0) return 0.0;
    const double x = t * t;
    return std::exp(log_noncentral_chi2_pdf(x, dof, lambda) + std::log(2.0 * t) -
                    x / (8.0 * sigma * sigma));
  };
  const int panels = std::max(32, int(t_hi));
  return adaptive_integrate(integrand, 0.0, t_hi, cfg, panels);
}

double avg_error_exact(const InputDistribution& dist, int n, const ChannelParams& params,
                       const QuadratureConfig& cfg) {
  if (n < 1) throw std::domain_error("avg_error_exact: requires n >= 1");
  validate(dist);
  params.validate();
  cfg.validate();
  const double snr2 = params.snr2;
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, BinaryPam>) {
          // Deterministic power n A^2 with sigma^2 = A^2 / SNR2.
          return q_function(std::sqrt(double(n) * snr2) / 2.0);
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          // Power ~ variance * chi^2(n); the variance cancels against sigma.
          return integrate_power_law(double(n), 0.0, 1.0 / std::sqrt(snr2), cfg);
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          // Power ~ noncentral chi^2(n, a n); sigma^2 = (1+a)/SNR2.
          return integrate_power_law(double(n), d.a * n, std::sqrt((1.0 + d.a) / snr2), cfg);
        } else {
          // SignedChi: power ~ chi^2(n k); sigma^2 = k/SNR2.
          return integrate_power_law(double(n) * d.k, 0.0, std::sqrt(double(d.k) / snr2), cfg);
        }
      },
      dist);
}

double chernoff_avg_error(const InputDistribution& dist, int n, const ChannelParams& params) {
  if (n < 1) throw std::domain_error("chernoff_avg_error: requires n >= 1");
  validate(dist);
  params.validate();
  const double snr2 = params.snr2;
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, BinaryPam>) {
          return std::exp(-double(n) * snr2 / 8.0);
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          return std::pow(1.0 + snr2 / 4.0, -0.5 * n);
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          return std::pow(1.0 + snr2 / (4.0 * (1.0 + d.a)), -0.5 * n) *
                 std::exp(-double(n) * d.a * snr2 / (8.0 + 8.0 * d.a + 2.0 * snr2));
        } else {
          return std::pow(1.0 + snr2 / (4.0 * d.k), -0.5 * n * d.k);
        }
      },
      dist);
}

}  // namespace isacregion
