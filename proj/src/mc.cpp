#include "isacregion/mc.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace isacregion {

McEstimate make_mc_estimate(long long trials, long long errors) {
  if (trials < 1) throw std::domain_error("make_mc_estimate: requires trials >= 1");
  if (errors < 0 || errors > trials) throw std::domain_error("make_mc_estimate: errors out of range");
  McEstimate e;
  e.trials = trials;
  e.errors_observed = errors;
  e.p_hat = double(errors) / double(trials);
  e.ci_half_width = 1.96 * std::sqrt(e.p_hat * (1.0 - e.p_hat) / double(trials));
  return e;
}

McEstimate mc_detection_error(const InputDistribution& dist, int n, const ChannelParams& params,
                              long long trials, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("mc_detection_error: requires n >= 1");
  if (trials < 1000) throw std::domain_error("mc_detection_error: requires trials >= 1000");
  validate(dist);
  params.validate();
  const double sigma = std::sqrt(params.sensing_noise_var(dist));
  Rng rng(seed);
  long long errors = 0;
  std::vector<double> y(static_cast<size_t>(n), 0.0);
  for (long long t = 0; t < trials; ++t) {
    const bool s = rng.coin();
    const std::vector<double> x = sample_inputs(dist, n, rng);
    for (int i = 0; i < n; ++i) {
      y[size_t(i)] = (s ? x[size_t(i)] : 0.0) + sigma * rng.normal();
    }
    if (detect_state(x, y) != s) ++errors;
  }
  return make_mc_estimate(trials, errors);
}

ExponentFit fit_exponent(const InputDistribution& dist, const ChannelParams& params,
                         const std::vector<int>& n_grid, const QuadratureConfig& cfg) {
  if (n_grid.size() < 4) throw std::domain_error("fit_exponent: requires >= 4 grid points");
  for (size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i - 1] >= n_grid[i]) throw std::domain_error("fit_exponent: grid must be strictly increasing");
  }
  ExponentFit fit;
  fit.n_grid = n_grid;
  fit.log2_errors.reserve(n_grid.size());
  for (int n : n_grid) {
    double eps;
    try {
      eps = avg_error_exact(dist, n, params, cfg);
    } catch (const AccuracyError& e) {
      std::ostringstream msg;
      msg << "fit_exponent: quadrature failure at n = " << n << " (" << e.what() << ")";
      throw AccuracyError(msg.str(), e.estimate(), e.error_bound());
    }
    if (!(eps > 0.0)) {
      throw std::range_error("fit_exponent: error probability underflowed at n = " + std::to_string(n));
    }
    fit.log2_errors.push_back(std::log2(eps));
  }
  // Least squares of -log2(eps) on n.
  const size_t m = n_grid.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < m; ++i) {
    const double xi = double(n_grid[i]);
    const double yi = -fit.log2_errors[i];
    sx += xi; sy += yi; sxx += xi * xi; sxy += xi * yi; syy += yi * yi;
  }
  const double denom = m * sxx - sx * sx;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  const double corr_num = m * sxy - sx * sy;
  const double corr_den = std::sqrt(denom * (m * syy - sy * sy));
  const double r = corr_den > 0 ? corr_num / corr_den : 0.0;
  fit.r_squared = r * r;
  return fit;
}

std::string distribution_name(const InputDistribution& dist) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        std::ostringstream os;
        if constexpr (std::is_same_v<T, BinaryPam>) os << "binary_pam(A=" << d.amplitude << ")";
        if constexpr (std::is_same_v<T, Gaussian>) os << "gaussian(var=" << d.variance << ")";
        if constexpr (std::is_same_v<T, GaussianMixture>) os << "mixture(a=" << d.a << ")";
        if constexpr (std::is_same_v<T, SignedChi>) os << "signed_chi(k=" << d.k << ")";
        return os.str();
      },
      dist);
}

BoundAuditReport audit_bounds(const InputDistribution& dist, const ChannelParams& params,
                              const std::vector<int>& n_grid, const QuadratureConfig& cfg) {
  BoundAuditReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  const std::string name = distribution_name(dist);
  const bool deterministic_power = std::holds_alternative<BinaryPam>(dist);
  for (int n : n_grid) {
    BoundAuditEntry entry;
    entry.dist = name;
    entry.n = n;
    entry.exact = avg_error_exact(dist, n, params, cfg);
    entry.chernoff = chernoff_avg_error(dist, n, params);
    entry.pass = entry.exact <= entry.chernoff * (1.0 + 1e-12);
    if (deterministic_power) {
      // Q(sqrt(n SNR2)/2) under the module's power convention.
      const double arg = std::sqrt(double(n) * params.snr2) / 2.0;
      const auto [lo, hi] = q_sandwich(arg);
      entry.sandwich_lo = lo;
      entry.sandwich_hi = hi;
      entry.has_sandwich = true;
      // Below the normal floating-point range the sandwich comparison is
      // dominated by subnormal rounding, so only enforce it above it.
      if (hi >= std::numeric_limits<double>::min()) {
        entry.pass = entry.pass && lo <= entry.exact * (1.0 + 1e-12) &&
                     entry.exact <= hi * (1.0 + 1e-12);
      }
    }
    report.worst_margin = std::min(report.worst_margin, entry.chernoff - entry.exact);
    report.all_pass = report.all_pass && entry.pass;
    report.entries.push_back(entry);
  }
  return report;
}

}  // namespace isacregion
