#include "isacregion/regions.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

namespace isacregion {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2E = 1.44269504088896340736;  // log2(e)
constexpr double kLn2 = 0.69314718055994530942;

// log2(1 + e^u), stable for any u.
double softplus2(double u) {
  if (u > 0.0) return u / kLn2 + std::log1p(std::exp(-u)) / kLn2;
  return std::log1p(std::exp(u)) / kLn2;
}

// 1 - (1/sqrt(2 pi)) Integral e^{-x^2/2} log2(1 + e^{-2 c1 - 2 x sqrt(c2)}) dx,
// by Gauss-Hermite after x = sqrt(2) t. With c1 = c2 = SNR this is the
// binary-PAM AWGN mutual information.
double binary_layer_rate(double c1, double c2, const QuadratureConfig& cfg) {
  cfg.validate();
  const auto nodes = gauss_hermite_nodes(cfg.hermite_nodes);
  const double s = std::sqrt(c2);
  double acc = 0.0;
  for (const auto& [t, w] : nodes) {
    acc += w * softplus2(-2.0 * c1 - 2.0 * std::sqrt(2.0) * t * s);
  }
  return 1.0 - acc / std::sqrt(kPi);
}

}  // namespace

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::TimeSharing: return "timeshare";
    case Scheme::GaussianMixture: return "mixture";
    case Scheme::SignedChi: return "signedchi";
    case Scheme::CornerSensing: return "corner_sensing";
    case Scheme::CornerComm: return "corner_comm";
  }
  return "unknown";
}

double rate_binary_awgn(double snr, const QuadratureConfig& cfg) {
  if (!(snr > 0)) throw std::domain_error("rate_binary_awgn: requires snr > 0");
  return binary_layer_rate(snr, snr, cfg);
}

RatePoint corner_sensing(const ChannelParams& params, const QuadratureConfig& cfg) {
  params.validate();
  return {rate_binary_awgn(params.snr1, cfg), params.snr2 / 8.0 * kLog2E};
}

RatePoint corner_comm(const ChannelParams& params) {
  params.validate();
  return {0.5 * std::log2(1.0 + params.snr1), 0.5 * std::log2(1.0 + params.snr2 / 4.0)};
}

RegionCurve time_sharing_segment(const RatePoint& p1, const RatePoint& p2, int steps) {
  if (steps < 2) throw std::domain_error("time_sharing_segment: requires steps >= 2");
  RegionCurve curve;
  curve.scheme = Scheme::TimeSharing;
  curve.grid.reserve(size_t(steps));
  for (int i = 0; i < steps; ++i) {
    const double lam = double(i) / (steps - 1);
    CurvePoint cp;
    cp.param = lam;
    cp.point = {lam * p1.rate + (1.0 - lam) * p2.rate,
                lam * p1.exponent + (1.0 - lam) * p2.exponent};
    curve.grid.push_back(cp);
  }
  return curve;
}

RatePoint theorem1_point(double a, const ChannelParams& params, const QuadratureConfig& cfg) {
  if (!(a >= 0)) throw std::domain_error("theorem1_point: requires a >= 0");
  params.validate();
  if (a == 0.0) return corner_comm(params);  // PAM layer vanishes
  const double snr1 = params.snr1, snr2 = params.snr2;
  const double pam_snr = a * snr1 / (1.0 + a + snr1);
  const double rate = 0.5 * std::log2(1.0 + snr1 / (1.0 + a)) + binary_layer_rate(pam_snr, pam_snr, cfg);
  const double exponent =
      0.5 * std::log2(1.0 + snr2 / (4.0 + 4.0 * a)) + a * snr2 / (8.0 + 8.0 * a + 2.0 * snr2) * kLog2E;
  return {rate, exponent};
}

double theorem1_rate_printed_form(double a, const ChannelParams& params,
                                  const QuadratureConfig& cfg) {
  if (!(a >= 0)) throw std::domain_error("theorem1_rate_printed_form: requires a >= 0");
  params.validate();
  const double snr1 = params.snr1;
  return 0.5 * std::log2(1.0 + snr1 / (1.0 + a)) +
         binary_layer_rate(a * snr1 / (1.0 + a + snr1), snr1 / (1.0 + a + snr1), cfg);
}

double signed_chi_pdf(double x, int k) {
  if (k < 1) throw std::domain_error("signed_chi_pdf: requires k >= 1");
  const double ax = std::abs(x);
  if (ax == 0.0) {
    return k == 1 ? 1.0 / std::sqrt(2.0 * kPi) : 0.0;
  }
  return std::exp((k - 1.0) * std::log(ax) - 0.5 * x * x - 0.5 * k * std::log(2.0) -
                  std::lgamma(0.5 * k));
}

namespace {

// Convolution density f_{X+Z}(y), X signed-chi(k), Z ~ N(0, t).
double convolution_density(double y, int k, double t, const QuadratureConfig& cfg) {
  const double log_ck = -0.5 * k * std::log(2.0) - std::lgamma(0.5 * k);
  const double log_cz = -0.5 * std::log(2.0 * kPi * t);
  const double x_max = std::sqrt(double(k)) + 13.0;
  const double z_max = 13.0 * std::sqrt(t);
  const double lo = std::max(-x_max, y - z_max);
  const double hi = std::min(x_max, y + z_max);
  if (!(lo < hi)) return 0.0;

  auto integrand = [&](double x) {
    const double ax = std::abs(x);
    if (ax == 0.0 && k > 1) return 0.0;
    const double lx = (k == 1) ? 0.0 : (k - 1.0) * std::log(ax);
    const double d = y - x;
    return std::exp(lx - 0.5 * x * x + log_ck + log_cz - 0.5 * d * d / t);
  };

  const double width = std::min(1.0, std::sqrt(t));
  const int panels = std::min(128, std::max(8, int((hi - lo) / width) + 1));
  // Split at the |x|^{k-1} kink when it lies inside the range.
  if (lo < 0.0 && 0.0 < hi) {
    const int pl = std::max(4, int(panels * (0.0 - lo) / (hi - lo)) + 1);
    const int ph = std::max(4, panels - pl + 1);
    return adaptive_integrate(integrand, lo, 0.0, cfg, pl) +
           adaptive_integrate(integrand, 0.0, hi, cfg, ph);
  }
  return adaptive_integrate(integrand, lo, hi, cfg, panels);
}

}  // namespace

double signed_chi_plus_noise_entropy(int k, double noise_var, const QuadratureConfig& cfg) {
  if (k < 1) throw std::domain_error("signed_chi_plus_noise_entropy: requires k >= 1");
  if (!(noise_var > 0)) throw std::domain_error("signed_chi_plus_noise_entropy: requires noise_var > 0");
  cfg.validate();
  const double t = noise_var;
  const double y_max = std::sqrt(double(k) + 8.0 * std::sqrt(2.0 * k)) + 8.0 * std::sqrt(t) + 2.0;
  auto integrand = [&](double y) {
    const double f = convolution_density(y, k, t, cfg);
    if (f <= 0.0) return 0.0;  // 0 log 0 := 0
    return -f * std::log2(f);
  };
  const int panels = std::max(16, int(y_max) + 1);
  // The density is even in y.
  return 2.0 * adaptive_integrate(integrand, 0.0, y_max, cfg, panels);
}

RatePoint theorem2_point(int k, const ChannelParams& params, const QuadratureConfig& cfg) {
  if (k < 1) throw std::domain_error("theorem2_point: requires integer k >= 1");
  params.validate();
  const double snr1 = params.snr1, snr2 = params.snr2;
  const double noise_var = double(k) / snr1;
  const double h = signed_chi_plus_noise_entropy(k, noise_var, cfg);
  const double rate = h - 0.5 * std::log2(2.0 * kPi * std::exp(1.0) * k / snr1);
  const double exponent = 0.5 * k * std::log2(1.0 + snr2 / (4.0 * k));
  return {rate, exponent};
}

int sweep_thread_count() {
  int n = 0;
  if (const char* env = std::getenv("ISACREGION_THREADS")) {
    n = std::atoi(env);
    if (n < 0) n = 0;
  }
  if (n == 0) n = int(std::thread::hardware_concurrency());
  return std::max(1, n);
}

RegionCurve sweep_region(Scheme scheme, const ChannelParams& params,
                         const std::vector<double>& grid, const QuadratureConfig& cfg) {
  if (grid.empty()) throw std::domain_error("sweep_region: empty grid");
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) throw std::domain_error("sweep_region: grid must be strictly increasing");
  }
  params.validate();
  cfg.validate();

  if (scheme == Scheme::TimeSharing) {
    const RatePoint ps = corner_sensing(params, cfg);
    const RatePoint pc = corner_comm(params);
    RegionCurve curve;
    curve.scheme = scheme;
    curve.params = params;
    for (double lam : grid) {
      if (lam < 0.0 || lam > 1.0) throw std::domain_error("sweep_region: timeshare parameter must be in [0,1]");
      CurvePoint cp;
      cp.param = lam;
      cp.point = {lam * ps.rate + (1.0 - lam) * pc.rate,
                  lam * ps.exponent + (1.0 - lam) * pc.exponent};
      curve.grid.push_back(cp);
    }
    return curve;
  }

  if (scheme == Scheme::SignedChi) {
    for (double v : grid) {
      if (std::abs(v - std::round(v)) > 1e-9 || v < 1.0) {
        throw std::domain_error("sweep_region: signed-chi grid values must be integers >= 1");
      }
    }
  }

  RegionCurve curve;
  curve.scheme = scheme;
  curve.params = params;
  curve.grid.resize(grid.size());

  auto evaluate_one = [&](size_t i) {
    CurvePoint cp;
    cp.param = grid[i];
    try {
      switch (scheme) {
        case Scheme::GaussianMixture:
          cp.point = theorem1_point(grid[i], params, cfg);
          break;
        case Scheme::SignedChi:
          cp.point = theorem2_point(int(std::lround(grid[i])), params, cfg);
          break;
        case Scheme::CornerSensing:
          cp.point = corner_sensing(params, cfg);
          break;
        case Scheme::CornerComm:
          cp.point = corner_comm(params);
          break;
        default:
          break;
      }
    } catch (const AccuracyError&) {
      cp.converged = false;
    }
    curve.grid[i] = cp;
  };

  const int threads = std::min<int>(sweep_thread_count(), int(grid.size()));
  if (threads <= 1) {
    for (size_t i = 0; i < grid.size(); ++i) evaluate_one(i);
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
          try {
            evaluate_one(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!first_error) first_error = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  return curve;
}

std::vector<double> default_mixture_grid() {
  std::vector<double> grid;
  grid.push_back(0.0);
  const int points = 60;
  for (int i = 0; i < points; ++i) {
    grid.push_back(std::pow(10.0, -2.0 + 5.0 * i / (points - 1)));
  }
  return grid;
}

std::vector<double> default_signed_chi_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 80; ++k) grid.push_back(double(k));
  return grid;
}

}  // namespace isacregion
