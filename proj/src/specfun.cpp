#include "isacregion/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <unordered_map>

namespace isacregion {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string(who) + ": non-finite argument");
  }
}

}  // namespace

void QuadratureConfig::validate() const {
  if (hermite_nodes < 2) throw std::domain_error("QuadratureConfig: hermite_nodes must be >= 2");
  if (abs_tol < 0 || rel_tol < 0) throw std::domain_error("QuadratureConfig: tolerances must be >= 0");
  if (abs_tol == 0 && rel_tol == 0) throw std::domain_error("QuadratureConfig: abs_tol and rel_tol cannot both be zero");
  if (max_subdivisions < 1) throw std::domain_error("QuadratureConfig: max_subdivisions must be >= 1");
}

double q_function(double x) {
  require_finite(x, "q_function");
  return 0.5 * std::erfc(x / kSqrt2);
}

double log_q_function(double x) {
  require_finite(x, "log_q_function");
  if (x < 30.0) {
    return std::log(0.5 * std::erfc(x / kSqrt2));
  }
  // Asymptotic tail: Q(x) = phi(x)/x * (1 - 1/x^2 + 3/x^4 - 15/x^6 + ...).
  const double ix2 = 1.0 / (x * x);
  const double series = 1.0 + ix2 * (-1.0 + ix2 * (3.0 + ix2 * (-15.0 + ix2 * 105.0)));
  return -0.5 * x * x - 0.5 * std::log(2.0 * kPi) - std::log(x) + std::log(series);
}

double chernoff_q_bound(double x) {
  require_finite(x, "chernoff_q_bound");
  if (x < 0) throw std::domain_error("chernoff_q_bound: requires x >= 0");
  return std::exp(-0.5 * x * x);
}

std::pair<double, double> q_sandwich(double x) {
  require_finite(x, "q_sandwich");
  if (x <= 0) throw std::domain_error("q_sandwich: requires x > 0");
  const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
  return {x / (x * x + 1.0) * phi, phi / x};
}

double log_gamma(double x) {
  require_finite(x, "log_gamma");
  if (x <= 0) throw std::domain_error("log_gamma: requires x > 0");
  return std::lgamma(x);
}

double log_bessel_i(double nu, double x) {
  require_finite(nu, "log_bessel_i");
  require_finite(x, "log_bessel_i");
  if (x < 0) throw std::domain_error("log_bessel_i: requires x >= 0");
  // The series converges for any nu > -1; the noncentral chi-squared pdf
  // with one degree of freedom needs nu = -1/2.
  if (nu <= -1) throw std::domain_error("log_bessel_i: requires nu > -1");
  if (x == 0.0) {
    if (nu == 0.0) return 0.0;
    return nu > 0.0 ? -std::numeric_limits<double>::infinity()
                    : std::numeric_limits<double>::infinity();
  }
  // I_nu(x) = sum_m (x/2)^{2m+nu} / (m! Gamma(m+nu+1)), all terms positive.
  // Term logs follow the recurrence lt += 2 log(x/2) - log(m+1) - log(m+nu+1);
  // the sum is accumulated as a streamed log-sum-exp.
  const double lhalf = std::log(0.5 * x);
  double lt = nu * lhalf - std::lgamma(nu + 1.0);
  double max_log = -std::numeric_limits<double>::infinity();
  double scaled_sum = 0.0;
  for (long m = 0;; ++m) {
    if (lt > max_log) {
      scaled_sum = scaled_sum * std::exp(max_log - lt) + 1.0;
      max_log = lt;
    } else {
      scaled_sum += std::exp(lt - max_log);
      // Terms are unimodal in m; once past the peak and 45 e-folds down,
      // the remainder is below double precision.
      if (lt < max_log - 45.0 && 2.0 * m + nu > x) break;
    }
    lt += 2.0 * lhalf - std::log(double(m) + 1.0) - std::log(double(m) + nu + 1.0);
    if (m > 100000000L) throw std::runtime_error("log_bessel_i: series did not terminate");
  }
  return max_log + std::log(scaled_sum);
}

namespace {

// Orthonormal Hermite recurrence for weight exp(-x^2):
//   p_{j+1}(x) = x sqrt(2/(j+1)) p_j(x) - sqrt(j/(j+1)) p_{j-1}(x).
// Returns (p_n(x), p_{n-1}(x)).
std::pair<double, double> hermite_pair(int n, double x) {
  double pm1 = 0.0;
  double p = std::pow(kPi, -0.25);
  for (int j = 0; j < n; ++j) {
    const double pnext = x * std::sqrt(2.0 / (j + 1)) * p - std::sqrt(double(j) / (j + 1)) * pm1;
    pm1 = p;
    p = pnext;
  }
  return {p, pm1};
}

// Eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
// algorithm. d holds the diagonal (replaced by eigenvalues, unsorted);
// e holds the subdiagonal e[i] = T(i, i+1) with e[n-1] unused.
void tridiagonal_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
  const int n = int(d.size());
  e[size_t(n) - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == 100) throw std::runtime_error("tridiagonal_eigenvalues: no convergence");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

std::vector<std::pair<double, double>> compute_hermite(int n) {
  // Nodes are the eigenvalues of the Jacobi matrix (zero diagonal,
  // subdiagonal sqrt((j+1)/2)), polished by Newton on the recurrence.
  std::vector<double> diag(size_t(n), 0.0);
  std::vector<double> off(size_t(n), 0.0);
  for (int j = 0; j + 1 < n; ++j) off[size_t(j)] = std::sqrt(0.5 * (j + 1));
  tridiagonal_eigenvalues(diag, off);
  std::sort(diag.begin(), diag.end());

  std::vector<std::pair<double, double>> out(static_cast<size_t>(n));
  for (int i = n / 2; i < n; ++i) {
    double z = diag[size_t(i)];
    for (int iter = 0; iter < 8; ++iter) {
      const auto [p, pm1] = hermite_pair(n, z);
      const double dz = p / (std::sqrt(2.0 * n) * pm1);
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    // Gauss weight = Christoffel number 1 / sum_{j<n} p_j(z)^2.
    double pm1 = 0.0;
    double p = std::pow(kPi, -0.25);
    double sumsq = p * p;
    for (int j = 0; j + 1 < n; ++j) {
      const double pnext = z * std::sqrt(2.0 / (j + 1)) * p - std::sqrt(double(j) / (j + 1)) * pm1;
      pm1 = p;
      p = pnext;
      sumsq += p * p;
    }
    const double w = 1.0 / sumsq;
    out[size_t(i)] = {z, w};
    out[size_t(n - 1 - i)] = {-z, w};
  }
  if (n % 2 == 1) out[size_t(n) / 2].first = 0.0;
  return out;
}

}  // namespace

std::vector<std::pair<double, double>> gauss_hermite_nodes(int n) {
  if (n < 2) throw std::domain_error("gauss_hermite_nodes: requires n >= 2");
  // Cache behaves as if recomputed per call; entries are immutable.
  static std::mutex mu;
  static std::unordered_map<int, std::vector<std::pair<double, double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_hermite(n)).first;
  return it->second;
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1].
std::vector<std::pair<double, double>> gauss_legendre(int n) {
  std::vector<std::pair<double, double>> out(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    out[i] = {-z, w};
    out[n - 1 - i] = {z, w};
  }
  if (n % 2 == 1) out[n / 2].first = 0.0;
  return out;
}

struct Panel {
  double lo, hi, estimate, error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double lo, double hi) {
  static const auto g7 = gauss_legendre(7);
  static const auto g15 = gauss_legendre(15);
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  double s7 = 0.0, s15 = 0.0;
  for (const auto& [t, w] : g7) s7 += w * f(c + h * t);
  for (const auto& [t, w] : g15) s15 += w * f(c + h * t);
  s7 *= h;
  s15 *= h;
  return {lo, hi, s15, std::abs(s15 - s7)};
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double lo,
                          double hi, const QuadratureConfig& cfg,
                          int initial_panels) {
  cfg.validate();
  if (!(lo < hi)) throw std::domain_error("adaptive_integrate: requires lo < hi");
  initial_panels = std::max(1, initial_panels);

  std::vector<Panel> work;
  work.reserve(size_t(initial_panels));
  for (int i = 0; i < initial_panels; ++i) {
    const double a = lo + (hi - lo) * i / initial_panels;
    const double b = (i + 1 == initial_panels) ? hi : lo + (hi - lo) * (i + 1) / initial_panels;
    work.push_back(evaluate_panel(f, a, b));
  }

  int splits = 0;
  while (true) {
    double total = 0.0, err = 0.0;
    for (const auto& p : work) {
      total += p.estimate;
      err += p.error;
    }
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    if (err <= tol) return total;
    if (splits >= cfg.max_subdivisions) {
      throw AccuracyError("adaptive_integrate: subdivision budget exhausted", total, err);
    }
    // Split the worst panel.
    size_t worst = 0;
    for (size_t i = 1; i < work.size(); ++i) {
      if (work[i].error > work[worst].error) worst = i;
    }
    const Panel p = work[worst];
    const double mid = 0.5 * (p.lo + p.hi);
    if (!(p.lo < mid && mid < p.hi)) {
      throw AccuracyError("adaptive_integrate: interval too small to split", p.estimate, p.error);
    }
    work[worst] = evaluate_panel(f, p.lo, mid);
    work.push_back(evaluate_panel(f, mid, p.hi));
    ++splits;
  }
}

double integrate_zero_to_inf(const std::function<double(double)>& f,
                             const QuadratureConfig& cfg, int initial_panels) {
  // x = u/(1-u) maps [0,1) onto [0,inf); dx = du/(1-u)^2.
  auto g = [&f](double u) {
    const double om = 1.0 - u;
    if (om <= 0.0) return 0.0;
    const double x = u / om;
    const double v = f(x);
    return v / (om * om);
  };
  return adaptive_integrate(g, 0.0, 1.0, cfg, initial_panels);
}

}  // namespace isacregion
