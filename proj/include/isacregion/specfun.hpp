#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace isacregion {

/// Controls every numerical integration performed by the library.
struct QuadratureConfig {
  int hermite_nodes = 200;
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;

  void validate() const;
};

/// Thrown when an integral cannot be resolved to the requested tolerance.
/// Carries the best estimate and its error bound so callers can decide
/// whether to degrade gracefully (region sweeps mark such points "noconv").
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

// Gaussian tail probability Q(x) = erfc(x/sqrt(2))/2, accurate in relative
// terms deep into the tail.
double q_function(double x);

// log Q(x), usable far beyond the underflow point of q_function.
double log_q_function(double x);

// Chernoff bound exp(-x^2/2) >= Q(x), valid for x >= 0.
double chernoff_q_bound(double x);

// Sandwich bounds x/(x^2+1) phi(x) <= Q(x) <= phi(x)/x, valid for x > 0.
std::pair<double, double> q_sandwich(double x);

// log Gamma(x) for x > 0.
double log_gamma(double x);

// log I_nu(x) for nu >= 0, x >= 0, evaluated by summing the ascending
// series in the log domain. Returns -inf for x = 0, nu > 0.
double log_bessel_i(double nu, double x);

// Nodes and weights for the weight function exp(-t^2) on (-inf, inf).
std::vector<std::pair<double, double>> gauss_hermite_nodes(int n);

// Adaptive Gauss(7)/Gauss(15) quadrature on a finite interval. The interval
// is first cut into `initial_panels` equal panels so that narrow features do
// not slip between the nodes of a single coarse rule.
double adaptive_integrate(const std::function<double(double)>& f, double lo,
                          double hi, const QuadratureConfig& cfg,
                          int initial_panels = 8);

// Integral over [0, inf) via the substitution x = u/(1-u).
double integrate_zero_to_inf(const std::function<double(double)>& f,
                             const QuadratureConfig& cfg,
                             int initial_panels = 32);

}  // namespace isacregion
