// Python bindings for the rate-exponent region library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "isacregion/channel.hpp"
#include "isacregion/mc.hpp"
#include "isacregion/regions.hpp"
#include "isacregion/specfun.hpp"

namespace py = pybind11;
using namespace isacregion;

PYBIND11_MODULE(_isacregion, m) {
  m.doc() = "Rate-exponent regions of the Gaussian ISAC channel";

  py::register_exception<AccuracyError>(m, "AccuracyError");

  py::class_<QuadratureConfig>(m, "QuadratureConfig")
      .def(py::init<>())
      .def_readwrite("hermite_nodes", &QuadratureConfig::hermite_nodes)
      .def_readwrite("abs_tol", &QuadratureConfig::abs_tol)
      .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
      .def_readwrite("max_subdivisions", &QuadratureConfig::max_subdivisions);

  py::class_<ChannelParams>(m, "ChannelParams")
      .def(py::init<>())
      .def_static("from_db", &ChannelParams::from_db, py::arg("snr1_db"), py::arg("snr2_db"))
      .def_readwrite("snr1", &ChannelParams::snr1)
      .def_readwrite("snr2", &ChannelParams::snr2);

  py::class_<BinaryPam>(m, "BinaryPam")
      .def(py::init<double>(), py::arg("amplitude"))
      .def_readwrite("amplitude", &BinaryPam::amplitude);
  py::class_<Gaussian>(m, "Gaussian")
      .def(py::init<double>(), py::arg("variance"))
      .def_readwrite("variance", &Gaussian::variance);
  py::class_<GaussianMixture>(m, "GaussianMixture")
      .def(py::init<double>(), py::arg("a"))
      .def_readwrite("a", &GaussianMixture::a);
  py::class_<SignedChi>(m, "SignedChi")
      .def(py::init<int>(), py::arg("k"))
      .def_readwrite("k", &SignedChi::k);

  py::class_<RatePoint>(m, "RatePoint")
      .def_readonly("rate", &RatePoint::rate)
      .def_readonly("exponent", &RatePoint::exponent)
      .def("__repr__", [](const RatePoint& p) {
        return "RatePoint(rate=" + std::to_string(p.rate) +
               ", exponent=" + std::to_string(p.exponent) + ")";
      });

  py::class_<CurvePoint>(m, "CurvePoint")
      .def_readonly("param", &CurvePoint::param)
      .def_readonly("point", &CurvePoint::point)
      .def_readonly("converged", &CurvePoint::converged);

  py::enum_<Scheme>(m, "Scheme")
      .value("TimeSharing", Scheme::TimeSharing)
      .value("GaussianMixture", Scheme::GaussianMixture)
      .value("SignedChi", Scheme::SignedChi)
      .value("CornerSensing", Scheme::CornerSensing)
      .value("CornerComm", Scheme::CornerComm);

  py::class_<RegionCurve>(m, "RegionCurve")
      .def_readonly("scheme", &RegionCurve::scheme)
      .def_readonly("grid", &RegionCurve::grid);

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("trials", &McEstimate::trials)
      .def_readonly("errors_observed", &McEstimate::errors_observed)
      .def_readonly("p_hat", &McEstimate::p_hat)
      .def_readonly("ci_half_width", &McEstimate::ci_half_width);

  py::class_<ExponentFit>(m, "ExponentFit")
      .def_readonly("n_grid", &ExponentFit::n_grid)
      .def_readonly("log2_errors", &ExponentFit::log2_errors)
      .def_readonly("slope", &ExponentFit::slope)
      .def_readonly("intercept", &ExponentFit::intercept)
      .def_readonly("r_squared", &ExponentFit::r_squared);

  // specfun
  m.def("q_function", &q_function, py::arg("x"));
  m.def("log_q_function", &log_q_function, py::arg("x"));
  m.def("chernoff_q_bound", &chernoff_q_bound, py::arg("x"));
  m.def("q_sandwich", &q_sandwich, py::arg("x"));
  m.def("log_gamma", &log_gamma, py::arg("x"));
  m.def("log_bessel_i", &log_bessel_i, py::arg("nu"), py::arg("x"));

  const QuadratureConfig default_cfg;

  // channel
  m.def("db_to_linear", &db_to_linear, py::arg("db"));
  m.def("linear_to_db", &linear_to_db, py::arg("value"));
  m.def(
      "avg_error_exact",
      [](const InputDistribution& d, int n, const ChannelParams& p, const QuadratureConfig& cfg) {
        return avg_error_exact(d, n, p, cfg);
      },
      py::arg("dist"), py::arg("n"), py::arg("params"), py::arg("cfg") = default_cfg);
  m.def(
      "chernoff_avg_error",
      [](const InputDistribution& d, int n, const ChannelParams& p) {
        return chernoff_avg_error(d, n, p);
      },
      py::arg("dist"), py::arg("n"), py::arg("params"));

  // regions
  m.def(
      "rate_binary_awgn",
      [](double snr, const QuadratureConfig& cfg) { return rate_binary_awgn(snr, cfg); },
      py::arg("snr"), py::arg("cfg") = default_cfg);
  m.def(
      "corner_sensing",
      [](const ChannelParams& p, const QuadratureConfig& cfg) { return corner_sensing(p, cfg); },
      py::arg("params"), py::arg("cfg") = default_cfg);
  m.def("corner_comm", &corner_comm, py::arg("params"));
  m.def(
      "theorem1_point",
      [](double a, const ChannelParams& p, const QuadratureConfig& cfg) {
        return theorem1_point(a, p, cfg);
      },
      py::arg("a"), py::arg("params"), py::arg("cfg") = default_cfg);
  m.def(
      "theorem2_point",
      [](int k, const ChannelParams& p, const QuadratureConfig& cfg) {
        return theorem2_point(k, p, cfg);
      },
      py::arg("k"), py::arg("params"), py::arg("cfg") = default_cfg);
  m.def("signed_chi_pdf", &signed_chi_pdf, py::arg("x"), py::arg("k"));
  m.def(
      "sweep_region",
      [](Scheme s, const ChannelParams& p, const std::vector<double>& grid,
         const QuadratureConfig& cfg) { return sweep_region(s, p, grid, cfg); },
      py::arg("scheme"), py::arg("params"), py::arg("grid"), py::arg("cfg") = default_cfg);
  m.def("default_mixture_grid", &default_mixture_grid);
  m.def("default_signed_chi_grid", &default_signed_chi_grid);

  // mc
  m.def(
      "mc_detection_error",
      [](const InputDistribution& d, int n, const ChannelParams& p, long long trials,
         std::uint64_t seed) { return mc_detection_error(d, n, p, trials, seed); },
      py::arg("dist"), py::arg("n"), py::arg("params"), py::arg("trials"), py::arg("seed"));
  m.def(
      "fit_exponent",
      [](const InputDistribution& d, const ChannelParams& p, const std::vector<int>& grid,
         const QuadratureConfig& cfg) { return fit_exponent(d, p, grid, cfg); },
      py::arg("dist"), py::arg("params"), py::arg("n_grid"), py::arg("cfg") = default_cfg);
}
