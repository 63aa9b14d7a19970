// Command-line front end: corner points, region sweeps, figure reproduction,
// and verification suites, with CSV/SVG/JSON-manifest export.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isacregion/channel.hpp"
#include "isacregion/mc.hpp"
#include "isacregion/regions.hpp"
#include "isacregion/specfun.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace isacregion;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest decimal representation that round-trips to the same double.
std::string fmt_double(double v) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

std::string fmt_sig9(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_file(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

// Manifest emitted alongside every output file. The timestamp lives only
// here so the data files themselves stay byte-identical across reruns.
void write_manifest(const fs::path& manifest_path, const std::string& command_line,
                    std::uint64_t seed, const QuadratureConfig& cfg,
                    const std::vector<std::pair<fs::path, std::string>>& outputs) {
  json m;
  m["command"] = command_line;
  m["version"] = kVersion;
  m["seed"] = seed;
  m["quadrature"] = {{"hermite_nodes", cfg.hermite_nodes},
                     {"abs_tol", cfg.abs_tol},
                     {"rel_tol", cfg.rel_tol},
                     {"max_subdivisions", cfg.max_subdivisions}};
  const auto now = std::chrono::system_clock::now();
  m["timestamp_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
  json digests = json::object();
  for (const auto& [path, contents] : outputs) {
    digests[path.filename().string()] = "fnv1a64:" + hex64(fnv1a64(contents));
  }
  m["output_digests"] = digests;
  write_file(manifest_path, m.dump(2) + "\n");
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

// Grid spec: lo:hi:count with an optional trailing :log.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  bool log_scale = false;
  if (parts.size() == 4) {
    if (parts[3] != "log" && parts[3] != "linear") throw UsageError("bad grid scale: " + parts[3]);
    log_scale = parts[3] == "log";
    parts.pop_back();
  }
  if (parts.size() != 3) throw UsageError("grid spec must be lo:hi:count[:log]");
  double lo = 0.0, hi = 0.0;
  long count = 0;
  try {
    lo = std::stod(parts[0]);
    hi = std::stod(parts[1]);
    count = std::stol(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("grid spec must be numeric lo:hi:count[:log]");
  }
  if (count < 1 || count > 1000000) throw UsageError("grid count out of range");
  if (hi < lo) throw UsageError("grid hi must be >= lo");
  if (log_scale && lo <= 0.0) throw UsageError("log grid requires lo > 0");
  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(count));
  if (count == 1) {
    if (hi != lo) throw UsageError("count 1 requires hi == lo");
    grid.push_back(lo);
    return grid;
  }
  for (long i = 0; i < count; ++i) {
    const double t = double(i) / double(count - 1);
    grid.push_back(log_scale ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo));
  }
  grid.back() = hi;  // guard against rounding at the endpoint
  return grid;
}

Scheme parse_scheme(const std::string& name) {
  if (name == "mixture") return Scheme::GaussianMixture;
  if (name == "signedchi") return Scheme::SignedChi;
  if (name == "timeshare") return Scheme::TimeSharing;
  throw UsageError("unknown scheme: " + name);
}

std::string curve_to_csv(const RegionCurve& curve) {
  std::string csv = "param,rate_bits,exponent_bits,status\n";
  for (const auto& cp : curve.grid) {
    csv += fmt_double(cp.param);
    if (cp.converged) {
      csv += ',' + fmt_double(cp.point.rate) + ',' + fmt_double(cp.point.exponent) + ",ok\n";
    } else {
      csv += ",,,noconv\n";
    }
  }
  return csv;
}

// ---------------------------------------------------------------------------
// corners

int cmd_corners(double snr1_db, double snr2_db, const std::string& out,
                const std::string& command_line) {
  const auto params = ChannelParams::from_db(snr1_db, snr2_db);
  const QuadratureConfig cfg;
  const auto cs = corner_sensing(params, cfg);
  const auto cc = corner_comm(params);
  std::cout << "corner_sensing: R_s = " << fmt_sig9(cs.rate) << "  E_s = " << fmt_sig9(cs.exponent)
            << "\n";
  std::cout << "corner_comm:    R_c = " << fmt_sig9(cc.rate) << "  E_c = " << fmt_sig9(cc.exponent)
            << "\n";
  if (!out.empty()) {
    std::string csv = "point,rate_bits,exponent_bits\n";
    csv += "sensing," + fmt_double(cs.rate) + ',' + fmt_double(cs.exponent) + "\n";
    csv += "comm," + fmt_double(cc.rate) + ',' + fmt_double(cc.exponent) + "\n";
    const fs::path out_path(out);
    write_file(out_path, csv);
    fs::path manifest = out_path;
    manifest += ".manifest.json";
    write_manifest(manifest, command_line, 0, cfg, {{out_path, csv}});
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// region

int cmd_region(const std::string& scheme_str, double snr1_db, double snr2_db,
               const std::string& grid_spec, const std::string& out,
               const std::string& command_line) {
  const Scheme scheme = parse_scheme(scheme_str);
  const auto grid = parse_grid(grid_spec);
  const auto params = ChannelParams::from_db(snr1_db, snr2_db);
  const QuadratureConfig cfg;
  RegionCurve curve;
  try {
    curve = sweep_region(scheme, params, grid, cfg);
  } catch (const std::domain_error& e) {
    throw UsageError(std::string("bad grid for scheme: ") + e.what());
  }
  const std::string csv = curve_to_csv(curve);
  const fs::path out_path(out);
  write_file(out_path, csv);
  fs::path manifest = out_path;
  manifest += ".manifest.json";
  write_manifest(manifest, command_line, 0, cfg, {{out_path, csv}});
  long noconv = std::count_if(curve.grid.begin(), curve.grid.end(),
                              [](const CurvePoint& c) { return !c.converged; });
  std::cout << "wrote " << out_path.string() << " (" << curve.grid.size() << " rows, " << noconv
            << " noconv)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// fig2

struct PlotCurve {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> xy;  // (rate, exponent)
};

std::string render_svg(const std::string& title, const std::vector<PlotCurve>& curves) {
  const double w = 640.0, h = 480.0;
  const double ml = 70.0, mr = 20.0, mt = 40.0, mb = 55.0;
  double xmax = 0.0, ymax = 0.0;
  for (const auto& c : curves) {
    for (const auto& [x, y] : c.xy) {
      xmax = std::max(xmax, x);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax <= 0.0) xmax = 1.0;
  if (ymax <= 0.0) ymax = 1.0;
  xmax *= 1.05;
  ymax *= 1.05;
  const auto px = [&](double x) { return ml + x / xmax * (w - ml - mr); };
  const auto py = [&](double y) { return h - mb - y / ymax * (h - mt - mb); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
    << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
    << "</text>\n";
  // axes
  s << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\"" << h - mb
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
    << "\" stroke=\"black\"/>\n";
  // ticks: five per axis
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmax * i / 5.0, yv = ymax * i / 5.0;
    char lbl[32];
    s << "<line x1=\"" << px(xv) << "\" y1=\"" << h - mb << "\" x2=\"" << px(xv) << "\" y2=\""
      << h - mb + 5 << "\" stroke=\"black\"/>\n";
    std::snprintf(lbl, sizeof(lbl), "%.3g", xv);
    s << "<text x=\"" << px(xv) << "\" y=\"" << h - mb + 20
      << "\" text-anchor=\"middle\" font-size=\"11\">" << lbl << "</text>\n";
    s << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml << "\" y2=\""
      << py(yv) << "\" stroke=\"black\"/>\n";
    std::snprintf(lbl, sizeof(lbl), "%.3g", yv);
    s << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << lbl << "</text>\n";
  }
  s << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
    << "\" text-anchor=\"middle\" font-size=\"13\">rate (bits/use)</text>\n";
  s << "<text x=\"18\" y=\"" << (mt + h - mb) / 2
    << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
    << (mt + h - mb) / 2 << ")\">exponent (bits)</text>\n";
  // curves + legend
  double ly = mt + 12;
  for (const auto& c : curves) {
    s << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : c.xy) s << px(x) << ',' << py(y) << ' ';
    s << "\"/>\n";
    s << "<line x1=\"" << w - mr - 150 << "\" y1=\"" << ly << "\" x2=\"" << w - mr - 125
      << "\" y2=\"" << ly << "\" stroke=\"" << c.color << "\" stroke-width=\"1.5\"/>\n";
    s << "<text x=\"" << w - mr - 120 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">" << c.label
      << "</text>\n";
    ly += 18;
  }
  s << "</svg>\n";
  return s.str();
}

int cmd_fig2(const std::string& out_dir, const std::string& command_line) {
  const QuadratureConfig cfg;
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());

  const double snrs_db[] = {10.0, 15.0, 20.0, 25.0};
  for (double db : snrs_db) {
    const auto params = ChannelParams::from_db(db, db);
    const std::string tag = "snr" + std::to_string(static_cast<int>(db)) + "db";

    std::vector<double> lambda_grid;
    for (int i = 0; i < 41; ++i) lambda_grid.push_back(i / 40.0);
    const auto ts = sweep_region(Scheme::TimeSharing, params, lambda_grid, cfg);
    const auto mix = sweep_region(Scheme::GaussianMixture, params, default_mixture_grid(), cfg);
    const auto chi = sweep_region(Scheme::SignedChi, params, default_signed_chi_grid(), cfg);

    std::vector<std::pair<fs::path, std::string>> outputs;
    const struct {
      const char* name;
      const RegionCurve* curve;
    } files[] = {{"timeshare", &ts}, {"mixture", &mix}, {"signedchi", &chi}};
    std::vector<PlotCurve> plot;
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c"};
    int ci = 0;
    for (const auto& f : files) {
      const fs::path p = dir / (tag + "_" + f.name + ".csv");
      const std::string csv = curve_to_csv(*f.curve);
      write_file(p, csv);
      outputs.emplace_back(p, csv);
      PlotCurve pc;
      pc.label = f.name;
      pc.color = colors[ci++ % 3];
      for (const auto& cp : f.curve->grid) {
        if (cp.converged) pc.xy.emplace_back(cp.point.rate, cp.point.exponent);
      }
      plot.push_back(std::move(pc));
    }
    const std::string svg =
        render_svg("Rate-exponent region, SNR1 = SNR2 = " + fmt_sig9(db) + " dB", plot);
    const fs::path svg_path = dir / (tag + ".svg");
    write_file(svg_path, svg);
    outputs.emplace_back(svg_path, svg);
    write_manifest(dir / (tag + ".manifest.json"), command_line, 0, cfg, outputs);
    std::cout << "wrote " << tag << " curves + plot\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string margin;
};

void print_report(const std::vector<CheckResult>& checks) {
  size_t width = 10;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
              << std::string(width - c.name.size() + 2, ' ') << c.margin << "\n";
  }
}

void suite_identities(std::vector<CheckResult>& checks) {
  const QuadratureConfig cfg;
  // chi-squared identity against the closed-form half-log power.
  {
    double worst = 0.0;
    for (double db : {0.0, 10.0, 20.0}) {
      const double snr2 = db_to_linear(db);
      const double sigma = 1.0 / std::sqrt(snr2);
      const double base = 1.0 + 1.0 / (4.0 * sigma * sigma);
      for (int n = 1; n <= 200; ++n) {
        const double lhs = chernoff_weighted_power_integral(n, 0.0, sigma, cfg);
        const double rhs = std::pow(base, -0.5 * n);
        worst = std::max(worst, std::abs(lhs / rhs - 1.0));
      }
    }
    checks.push_back({"chi2_identity_n1_200", worst < 1e-8, "max rel err " + fmt_sig9(worst)});
  }
  // non-central variant with lambda = a n.
  {
    double worst = 0.0;
    const double snr2 = db_to_linear(10.0);
    const double sigma = 1.0 / std::sqrt(snr2);
    const double base = 1.0 + 1.0 / (4.0 * sigma * sigma);
    for (double a : {0.5, 1.0, 4.0}) {
      for (int n = 2; n <= 100; ++n) {
        const double lambda = a * n;
        const double lhs = chernoff_weighted_power_integral(n, lambda, sigma, cfg);
        const double rhs =
            std::pow(base, -0.5 * n) * std::exp(-lambda / (8.0 * sigma * sigma + 2.0));
        worst = std::max(worst, std::abs(lhs / rhs - 1.0));
      }
    }
    checks.push_back(
        {"noncentral_identity_n2_100", worst < 1e-6, "max rel err " + fmt_sig9(worst)});
  }
  // bound ordering across all four input laws.
  {
    const auto params = ChannelParams::from_db(10.0, 10.0);
    std::vector<int> grid;
    for (int n = 1; n <= 64; ++n) grid.push_back(n);
    double worst_margin = std::numeric_limits<double>::infinity();
    bool pass = true;
    for (const InputDistribution& dist :
         {InputDistribution{BinaryPam{1.0}}, InputDistribution{Gaussian{1.0}},
          InputDistribution{GaussianMixture{1.0}}, InputDistribution{SignedChi{4}}}) {
      const auto rep = audit_bounds(dist, params, grid, cfg);
      pass = pass && rep.all_pass;
      worst_margin = std::min(worst_margin, rep.worst_margin);
    }
    checks.push_back({"bound_audit", pass, "worst margin " + fmt_sig9(worst_margin)});
  }
}

void suite_mc(std::vector<CheckResult>& checks, std::uint64_t seed, long long trials) {
  const QuadratureConfig cfg;
  const auto params = ChannelParams::from_db(10.0, 10.0);
  const std::vector<InputDistribution> dists = {BinaryPam{1.0}, Gaussian{1.0},
                                                GaussianMixture{1.0}, SignedChi{4}};
  std::uint64_t stream = 0;
  for (const auto& dist : dists) {
    double worst_se = 0.0;
    for (int n = 1; n <= 8; ++n) {
      const double exact = avg_error_exact(dist, n, params, cfg);
      const auto mc = mc_detection_error(dist, n, params, trials, seed + stream++);
      const double se = std::sqrt(std::max(exact * (1.0 - exact) / double(trials), 1e-300));
      worst_se = std::max(worst_se, std::abs(mc.p_hat - exact) / se);
    }
    checks.push_back({"mc_vs_exact_" + distribution_name(dist), worst_se < 5.0,
                      "worst |z| " + fmt_sig9(worst_se) + " (limit 5)"});
  }
}

void suite_exponents(std::vector<CheckResult>& checks) {
  const QuadratureConfig cfg;
  const auto params = ChannelParams::from_db(10.0, 10.0);
  constexpr double kLog2E = 1.44269504088896340736;
  const double snr2 = params.snr2;
  std::vector<int> grid;
  for (int n = 50; n <= 400; n += 50) grid.push_back(n);

  const struct {
    InputDistribution dist;
    double target;
  } cases[] = {
      {BinaryPam{1.0}, snr2 / 8.0 * kLog2E},
      {Gaussian{1.0}, 0.5 * std::log2(1.0 + snr2 / 4.0)},
      {GaussianMixture{1.0},
       0.5 * std::log2(1.0 + snr2 / 8.0) + snr2 / (16.0 + 2.0 * snr2) * kLog2E},
      {SignedChi{4}, 2.0 * std::log2(1.0 + snr2 / 16.0)},
  };
  for (const auto& c : cases) {
    const auto fit = fit_exponent(c.dist, params, grid, cfg);
    const double rel = std::abs(fit.slope / c.target - 1.0);
    const bool pass = rel < 0.02 && fit.r_squared >= 0.999;
    checks.push_back({"exponent_fit_" + distribution_name(c.dist), pass,
                      "slope " + fmt_sig9(fit.slope) + " target " + fmt_sig9(c.target) + " r2 " +
                          fmt_sig9(fit.r_squared)});
  }
}

int cmd_verify(const std::string& suite, std::uint64_t seed, long long trials) {
  if (suite != "identities" && suite != "mc" && suite != "exponents" && suite != "all") {
    throw UsageError("unknown suite: " + suite);
  }
  std::vector<CheckResult> checks;
  if (suite == "identities" || suite == "all") suite_identities(checks);
  if (suite == "mc" || suite == "all") suite_mc(checks, seed, trials);
  if (suite == "exponents" || suite == "all") suite_exponents(checks);
  print_report(checks);
  const bool all = std::all_of(checks.begin(), checks.end(),
                               [](const CheckResult& c) { return c.pass; });
  if (!all) {
    for (const auto& c : checks) {
      if (!c.pass) std::cout << "FAILED: " << c.name << "\n";
    }
    return kExitVerifyFail;
  }
  std::cout << "all checks passed\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string command_line = join_args(argc, argv);
  CLI::App app{"Rate-exponent region calculator for the Gaussian ISAC channel"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  double snr1_db = 0.0, snr2_db = 0.0;
  std::string out, scheme, grid_spec, out_dir;
  std::string suite = "all";
  std::uint64_t seed = 20260826;
  long long trials = 100000;

  auto* corners = app.add_subcommand("corners", "Print the two corner points");
  corners->add_option("--snr1-db", snr1_db, "communication SNR in dB")->required();
  corners->add_option("--snr2-db", snr2_db, "sensing SNR in dB")->required();
  corners->add_option("--out", out, "optional CSV output path");

  auto* region = app.add_subcommand("region", "Sweep one achievability scheme to CSV");
  region->add_option("--scheme", scheme, "mixture | signedchi | timeshare")->required();
  region->add_option("--snr1-db", snr1_db, "communication SNR in dB")->required();
  region->add_option("--snr2-db", snr2_db, "sensing SNR in dB")->required();
  region->add_option("--grid", grid_spec, "grid spec lo:hi:count[:log]")->required();
  region->add_option("--out", out, "CSV output path")->required();

  auto* fig2 = app.add_subcommand("fig2", "Reproduce the four-panel region figure");
  fig2->add_option("--out-dir", out_dir, "output directory")->required();

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suite, "identities | mc | exponents | all");
  verify->add_option("--seed", seed, "Monte Carlo seed");
  verify->add_option("--trials", trials, "Monte Carlo trials per point")->check(CLI::Range(1000LL, 1000000000LL));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (corners->parsed()) return cmd_corners(snr1_db, snr2_db, out, command_line);
    if (region->parsed())
      return cmd_region(scheme, snr1_db, snr2_db, grid_spec, out, command_line);
    if (fig2->parsed()) return cmd_fig2(out_dir, command_line);
    if (verify->parsed()) return cmd_verify(suite, seed, trials);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitUsage;
}
