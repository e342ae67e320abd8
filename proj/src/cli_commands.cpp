#include "momstab/cli_commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "momstab/langmuir.hpp"
#include "momstab/manifest.hpp"
#include "momstab/moment_ops.hpp"
#include "momstab/sde_mc.hpp"
#include "momstab/spectral.hpp"
#include "momstab/system_io.hpp"

namespace momstab::cli {

using nlohmann::json;

namespace {

constexpr const char* kUnitsNote =
    "# units: dimensionless (lengths scaled by sqrt(3) V_thermal, rates in "
    "plasma-frequency units)";
constexpr const char* kReductionNote =
    "# 1D reduction: transverse Laplacian dropped (k along Oz)";

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path);
  if (!out) throw InvalidInput(path.string() + ": cannot open for writing");
  return out;
}

class Timer {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void write_manifest(const std::string& command, const json& options,
                    std::uint64_t seed, const std::string& out_dir,
                    const Timer& timer) {
  RunManifest m;
  m.command = command;
  m.options = options;
  m.seed = seed;
  m.duration_seconds = timer.seconds();
  std::filesystem::create_directories(out_dir);
  save_manifest(m, (std::filesystem::path(out_dir) / "manifest.json").string());
}

template <typename Fn>
int guarded(std::ostream& out, Fn&& fn) {
  try {
    return fn();
  } catch (const BasisTooLarge& e) {
    out << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const GridTooCoarse& e) {
    out << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const BracketNotFound& e) {
    out << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const EigenSolveFailure& e) {
    out << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const InvalidInput& e) {
    out << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const IndexOutOfRange& e) {
    out << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  }
}

CorrelationProfile profile_from(const std::string& kind, double amplitude,
                                double width) {
  CorrelationProfile p;
  if (kind == "gaussian")
    p.kind = ProfileKind::Gaussian;
  else if (kind == "exponential")
    p.kind = ProfileKind::Exponential;
  else if (kind == "rectangular")
    p.kind = ProfileKind::Rectangular;
  else
    throw InvalidInput("unknown profile kind '" + kind +
                       "' (expected gaussian, exponential or rectangular)");
  p.amplitude = amplitude;
  p.width = width;
  return p;
}

}  // namespace

std::vector<double> GridSpec::points() const {
  if (count < 1) throw InvalidInput("grid count must be >= 1");
  std::vector<double> pts(count);
  if (count == 1) {
    pts[0] = start;
    return pts;
  }
  for (int i = 0; i < count; ++i)
    pts[i] = start + (stop - start) * static_cast<double>(i) / (count - 1);
  return pts;
}

GridSpec GridSpec::parse(const std::string& text) {
  GridSpec g;
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw InvalidInput("grid '" + text + "' must look like start:stop:count");
  try {
    g.start = std::stod(text.substr(0, c1));
    g.stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    g.count = std::stoi(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw InvalidInput("grid '" + text + "' must look like start:stop:count");
  }
  if (g.count < 1) throw InvalidInput("grid count must be >= 1");
  return g;
}

std::optional<GridSpec> grid_for(const std::vector<std::string>& assignments,
                                 const std::string& name) {
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("grid assignment '" + a +
                         "' must look like name=start:stop:count");
    if (a.substr(0, eq) == name) return GridSpec::parse(a.substr(eq + 1));
  }
  return std::nullopt;
}

void to_json(json& j, const GridSpec& g) {
  j = json{{"start", g.start}, {"stop", g.stop}, {"count", g.count}};
}
void from_json(const json& j, GridSpec& g) {
  j.at("start").get_to(g.start);
  j.at("stop").get_to(g.stop);
  j.at("count").get_to(g.count);
}

namespace {

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j.at(key).is_null()) v = j.at(key).get<T>();
}

}  // namespace

void to_json(json& j, const MomentsOptions& o) {
  j = json{{"spec_path", o.spec_path},
           {"degree", o.degree},
           {"cap", o.cap},
           {"out_dir", o.out_dir}};
}
void from_json(const json& j, MomentsOptions& o) {
  j.at("spec_path").get_to(o.spec_path);
  j.at("degree").get_to(o.degree);
  j.at("cap").get_to(o.cap);
  j.at("out_dir").get_to(o.out_dir);
}

void to_json(json& j, const SimulateOptions& o) {
  j = json{{"spec_path", o.spec_path}, {"initial_state", o.initial_state},
           {"dt", o.dt},               {"horizon", o.horizon},
           {"paths", o.paths},         {"seed", o.seed},
           {"degrees", o.degrees},     {"window", o.window},
           {"samples", o.samples},     {"out_dir", o.out_dir}};
}
void from_json(const json& j, SimulateOptions& o) {
  j.at("spec_path").get_to(o.spec_path);
  j.at("initial_state").get_to(o.initial_state);
  j.at("dt").get_to(o.dt);
  j.at("horizon").get_to(o.horizon);
  j.at("paths").get_to(o.paths);
  j.at("seed").get_to(o.seed);
  j.at("degrees").get_to(o.degrees);
  j.at("window").get_to(o.window);
  j.at("samples").get_to(o.samples);
  j.at("out_dir").get_to(o.out_dir);
}

void to_json(json& j, const DispersionOptions& o) {
  j = json{{"m", o.m},           {"k1", o.k1},
           {"k2", o.k2},         {"sigma2", o.sigma2},
           {"out_dir", o.out_dir}};
  put_optional(j, "k_grid", o.k_grid);
  put_optional(j, "sigma2_grid", o.sigma2_grid);
}
void from_json(const json& j, DispersionOptions& o) {
  j.at("m").get_to(o.m);
  j.at("k1").get_to(o.k1);
  j.at("k2").get_to(o.k2);
  j.at("sigma2").get_to(o.sigma2);
  j.at("out_dir").get_to(o.out_dir);
  get_optional(j, "k_grid", o.k_grid);
  get_optional(j, "sigma2_grid", o.sigma2_grid);
}

void to_json(json& j, const WhiteNoiseOptions& o) {
  j = json{{"m", o.m}, {"k", o.k}, {"sigma2", o.sigma2}, {"out_dir", o.out_dir}};
  put_optional(j, "k_grid", o.k_grid);
  put_optional(j, "sigma2_grid", o.sigma2_grid);
}
void from_json(const json& j, WhiteNoiseOptions& o) {
  j.at("m").get_to(o.m);
  j.at("k").get_to(o.k);
  j.at("sigma2").get_to(o.sigma2);
  j.at("out_dir").get_to(o.out_dir);
  get_optional(j, "k_grid", o.k_grid);
  get_optional(j, "sigma2_grid", o.sigma2_grid);
}

void to_json(json& j, const BoundstateOptions& o) {
  j = json{{"kind", o.kind},
           {"amplitude", o.amplitude},
           {"width", o.width},
           {"m", o.m},
           {"half_width", o.half_width},
           {"points", o.points},
           {"lambda_grid", o.lambda_grid},
           {"out_dir", o.out_dir}};
}
void from_json(const json& j, BoundstateOptions& o) {
  j.at("kind").get_to(o.kind);
  j.at("amplitude").get_to(o.amplitude);
  j.at("width").get_to(o.width);
  j.at("m").get_to(o.m);
  j.at("half_width").get_to(o.half_width);
  j.at("points").get_to(o.points);
  j.at("lambda_grid").get_to(o.lambda_grid);
  j.at("out_dir").get_to(o.out_dir);
}

void to_json(json& j, const ThresholdOptions& o) {
  j = json{{"kind", o.kind},
           {"amplitude", o.amplitude},
           {"width", o.width},
           {"m", o.m},
           {"k_grid", o.k_grid},
           {"half_width", o.half_width},
           {"points", o.points},
           {"out_dir", o.out_dir}};
}
void from_json(const json& j, ThresholdOptions& o) {
  j.at("kind").get_to(o.kind);
  j.at("amplitude").get_to(o.amplitude);
  j.at("width").get_to(o.width);
  j.at("m").get_to(o.m);
  j.at("k_grid").get_to(o.k_grid);
  j.at("half_width").get_to(o.half_width);
  j.at("points").get_to(o.points);
  j.at("out_dir").get_to(o.out_dir);
}

void to_json(json& j, const AppendixOptions& o) {
  j = json{{"eps1", o.eps1},
           {"eps2", o.eps2},
           {"sigma2", o.sigma2},
           {"out_dir", o.out_dir}};
  put_optional(j, "eps1_grid", o.eps1_grid);
  put_optional(j, "eps2_grid", o.eps2_grid);
  put_optional(j, "sigma2_grid", o.sigma2_grid);
}
void from_json(const json& j, AppendixOptions& o) {
  j.at("eps1").get_to(o.eps1);
  j.at("eps2").get_to(o.eps2);
  j.at("sigma2").get_to(o.sigma2);
  j.at("out_dir").get_to(o.out_dir);
  get_optional(j, "eps1_grid", o.eps1_grid);
  get_optional(j, "eps2_grid", o.eps2_grid);
  get_optional(j, "sigma2_grid", o.sigma2_grid);
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

int run_moments(const MomentsOptions& opts, std::ostream& out) {
  return guarded(out, [&] {
    Timer timer;
    const LinearSDESystem sys = load_system(opts.spec_path);
    const MomentOperator op =
        build_moment_operator(sys, opts.degree, opts.cap);
    const SpectrumResult spec = eigenpairs(op.matrix);
    const double abscissa = spec.eigenvalues(0).real();
    const double lambda_m = abscissa / opts.degree;

    auto mat = open_out(opts.out_dir, "operator.txt");
    mat << "# moment evolution operator, dim=" << sys.dim
        << ", degree=" << opts.degree << ", basis size " << op.basis.size()
        << "\n";
    mat << "# basis tuples (0-based state indices):\n";
    for (std::size_t i = 0; i < op.basis.size(); ++i) {
      mat << "#   [" << i << "] (";
      const auto& t = op.basis.tuple(i);
      for (std::size_t j = 0; j < t.size(); ++j)
        mat << (j ? "," : "") << t[j];
      mat << ")\n";
    }
    for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
      for (Eigen::Index j = 0; j < op.matrix.cols(); ++j)
        mat << (j ? " " : "") << fmt17(op.matrix(i, j));
      mat << "\n";
    }

    auto csv = open_out(opts.out_dir, "spectrum.csv");
    csv << "index,re,im,residual\n";
    for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k)
      csv << k << "," << fmt17(spec.eigenvalues(k).real()) << ","
          << fmt17(spec.eigenvalues(k).imag()) << ","
          << fmt17(spec.residuals(k)) << "\n";

    auto summary = open_out(opts.out_dir, "summary.txt");
    summary << "degree m = " << opts.degree << ", basis size "
            << op.basis.size() << "\n";
    summary << "spectral abscissa = " << fmt6(abscissa) << "\n";
    summary << "lambda_m = abscissa / m = " << fmt6(lambda_m) << "\n";

    out << "lambda_" << opts.degree << " = " << fmt6(lambda_m)
        << " (abscissa " << fmt6(abscissa) << ", basis " << op.basis.size()
        << ")\n";
    write_manifest("moments", json(opts), 0, opts.out_dir, timer);
    return kExitOk;
  });
}

int run_simulate(const SimulateOptions& opts, std::ostream& out) {
  return guarded(out, [&] {
    Timer timer;
    EnsembleConfig cfg;
    cfg.system = load_system(opts.spec_path);
    cfg.initial_state = opts.initial_state.empty()
                            ? Eigen::VectorXd::Ones(cfg.system.dim)
                            : Eigen::Map<const Eigen::VectorXd>(
                                  opts.initial_state.data(),
                                  static_cast<Eigen::Index>(
                                      opts.initial_state.size()))
                                  .eval();
    cfg.dt = opts.dt;
    cfg.horizon = opts.horizon;
    cfg.paths = opts.paths;
    cfg.seed = opts.seed;
    cfg.moment_degrees = opts.degrees;
    cfg.samples = opts.samples;

    for (const auto& w : validate_config(cfg)) out << "warning: " << w << "\n";

    const MomentTrace trace = simulate_ensemble(cfg);

    auto csv = open_out(opts.out_dir, "trace.csv");
    csv << "t,p,estimate,stderr\n";
    for (std::size_t d = 0; d < trace.degrees.size(); ++d)
      for (std::size_t s = 0; s < trace.times.size(); ++s)
        csv << fmt17(trace.times[s]) << "," << trace.degrees[d] << ","
            << fmt17(trace.norm_values[d][s]) << ","
            << fmt17(trace.norm_stderr[d][s]) << "\n";

    auto summary = open_out(opts.out_dir, "summary.txt");
    summary << "paths " << opts.paths << ", dt " << fmt6(opts.dt)
            << ", horizon " << fmt6(opts.horizon) << ", seed " << opts.seed
            << "\n";
    if (trace.overflow)
      summary << "overflow: trace truncated at t=" <<
          (trace.times.empty() ? 0.0 : trace.times.back()) << "\n";

    summary << "degree, mc_rate, mc_stderr, mc_lambda_p, operator_rate, "
               "operator_lambda_p\n";
    for (int p : opts.degrees) {
      std::string mc_rate = "n/a", mc_err = "n/a", mc_lp = "n/a";
      try {
        const GrowthRateFit fit = fit_growth_rate(trace, p, opts.window);
        mc_rate = fmt6(fit.rate);
        mc_err = fmt6(fit.stderr);
        mc_lp = fmt6(fit.rate / p);
      } catch (const Error& e) {
        mc_rate = std::string("n/a (") + e.what() + ")";
      }
      std::string op_rate = "n/a", op_lp = "n/a";
      if (p % 2 == 0) {
        try {
          const MomentOperator op = build_moment_operator(cfg.system, p);
          const double abscissa = spectral_abscissa(op.matrix);
          op_rate = fmt6(abscissa);
          op_lp = fmt6(abscissa / p);
        } catch (const BasisTooLarge&) {
          op_rate = "n/a (basis too large)";
        }
      }
      summary << p << ", " << mc_rate << ", " << mc_err << ", " << mc_lp
              << ", " << op_rate << ", " << op_lp << "\n";
      out << "p=" << p << ": mc rate " << mc_rate << " +/- " << mc_err
          << ", operator rate " << op_rate << "\n";
    }

    write_manifest("simulate", json(opts), opts.seed, opts.out_dir, timer);
    return trace.overflow ? kExitOverflow : kExitOk;
  });
}

int run_dispersion(const DispersionOptions& opts, std::ostream& out) {
  return guarded(out, [&] {
    Timer timer;
    if (opts.k_grid || opts.sigma2_grid) {
      const std::vector<double> ks =
          opts.k_grid ? opts.k_grid->points() : std::vector<double>{opts.k1};
      const std::vector<double> s2s = opts.sigma2_grid
                                          ? opts.sigma2_grid->points()
                                          : std::vector<double>{opts.sigma2};
      auto csv = open_out(opts.out_dir, "stability_map.csv");
      csv << kUnitsNote << "\n";
      csv << "# constant-correlation dispersion with k1 = k2 = k\n";
      csv << "k,sigma2,max_real_lambda,verdict\n";
      for (double k : ks)
        for (double s2 : s2s) {
          const DispersionRoots r =
              dispersion_complete_correlation(opts.m, k, k, s2);
          csv << fmt17(k) << "," << fmt17(s2) << "," << fmt17(r.max_real)
              << "," << to_string(r.classification) << "\n";
        }
      out << "stability map: " << ks.size() * s2s.size() << " grid points\n";
    } else {
      const DispersionRoots r = dispersion_complete_correlation(
          opts.m, opts.k1, opts.k2, opts.sigma2);
      auto csv = open_out(opts.out_dir, "roots.csv");
      csv << kUnitsNote << "\n";
      csv << "re,im\n";
      for (const auto& root : r.roots)
        csv << fmt17(root.real()) << "," << fmt17(root.imag()) << "\n";
      out << "max Re lambda = " << fmt6(r.max_real) << " ("
          << to_string(r.classification) << ")\n";
    }
    write_manifest("langmuir-dispersion", json(opts), 0, opts.out_dir, timer);
    return kExitOk;
  });
}

int run_whitenoise(const WhiteNoiseOptions& opts, std::ostream& out) {
  return guarded(out, [&] {
    Timer timer;
    const std::vector<double> ks =
        opts.k_grid ? opts.k_grid->points() : std::vector<double>{opts.k};
    const std::vector<double> s2s = opts.sigma2_grid
                                        ? opts.sigma2_grid->points()
                                        : std::vector<double>{opts.sigma2};
    auto csv = open_out(opts.out_dir, "whitenoise_map.csv");
    csv << kUnitsNote << "\n";
    csv << "# spatio-temporal white noise, 1D; threshold sigma^4 = 4 k^2 (4 "
           "m^2 + k^2)\n";
    csv << "k,sigma2,max_real_lambda,verdict\n";
    Stability last = Stability::Marginal;
    for (double k : ks)
      for (double s2 : s2s) {
        const DispersionRoots r = white_noise_growth(opts.m, k, s2);
        csv << fmt17(k) << "," << fmt17(s2) << "," << fmt17(r.max_real) << ","
            << to_string(r.classification) << "\n";
        last = r.classification;
      }
    if (ks.size() == 1 && s2s.size() == 1)
      out << "verdict: " << to_string(last) << " (threshold sigma^4 = "
          << fmt6(white_noise_threshold_sigma4(opts.m, ks[0])) << ")\n";
    else
      out << "white-noise map: " << ks.size() * s2s.size()
          << " grid points\n";
    write_manifest("langmuir-whitenoise", json(opts), 0, opts.out_dir, timer);
    return kExitOk;
  });
}

int run_boundstate(const BoundstateOptions& opts, std::ostream& out) {
  return guarded(out, [&] {
    Timer timer;
    const CorrelationProfile profile =
        profile_from(opts.kind, opts.amplitude, opts.width);
    const double half_width =
        opts.half_width > 0.0 ? opts.half_width : 10.0 * opts.width;

    BoundStateOptions solver;
    solver.half_width = half_width;
    solver.grid_points = opts.points;

    auto csv = open_out(opts.out_dir, "boundstate.csv");
    csv << kUnitsNote << "\n";
    csv << "# ground state of -psi'' - C(x)/(2 lambda) psi on [-L, L], L="
        << fmt6(half_width) << ", N=" << opts.points << "\n";
    csv << "lambda,E_lambda,matching_residual\n";
    const double m2 = opts.m * opts.m;
    for (double lambda : opts.lambda_grid.points()) {
      const auto e = bound_state_energy(profile, lambda, half_width,
                                        opts.points, solver);
      const double energy = e ? *e
                              : lowest_eigenvalue_raw(profile, lambda, 1.0,
                                                      half_width, opts.points);
      const double residual = std::abs(energy + m2 + 0.25 * lambda * lambda);
      csv << fmt17(lambda) << "," << fmt17(energy) << "," << fmt17(residual)
          << "\n";
    }

    LangmuirProblem problem;
    problem.plasma_mass = opts.m;
    problem.correlation = profile;
    const GrowthRateResult root = find_growth_rate_k0(problem, solver);

    auto summary = open_out(opts.out_dir, "summary.txt");
    summary << "k = 0 matched growth rate lambda* = " << fmt17(root.lambda_star)
            << "\n";
    summary << "E(lambda*) = " << fmt17(root.energy)
            << ", matching residual = " << fmt17(root.matching_residual)
            << "\n";
    out << "lambda* = " << fmt6(root.lambda_star) << " (residual "
        << fmt6(root.matching_residual) << ")\n";

    write_manifest("langmuir-boundstate", json(opts), 0, opts.out_dir, timer);
    return kExitOk;
  });
}

int run_threshold(const ThresholdOptions& opts, std::ostream& out) {
  return guarded(out, [&] {
    Timer timer;
    LangmuirProblem problem;
    problem.plasma_mass = opts.m;
    problem.correlation = profile_from(opts.kind, opts.amplitude, opts.width);

    BoundStateOptions solver;
    solver.half_width =
        opts.half_width > 0.0 ? opts.half_width : 10.0 * opts.width;
    solver.grid_points = opts.points;

    auto csv = open_out(opts.out_dir, "thresholds.csv");
    csv << kUnitsNote << "\n";
    csv << kReductionNote << "\n";
    csv << "k,c_star,verdict_at_amplitude\n";
    for (double k : opts.k_grid.points()) {
      const double c_star = stability_threshold_k(problem, k, solver);
      const ModeStability verdict = stability_verdict_k(problem, k, solver);
      csv << fmt17(k) << "," << fmt17(c_star) << ","
          << (verdict.verdict == Verdict::Unstable ? "unstable" : "stable")
          << "\n";
      out << "k=" << fmt6(k) << ": c* = " << fmt6(c_star) << ", c = "
          << fmt6(opts.amplitude) << " is "
          << (verdict.verdict == Verdict::Unstable ? "unstable" : "stable")
          << "\n";
    }
    write_manifest("langmuir-threshold", json(opts), 0, opts.out_dir, timer);
    return kExitOk;
  });
}

int run_appendix(const AppendixOptions& opts, std::ostream& out) {
  return guarded(out, [&] {
    Timer timer;
    const auto pts = [](const std::optional<GridSpec>& g, double fallback) {
      return g ? g->points() : std::vector<double>{fallback};
    };
    auto csv = open_out(opts.out_dir, "appendix.csv");
    csv << kUnitsNote << "\n";
    csv << "eps1,eps2,sigma2,max_residual,abscissa_matrix,abscissa_quartic\n";
    double worst = 0.0;
    for (double e1 : pts(opts.eps1_grid, opts.eps1))
      for (double e2 : pts(opts.eps2_grid, opts.eps2))
        for (double s2 : pts(opts.sigma2_grid, opts.sigma2)) {
          const double residual = appendix_dispersion_check(e1, e2, s2);
          worst = std::max(worst, residual);
          const double abscissa_matrix =
              spectral_abscissa(appendix_matrix(e1, e2, s2));
          const DispersionRoots quartic = dispersion_for_energies(e1, e2, s2);
          csv << fmt17(e1) << "," << fmt17(e2) << "," << fmt17(s2) << ","
              << fmt17(residual) << "," << fmt17(abscissa_matrix) << ","
              << fmt17(quartic.max_real) << "\n";
        }
    out << "max residual = " << fmt6(worst) << "\n";
    write_manifest("langmuir-appendix", json(opts), 0, opts.out_dir, timer);
    return kExitOk;
  });
}

int run_from_manifest(const std::string& manifest_path,
                      const std::string& out_dir_override, std::ostream& out) {
  return guarded(out, [&] {
    const RunManifest m = load_manifest(manifest_path);
    json options = m.options;
    if (!out_dir_override.empty()) options["out_dir"] = out_dir_override;

    if (m.command == "moments")
      return run_moments(options.get<MomentsOptions>(), out);
    if (m.command == "simulate")
      return run_simulate(options.get<SimulateOptions>(), out);
    if (m.command == "langmuir-dispersion")
      return run_dispersion(options.get<DispersionOptions>(), out);
    if (m.command == "langmuir-whitenoise")
      return run_whitenoise(options.get<WhiteNoiseOptions>(), out);
    if (m.command == "langmuir-boundstate")
      return run_boundstate(options.get<BoundstateOptions>(), out);
    if (m.command == "langmuir-threshold")
      return run_threshold(options.get<ThresholdOptions>(), out);
    if (m.command == "langmuir-appendix")
      return run_appendix(options.get<AppendixOptions>(), out);
    throw InvalidInput("manifest names unknown command '" + m.command + "'");
  });
}

}  // namespace momstab::cli
