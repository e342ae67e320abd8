#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "momstab/cli_commands.hpp"
#include "momstab/errors.hpp"
#include "momstab/manifest.hpp"

namespace {

using namespace momstab::cli;

int parse_error(const momstab::Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moment-stability analysis of linear SDE systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", momstab::kToolVersion);

  // moments
  MomentsOptions moments;
  auto* cmd_moments = app.add_subcommand(
      "moments", "assemble the degree-m moment operator and its spectrum");
  cmd_moments->add_option("--spec", moments.spec_path, "system spec file")
      ->required();
  cmd_moments->add_option("--degree", moments.degree, "moment degree m");
  cmd_moments->add_option("--cap", moments.cap, "basis size cap");
  cmd_moments->add_option("--out", moments.out_dir, "output directory");

  // simulate
  SimulateOptions sim;
  std::vector<double> x0;
  auto* cmd_sim = app.add_subcommand(
      "simulate", "Euler-Maruyama ensemble with growth-rate fits");
  cmd_sim->add_option("--spec", sim.spec_path, "system spec file")->required();
  cmd_sim->add_option("--x0", x0, "initial state (default: all ones)");
  cmd_sim->add_option("--dt", sim.dt, "time step");
  cmd_sim->add_option("--horizon", sim.horizon, "total time T");
  cmd_sim->add_option("--paths", sim.paths, "ensemble size");
  cmd_sim->add_option("--seed", sim.seed, "RNG seed");
  cmd_sim->add_option("--degrees", sim.degrees, "moment degrees p");
  cmd_sim->add_option("--window", sim.window, "trailing fit window fraction");
  cmd_sim->add_option("--samples", sim.samples, "sample grid size");
  cmd_sim->add_option("--out", sim.out_dir, "output directory");

  // langmuir family
  auto* cmd_lang = app.add_subcommand("langmuir", "wave destabilization solvers");
  cmd_lang->require_subcommand(1);

  DispersionOptions disp;
  std::vector<std::string> disp_grids;
  auto* cmd_disp = cmd_lang->add_subcommand(
      "dispersion", "constant-correlation quartic dispersion");
  cmd_disp->add_option("--m", disp.m, "plasma mass");
  cmd_disp->add_option("--k1", disp.k1, "first wavenumber");
  cmd_disp->add_option("--k2", disp.k2, "second wavenumber");
  cmd_disp->add_option("--sigma2", disp.sigma2, "noise intensity");
  cmd_disp->add_option("--grid", disp_grids,
                       "grid scan, e.g. k=0:2:9 sigma2=0:1:5");
  cmd_disp->add_option("--out", disp.out_dir, "output directory");

  WhiteNoiseOptions wn;
  std::vector<std::string> wn_grids;
  auto* cmd_wn = cmd_lang->add_subcommand(
      "whitenoise", "1D spatio-temporal white-noise threshold");
  cmd_wn->add_option("--m", wn.m, "plasma mass");
  cmd_wn->add_option("--k", wn.k, "wavenumber");
  cmd_wn->add_option("--sigma2", wn.sigma2, "noise intensity");
  cmd_wn->add_option("--grid", wn_grids, "grid scan, e.g. k=0.5:2:4");
  cmd_wn->add_option("--out", wn.out_dir, "output directory");

  BoundstateOptions bs;
  std::string bs_lambda;
  auto* cmd_bs = cmd_lang->add_subcommand(
      "boundstate", "positive-correlation bound-state diagnostics, k = 0");
  cmd_bs->add_option("--kind", bs.kind, "gaussian|exponential|rectangular");
  cmd_bs->add_option("--amplitude", bs.amplitude, "C(0)");
  cmd_bs->add_option("--width", bs.width, "correlation width");
  cmd_bs->add_option("--m", bs.m, "plasma mass");
  cmd_bs->add_option("--half-width", bs.half_width,
                     "domain half width L (default 10*width)");
  cmd_bs->add_option("--points", bs.points, "interior grid points N");
  cmd_bs->add_option("--lambda", bs_lambda, "lambda grid start:stop:count");
  cmd_bs->add_option("--out", bs.out_dir, "output directory");

  ThresholdOptions th;
  std::string th_k;
  auto* cmd_th = cmd_lang->add_subcommand(
      "threshold", "k > 0 critical noise amplitude (1D reduction)");
  cmd_th->add_option("--kind", th.kind, "gaussian|exponential|rectangular");
  cmd_th->add_option("--amplitude", th.amplitude, "C(0) to classify");
  cmd_th->add_option("--width", th.width, "correlation width");
  cmd_th->add_option("--m", th.m, "plasma mass");
  cmd_th->add_option("--k", th_k, "k grid start:stop:count");
  cmd_th->add_option("--half-width", th.half_width, "domain half width L");
  cmd_th->add_option("--points", th.points, "interior grid points N");
  cmd_th->add_option("--out", th.out_dir, "output directory");

  AppendixOptions ap;
  std::vector<std::string> ap_grids;
  auto* cmd_ap = cmd_lang->add_subcommand(
      "appendix", "4x4 mode-matrix identity and quartic cross-check");
  cmd_ap->add_option("--eps1", ap.eps1, "first mode energy");
  cmd_ap->add_option("--eps2", ap.eps2, "second mode energy");
  cmd_ap->add_option("--sigma2", ap.sigma2, "noise intensity");
  cmd_ap->add_option("--grid", ap_grids,
                     "grid scan, e.g. eps1=0.5:3:5 sigma2=0:2:5");
  cmd_ap->add_option("--out", ap.out_dir, "output directory");

  // rerun
  std::string manifest_path, rerun_out;
  auto* cmd_rerun =
      app.add_subcommand("rerun", "re-execute a run from its manifest");
  cmd_rerun->add_option("--manifest", manifest_path, "manifest.json path")
      ->required();
  cmd_rerun->add_option("--out", rerun_out, "override output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_moments->parsed()) return run_moments(moments, std::cout);
    if (cmd_sim->parsed()) {
      sim.initial_state = x0;
      return run_simulate(sim, std::cout);
    }
    if (cmd_disp->parsed()) {
      disp.k_grid = grid_for(disp_grids, "k");
      disp.sigma2_grid = grid_for(disp_grids, "sigma2");
      return run_dispersion(disp, std::cout);
    }
    if (cmd_wn->parsed()) {
      wn.k_grid = grid_for(wn_grids, "k");
      wn.sigma2_grid = grid_for(wn_grids, "sigma2");
      return run_whitenoise(wn, std::cout);
    }
    if (cmd_bs->parsed()) {
      if (!bs_lambda.empty()) bs.lambda_grid = GridSpec::parse(bs_lambda);
      return run_boundstate(bs, std::cout);
    }
    if (cmd_th->parsed()) {
      if (!th_k.empty()) th.k_grid = GridSpec::parse(th_k);
      return run_threshold(th, std::cout);
    }
    if (cmd_ap->parsed()) {
      ap.eps1_grid = grid_for(ap_grids, "eps1");
      ap.eps2_grid = grid_for(ap_grids, "eps2");
      ap.sigma2_grid = grid_for(ap_grids, "sigma2");
      return run_appendix(ap, std::cout);
    }
    if (cmd_rerun->parsed())
      return run_from_manifest(manifest_path, rerun_out, std::cout);
  } catch (const momstab::Error& e) {
    return parse_error(e);
  }
  return kExitInputError;
}
