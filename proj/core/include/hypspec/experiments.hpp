#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hypspec/inequalities.hpp"

namespace hypspec {

/// Flat parameter set for the named experiments. Fields not used by an
/// experiment are ignored; zero grid values select per-experiment defaults.
struct ExperimentConfig {
  std::string experiment;  // gap | ball-limit | universal | thm2 | weyl | eta-check

  // wedge
  double ell = 1.0;
  double theta0 = 1.0471975511965976;  // pi/3
  double theta1 = 2.0943951023931953;  // 2pi/3

  // ball / recursion spectra
  int n = 2;
  double kappa = 1.0;
  double radius = 6.0;
  std::vector<double> radii = {1, 2, 4, 8, 16, 32};
  int modes = 3;  // angular modes 0..modes merged

  // half-plane rectangle
  double u0 = 0.0, u1 = 1.0, v0 = 1.0, v1 = 2.0;
  std::string drift = "none";  // none | angular
  double drift_amp = 0.5;

  // annulus identity
  double annulus_kappa1 = 1.0;
  double annulus_c = 5.0;
  double annulus_R = 2.0;
  double annulus_alpha = 0.5;
  int annulus_n = 3;

  // solver sizes
  int grid = 0;    // 1-D grid
  int grid2d = 0;  // per-direction 2-D grid
  int count = 100;
  int kmax = 10;
  bool refine = false;
  bool strict = false;  // escalate warnings to failures

  /// Assign a key from config text; false when the key is unknown.
  bool set(const std::string& key, const std::string& value);
};

/// Everything an experiment produced; serialization is deterministic so a
/// re-run byte-reproduces the files.
struct ExperimentResult {
  std::string experiment;
  std::vector<InequalityReport> reports;
  std::vector<std::pair<std::string, std::vector<double>>> eigenvalue_tables;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::string> warnings;
  bool pass = true;

  std::string to_json() const;
  std::string eigenvalues_csv() const;
};

std::vector<std::string> list_experiments();

ExperimentResult run_gap(const ExperimentConfig& cfg);
ExperimentResult run_ball_limit(const ExperimentConfig& cfg);
ExperimentResult run_universal(const ExperimentConfig& cfg);
ExperimentResult run_thm2(const ExperimentConfig& cfg);
ExperimentResult run_weyl(const ExperimentConfig& cfg);
ExperimentResult run_eta_check(const ExperimentConfig& cfg);

/// Dispatch on cfg.experiment; throws std::invalid_argument for an unknown
/// name.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Drift depending only on the direction angle of the geodesic from a base
/// point of the half-plane, hence radially constant:
/// eta = amp sin(angle). The base point must lie strictly left of the
/// rectangle so the angle is smooth.
DriftSpec drift_angular(double base_x, double base_y, double amp);

/// Dirichlet spectrum of a hyperbolic ball with angular modes 0..modes
/// merged and sorted, via the radial normal-form problems.
std::vector<double> ball_spectrum(int n, double kappa, double radius,
                                  int modes, int count, int grid);

/// Write report.json and eigenvalues.csv under dir; each file is staged
/// next to its target and renamed, so a failure leaves no partial output.
void write_outputs(const ExperimentResult& result, const std::string& dir);

}  // namespace hypspec
