#include "hypspec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hypspec/assembly2d.hpp"
#include "hypspec/geometry.hpp"
#include "hypspec/sturm_liouville.hpp"

namespace hypspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

double parse_double(const std::string& v) {
  size_t pos = 0;
  const double d = std::stod(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("not a number: " + v);
  return d;
}

int parse_int(const std::string& v) {
  size_t pos = 0;
  const int i = std::stoi(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("not an integer: " + v);
  return i;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("not a boolean: " + v);
}

std::vector<double> parse_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

void finalize(ExperimentResult& r, bool strict) {
  r.pass = true;
  for (const auto& rep : r.reports)
    if (rep.applicable && !rep.pass) r.pass = false;
  if (strict && !r.warnings.empty()) r.pass = false;
}

Wedge wedge_from(const ExperimentConfig& cfg) {
  TensorSpec tensor = tensor_sin_theta();
  tensor.eps = std::sin(std::min(cfg.theta0, kPi - cfg.theta1));
  DomainSpec dom = make_wedge(cfg.ell, cfg.theta0, cfg.theta1, tensor);
  return std::get<Wedge>(dom.variant);
}

}  // namespace

bool ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "experiment") experiment = value;
  else if (key == "ell") ell = parse_double(value);
  else if (key == "theta0") theta0 = parse_double(value);
  else if (key == "theta1") theta1 = parse_double(value);
  else if (key == "n") n = parse_int(value);
  else if (key == "kappa") kappa = parse_double(value);
  else if (key == "radius") radius = parse_double(value);
  else if (key == "radii") radii = parse_list(value);
  else if (key == "modes") modes = parse_int(value);
  else if (key == "u0") u0 = parse_double(value);
  else if (key == "u1") u1 = parse_double(value);
  else if (key == "v0") v0 = parse_double(value);
  else if (key == "v1") v1 = parse_double(value);
  else if (key == "drift") drift = value;
  else if (key == "drift_amp") drift_amp = parse_double(value);
  else if (key == "annulus_kappa1") annulus_kappa1 = parse_double(value);
  else if (key == "annulus_c") annulus_c = parse_double(value);
  else if (key == "annulus_R") annulus_R = parse_double(value);
  else if (key == "annulus_alpha") annulus_alpha = parse_double(value);
  else if (key == "annulus_n") annulus_n = parse_int(value);
  else if (key == "grid") grid = parse_int(value);
  else if (key == "grid2d") grid2d = parse_int(value);
  else if (key == "count") count = parse_int(value);
  else if (key == "kmax") kmax = parse_int(value);
  else if (key == "refine") refine = parse_bool(value);
  else if (key == "strict") strict = parse_bool(value);
  else return false;
  return true;
}

std::string ExperimentResult::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["pass"] = pass;
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : reports) reps.push_back(nlohmann::json::parse(r.to_json()));
  j["reports"] = reps;
  nlohmann::json sc = nlohmann::json::object();
  for (const auto& [k, v] : scalars) sc[k] = v;
  j["scalars"] = sc;
  nlohmann::json tb = nlohmann::json::object();
  for (const auto& [k, v] : eigenvalue_tables) tb[k] = v;
  j["tables"] = tb;
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

std::string ExperimentResult::eigenvalues_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "table,index,value\n";
  for (const auto& [name, vals] : eigenvalue_tables)
    for (size_t i = 0; i < vals.size(); ++i)
      os << name << "," << i + 1 << "," << vals[i] << "\n";
  return os.str();
}

std::vector<std::string> list_experiments() {
  return {"gap", "ball-limit", "universal", "thm2", "weyl", "eta-check"};
}

DriftSpec drift_angular(double base_x, double base_y, double amp) {
  auto angle = [base_x, base_y](double x, double y) {
    // center of the geodesic semicircle through the base point and (x, y)
    const double c = (x * x + y * y - base_x * base_x - base_y * base_y) /
                     (2.0 * (x - base_x));
    return std::atan2(c - base_x, base_y);
  };
  DriftSpec d;
  d.eta.value = [angle, amp](double x, double y) {
    return amp * std::sin(angle(x, y));
  };
  return d;
}

std::vector<double> ball_spectrum(int n, double kappa, double radius,
                                  int modes, int count, int grid) {
  std::vector<double> all;
  for (int m = 0; m <= modes; ++m) {
    const SLSolution sol =
        sl_eigs(ball_problem(n, kappa, radius, m), count, grid);
    // each angular mode m > 0 carries multiplicity 2 on the disk
    const int mult = (n == 2 && m > 0) ? 2 : 1;
    for (double l : sol.eigenvalues)
      for (int c = 0; c < mult; ++c) all.push_back(l);
  }
  std::sort(all.begin(), all.end());
  all.resize(std::min<size_t>(all.size(), count));
  return all;
}

ExperimentResult run_gap(const ExperimentConfig& cfg) {
  const int grid = cfg.grid > 0 ? cfg.grid : 2048;
  const int g2 = cfg.grid2d > 0 ? cfg.grid2d : 64;
  const Wedge wedge = wedge_from(cfg);

  ExperimentResult res;
  res.experiment = "gap";

  const GapResult gap = gap_wedge(wedge, grid);
  const double D = wedge_diameter(wedge);
  res.reports = check_gap(wedge, gap, D, grid);
  if (gap.tie)
    res.warnings.push_back("gap branches degenerate within refinement error");

  res.scalars.emplace_back("lambda1", gap.lambda1);
  res.scalars.emplace_back("lambda2", gap.lambda2);
  res.scalars.emplace_back("gap", gap.lambda2 - gap.lambda1);
  res.scalars.emplace_back("diameter", D);
  res.scalars.emplace_back("branch_mu4", gap.branch == GapBranch::MuFourEllSq);
  res.eigenvalue_tables.emplace_back(
      "separated", std::vector<double>{gap.lambda1, gap.lambda2});

  // cross-check against the full 2-D solver on two nested grids
  DomainSpec dom = make_wedge(cfg.ell, cfg.theta0, cfg.theta1, wedge.tensor);
  const ConformalChart chart = conformal_chart(dom);
  const Pencil coarse = assemble(chart, wedge.tensor, constant_drift(), g2, g2);
  const Pencil fine =
      assemble(chart, wedge.tensor, constant_drift(), 2 * g2, 2 * g2);
  const Spectrum sc = spectrum_2d(coarse, 2);
  const Spectrum sf = spectrum_2d(fine, 2);
  res.eigenvalue_tables.emplace_back("grid2d", sf.eigenvalues);

  const double sep[2] = {gap.lambda1, gap.lambda2};
  const char* names[2] = {"2d-match/lambda1", "2d-match/lambda2"};
  for (int i = 0; i < 2; ++i) {
    InequalityReport r;
    r.name = names[i];
    r.lhs = std::abs(sf.eigenvalues[i] - sep[i]) / sep[i];
    r.rhs = 0.01;
    r.margin = r.rhs - r.lhs;
    r.pass = r.lhs <= r.rhs;
    r.inputs.emplace_back("lambda_2d_coarse", sc.eigenvalues[i]);
    r.inputs.emplace_back("lambda_2d_fine", sf.eigenvalues[i]);
    r.inputs.emplace_back("lambda_separated", sep[i]);
    res.reports.push_back(r);
  }
  if (cfg.refine) {
    std::vector<double> extrap(2);
    for (int i = 0; i < 2; ++i)
      extrap[i] = (4.0 * sf.eigenvalues[i] - sc.eigenvalues[i]) / 3.0;
    res.eigenvalue_tables.emplace_back("grid2d_extrapolated", extrap);
  }

  finalize(res, cfg.strict);
  return res;
}

ExperimentResult run_ball_limit(const ExperimentConfig& cfg) {
  const int grid = cfg.grid > 0 ? cfg.grid : 8192;
  const double limit =
      (cfg.n - 1) * (cfg.n - 1) * cfg.kappa * cfg.kappa / 4.0;

  ExperimentResult res;
  res.experiment = "ball-limit";
  std::vector<double> lam, excess;
  for (double a : cfg.radii) {
    const SLSolution sol =
        sl_eigs(ball_problem(cfg.n, cfg.kappa, a, 0), 1, grid);
    lam.push_back(sol.eigenvalues[0]);
    excess.push_back(sol.eigenvalues[0] - limit);
  }
  res.eigenvalue_tables.emplace_back("lambda1", lam);
  res.scalars.emplace_back("limit", limit);

  for (size_t i = 0; i < lam.size(); ++i) {
    InequalityReport r;
    std::ostringstream name;
    name << "lower-limit/a=" << cfg.radii[i];
    r.name = name.str();
    r.lhs = limit;
    r.rhs = lam[i];
    r.slack = -1e-9 * std::max(1.0, limit);
    r.margin = r.rhs - r.lhs;
    r.pass = r.lhs <= r.rhs + r.slack;
    res.reports.push_back(r);
  }
  {
    InequalityReport r;
    r.name = "monotone-decreasing";
    double worst = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < lam.size(); ++i)
      worst = std::min(worst, lam[i] - lam[i + 1]);
    r.lhs = 0.0;
    r.rhs = worst;
    r.margin = worst;
    r.pass = worst > 0.0;
    res.reports.push_back(r);
  }
  if (excess.size() >= 2 && cfg.radii.back() == 2.0 * cfg.radii[excess.size() - 2]) {
    // excess should fall like a^-2: the last doubling should shrink it by
    // about 4, accepted within a factor of 2
    const double ratio = excess[excess.size() - 2] / excess.back();
    InequalityReport r;
    r.name = "decay-quadratic";
    r.lhs = std::abs(std::log(ratio / 4.0));
    r.rhs = std::log(2.0);
    r.margin = r.rhs - r.lhs;
    r.pass = r.lhs <= r.rhs;
    r.inputs.emplace_back("ratio", ratio);
    res.reports.push_back(r);
    res.scalars.emplace_back("excess_last", excess.back());
  }

  finalize(res, cfg.strict);
  return res;
}

ExperimentResult run_universal(const ExperimentConfig& cfg) {
  const int g2 = cfg.grid2d > 0 ? cfg.grid2d : 64;
  DomainSpec dom = make_rectangle(cfg.u0, cfg.u1, cfg.v0, cfg.v1,
                                  Model::hyperbolic(cfg.kappa));
  const ConformalChart chart = conformal_chart(dom);
  const TensorSpec tensor = tensor_const(1.0);

  DriftSpec drift = constant_drift();
  if (cfg.drift == "angular")
    drift = drift_angular(cfg.u0 - 5.0, 0.5 * (cfg.v0 + cfg.v1), cfg.drift_amp);
  else if (cfg.drift != "none")
    throw std::invalid_argument("universal: drift must be none or angular");

  const Pencil pencil = assemble(chart, tensor, drift, g2, g2);
  const Spectrum spec = spectrum_2d(pencil, cfg.kmax + 5);

  ExperimentResult res;
  res.experiment = "universal";
  res.eigenvalue_tables.emplace_back("spectrum", spec.eigenvalues);
  for (int k = 1; k <= cfg.kmax; ++k)
    res.reports.push_back(check_universal(spec, 2, 1.0, 1.0, cfg.kappa, k));

  finalize(res, cfg.strict);
  return res;
}

ExperimentResult run_thm2(const ExperimentConfig& cfg) {
  ExperimentResult res;
  res.experiment = "thm2";

  // annulus drift identity: 2 C0 (n-1)(kappa1+alpha) + C1 = 0
  {
    DomainSpec dom = make_annulus(cfg.annulus_n, cfg.annulus_kappa1,
                                  cfg.annulus_c, cfg.annulus_R,
                                  cfg.annulus_alpha);
    const DriftConstants dc = drift_constants(
        dom, drift_quadratic_radial(cfg.annulus_c), 1.0,
        cfg.grid > 0 ? cfg.grid : 512);
    const double lhs = 2.0 * dc.C0 * (cfg.annulus_n - 1) *
                           (cfg.annulus_kappa1 + cfg.annulus_alpha) +
                       dc.C1;
    InequalityReport r;
    r.name = "annulus-identity";
    r.lhs = std::abs(lhs) / std::max(1.0, std::abs(dc.C1));
    r.rhs = 1e-9;
    r.margin = r.rhs - r.lhs;
    r.pass = r.lhs <= r.rhs;
    r.inputs.emplace_back("C0", dc.C0);
    r.inputs.emplace_back("C1", dc.C1);
    res.reports.push_back(r);
  }

  res.scalars.emplace_back("a_n2", a_const(2, 1.0, 1.0));
  res.scalars.emplace_back("a_n3", a_const(3, 1.0, 1.0));

  // recursion bounds on a merged hyperbolic-ball spectrum
  const int grid = cfg.grid > 0 ? cfg.grid : 4096;
  const int want = std::max(cfg.kmax + 2, 8);
  std::vector<double> lam =
      ball_spectrum(cfg.n, cfg.kappa, cfg.radius, cfg.modes, want, grid);
  res.eigenvalue_tables.emplace_back("ball_spectrum", lam);

  BoundParams params;
  params.n = cfg.n;
  params.eps = 1.0;
  params.delta = 1.0;
  params.kappa1 = cfg.kappa;
  params.kappa2 = cfg.kappa;
  const UpsilonSequence ups = upsilon(lam, params);
  if (ups.first_negative)
    res.warnings.push_back("first auxiliary value negative");
  res.scalars.emplace_back("upsilon1", ups.values[0]);
  res.scalars.emplace_back("upsilon2_over_upsilon1",
                           ups.values[1] / ups.values[0]);

  const int krange = std::min(cfg.kmax, static_cast<int>(lam.size()) - 1);
  for (int k = 1; k <= krange; ++k) {
    for (auto& r : check_recursions(ups, k)) res.reports.push_back(r);
    Spectrum spec;
    spec.eigenvalues = lam;
    res.reports.push_back(check_thm2(spec, params, k));
  }

  finalize(res, cfg.strict);
  return res;
}

ExperimentResult run_weyl(const ExperimentConfig& cfg) {
  const int g2 = cfg.grid2d > 0 ? cfg.grid2d : 128;
  DomainSpec dom =
      make_rectangle(cfg.u0, cfg.u1, cfg.u0, cfg.u1, Model::euclidean());
  const ConformalChart chart = conformal_chart(dom);
  const TensorSpec tensor = tensor_const(1.0);

  const Pencil pencil = assemble(chart, tensor, constant_drift(), g2, g2);
  const Spectrum spec = spectrum_2d(pencil, cfg.count);

  ExperimentResult res;
  res.experiment = "weyl";
  res.eigenvalue_tables.emplace_back("spectrum", spec.eigenvalues);
  const double c0 = weyl_constant(chart, tensor);
  res.scalars.emplace_back("c0", c0);
  res.reports = check_weyl(spec.eigenvalues, c0, 2, 0.10);

  finalize(res, cfg.strict);
  return res;
}

ExperimentResult run_eta_check(const ExperimentConfig& cfg) {
  const int grid = cfg.grid > 0 ? cfg.grid : 512;
  const Wedge wedge = wedge_from(cfg);

  ExperimentResult res;
  res.experiment = "eta-check";
  const struct {
    const char* name;
    DriftSpec drift;
  } cases[] = {
      {"residual/log-tan-theta", drift_log_tan_theta()},
      {"residual/log-radial", drift_log_radial(cfg.ell)},
  };
  for (const auto& c : cases) {
    const double resid = eta_residual(wedge.tensor, c.drift, wedge, grid);
    InequalityReport r;
    r.name = c.name;
    r.lhs = resid;
    r.rhs = 1e-8;
    r.margin = r.rhs - r.lhs;
    r.pass = r.lhs <= r.rhs;
    res.reports.push_back(r);
    res.scalars.emplace_back(c.name, resid);
  }

  finalize(res, cfg.strict);
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "gap") return run_gap(cfg);
  if (cfg.experiment == "ball-limit") return run_ball_limit(cfg);
  if (cfg.experiment == "universal") return run_universal(cfg);
  if (cfg.experiment == "thm2") return run_thm2(cfg);
  if (cfg.experiment == "weyl") return run_weyl(cfg);
  if (cfg.experiment == "eta-check") return run_eta_check(cfg);
  throw std::invalid_argument("unknown experiment: " + cfg.experiment);
}

namespace {

void atomic_write(const std::filesystem::path& target,
                  const std::string& contents) {
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << contents;
    if (!out.flush())
      throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace

void write_outputs(const ExperimentResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  atomic_write(base / "report.json", result.to_json());
  atomic_write(base / "eigenvalues.csv", result.eigenvalues_csv());
}

}  // namespace hypspec
