#include <cmath>

#include "doctest.h"
#include "hypspec/domains.hpp"
#include "hypspec/sturm_liouville.hpp"
#include "oracles.hpp"

using namespace hypspec;

namespace {
constexpr double kPi = 3.14159265358979323846;

SLProblem string_problem(double q_const = 0.0) {
  SLProblem prob;
  prob.p = [](double) { return 1.0; };
  prob.q = [q_const](double) { return q_const; };
  prob.w = [](double) { return 1.0; };
  prob.a = 0.0;
  prob.b = kPi;
  return prob;
}

Wedge example_wedge() {
  const auto dom =
      make_wedge(1.0, kPi / 3.0, 2.0 * kPi / 3.0, tensor_sin_theta());
  return std::get<Wedge>(dom.variant);
}

int sign_changes(const std::vector<double>& h) {
  int changes = 0;
  double prev = 0.0;
  for (double v : h) {
    if (std::abs(v) < 1e-9) continue;
    if (prev != 0.0 && v * prev < 0.0) ++changes;
    prev = v;
  }
  return changes;
}
}  // namespace

TEST_SUITE("sturm_liouville") {

TEST_CASE("fixed string eigenvalues are the squares") {
  const auto sol = sl_eigs(string_problem(), 6, 2048);
  for (int k = 1; k <= 6; ++k) {
    const double exact = static_cast<double>(k) * k;
    CHECK(std::abs(sol.eigenvalues[k - 1] - exact) < 1e-3 * exact);
  }
}

TEST_CASE("constant potential shifts the spectrum") {
  const auto sol = sl_eigs(string_problem(4.0), 1, 2048);
  CHECK(std::abs(sol.eigenvalues[0] - 5.0) < 5e-3);
}

TEST_CASE("eigenvalues are strictly increasing and simple") {
  const auto check = [](const SLSolution& sol) {
    for (std::size_t k = 1; k < sol.eigenvalues.size(); ++k) {
      const double sep = sol.eigenvalues[k] - sol.eigenvalues[k - 1];
      CHECK(sep > 0.0);
      CHECK(sep > sol.refinement_estimate[k] + sol.refinement_estimate[k - 1]);
    }
  };
  check(sl_eigs(string_problem(), 6, 1024));
  check(sl_eigs(theta_problem(example_wedge(), 1.0), 4, 1024));
  check(sl_eigs(ball_problem(2, 1.0, 4.0, 0), 4, 1024));
}

TEST_CASE("k-th eigenfunction changes sign exactly k-1 times") {
  const auto sol = sl_eigs(string_problem(), 5, 512);
  for (int k = 1; k <= 5; ++k)
    CHECK(sign_changes(sol.eigenfunctions[k - 1]) == k - 1);
  const auto ang = sl_eigs(theta_problem(example_wedge(), 1.0), 4, 512);
  for (int k = 1; k <= 4; ++k)
    CHECK(sign_changes(ang.eigenfunctions[k - 1]) == k - 1);
}

TEST_CASE("discrete Rayleigh quotient reproduces each eigenvalue") {
  for (const SLProblem& prob :
       {string_problem(2.0), theta_problem(example_wedge(), 1.0)}) {
    const int grid = 512;
    const auto sol = sl_eigs(prob, 4, grid);
    const auto t = sl_discretize(prob, grid);
    for (int k = 0; k < 4; ++k) {
      const auto& h = sol.eigenfunctions[k];
      double num = 0.0, den = 0.0;
      const int n = static_cast<int>(h.size());
      for (int i = 0; i < n; ++i) {
        double row = t.kdiag[i] * h[i];
        if (i > 0) row += t.koff[i - 1] * h[i - 1];
        if (i + 1 < n) row += t.koff[i] * h[i + 1];
        num += h[i] * row;
        den += t.wdiag[i] * h[i] * h[i];
      }
      const double quotient = num / den;
      CHECK(std::abs(quotient - sol.eigenvalues[k]) <
            1e-10 * std::abs(sol.eigenvalues[k]));
    }
  }
}

TEST_CASE("angular problem has the advertised coefficients") {
  const Wedge w = example_wedge();
  const auto prob = theta_problem(w, 4.0);
  CHECK(prob.a == doctest::Approx(kPi / 3.0));
  CHECK(prob.b == doctest::Approx(2.0 * kPi / 3.0));
  CHECK(prob.p(kPi / 2.0) == doctest::Approx(1.0));
  CHECK(prob.q(kPi / 2.0) == doctest::Approx(4.0));
  CHECK(prob.w(kPi / 2.0) == doctest::Approx(1.0));  // csc^2 minimum
  CHECK(prob.w(kPi / 3.0) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("two-sided bracket for the first angular eigenvalue") {
  const Wedge w = example_wedge();
  const double eps = w.tensor.eps, delta = w.tensor.delta;
  const double s2 = std::pow(std::sin(w.theta_star()), 2);
  const double width = w.theta1 - w.theta0;
  const double base = kPi * kPi / (width * width);  // = 9 here
  for (double mu : {w.ell * w.ell, 4.0 * w.ell * w.ell}) {
    const auto sol = sl_eigs(theta_problem(w, mu), 2, 2048);
    const double lo1 = eps * s2 * (mu + base);
    const double hi1 = delta * (mu + base);
    CHECK(sol.eigenvalues[0] >= lo1 - 1e-6 * hi1);
    CHECK(sol.eigenvalues[0] <= hi1 + 1e-6 * hi1);
    // second eigenvalue bracket with the quadrupled base frequency
    const double lo2 = eps * s2 * (mu + 4.0 * base);
    const double hi2 = delta * (mu + 4.0 * base);
    CHECK(sol.eigenvalues[1] >= lo2 - 1e-6 * hi2);
    CHECK(sol.eigenvalues[1] <= hi2 + 1e-6 * hi2);
  }
  // worked endpoints at mu = 1: [6.495, 10]
  const auto sol = sl_eigs(theta_problem(w, 1.0), 1, 2048);
  CHECK(sol.eigenvalues[0] >= 6.495);
  CHECK(sol.eigenvalues[0] <= 10.0);
}

TEST_CASE("radial separation modes") {
  const auto m1 = radial_mode(1.0, 1);
  CHECK(m1.mu == doctest::Approx(1.0));
  CHECK(m1.profile(kPi / 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  const auto m2 = radial_mode(1.0, 2);
  CHECK(m2.mu == doctest::Approx(4.0));
  for (int k : {1, 2, 3}) {
    const auto mode = radial_mode(1.0, k);
    CHECK(std::abs(mode.profile(0.0)) < 1e-12);
    CHECK(std::abs(mode.profile(kPi)) < 1e-12);
  }
  CHECK_THROWS_AS(radial_mode(1.0, 0), std::invalid_argument);
}

TEST_CASE("ball ground state decreases toward the McKean constant") {
  double prev = 1e300;
  for (double a : {1.0, 2.0, 4.0, 8.0}) {
    const auto sol = sl_eigs(ball_problem(2, 1.0, a, 0), 1, 2048);
    CHECK(sol.eigenvalues[0] > 0.25);
    CHECK(sol.eigenvalues[0] < prev);
    prev = sol.eigenvalues[0];
  }
  const auto big = sl_eigs(ball_problem(2, 1.0, 32.0, 0), 1, 4096);
  CHECK(big.eigenvalues[0] > 0.25);
  CHECK(big.eigenvalues[0] - 0.25 < 0.02);
}

TEST_CASE("flat disk radial problem reproduces the Bessel ground state") {
  const double j0 = oracle::bessel_j0_first_root();
  const double exact = j0 * j0;
  const auto sol = sl_eigs(disk_radial_problem(1.0, 0), 1, 4096);
  CHECK(std::abs(sol.eigenvalues[0] - exact) < 5e-3 * exact);
}

TEST_CASE("wedge gap takes the expected branch with the expected gap") {
  const Wedge w = example_wedge();
  const auto gap = gap_wedge(w, 2048);
  CHECK(gap.branch == GapBranch::MuFourEllSq);
  CHECK(!gap.tie);
  const double g = gap.lambda2 - gap.lambda1;
  CHECK(g > 3.0 * (std::sqrt(3.0) / 2.0) * 0.75);  // 1.949...
  CHECK(g < 3.0);
  // the reported branch values are consistent with the minimum rule
  CHECK(gap.lambda2 ==
        doctest::Approx(std::min(gap.lambda1_mu4, gap.lambda2_mu1)));
}

TEST_CASE("near-degenerate constant-coefficient wedge saturates the gap") {
  const auto dom = make_wedge(1.0, kPi / 2.0 - 0.01, kPi / 2.0 + 0.01,
                              tensor_const(1.0));
  const Wedge w = std::get<Wedge>(dom.variant);
  const auto gap = gap_wedge(w, 2048);
  const double g = gap.lambda2 - gap.lambda1;
  CHECK(g < 3.0);
  CHECK(std::abs(g - 3.0) < 0.01 * 3.0);
}

TEST_CASE("normalized angular ground states have small plain mass") {
  const Wedge w = example_wedge();
  for (double mu : {1.0, 4.0}) {
    const double integral = theta_ground_state_l2(w, mu, 2048);
    CHECK(integral > 0.0);
    CHECK(integral < 1.0);
  }
}

TEST_CASE("invalid coefficient data is rejected") {
  SLProblem bad = string_problem();
  bad.p = [](double x) { return x - 0.5; };  // nonpositive on the grid
  CHECK_THROWS_AS(sl_eigs(bad, 1, 64), std::runtime_error);
  SLProblem badw = string_problem();
  badw.w = [](double x) { return x - 0.5; };
  CHECK_THROWS_AS(sl_eigs(badw, 1, 64), std::runtime_error);
}

}  // TEST_SUITE
