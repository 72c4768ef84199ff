#include "hypspec/assembly2d.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace hypspec {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ConformalChart conformal_chart(const DomainSpec& domain) {
  ConformalChart chart;
  chart.au = [](double, double) { return 1.0; };
  chart.av = [](double, double) { return 1.0; };

  if (const auto* w = std::get_if<Wedge>(&domain.variant)) {
    chart.u0 = 0.0;
    chart.u1 = kPi / w->ell;
    chart.v0 = w->theta0;
    chart.v1 = w->theta1;
    chart.rho = [](double, double th) {
      const double s = std::sin(th);
      return 1.0 / (s * s);
    };
    chart.tag = "wedge";
    return chart;
  }
  if (const auto* r = std::get_if<Rectangle>(&domain.variant)) {
    chart.u0 = r->u0;
    chart.u1 = r->u1;
    chart.v0 = r->v0;
    chart.v1 = r->v1;
    if (domain.model.kind == Model::Kind::Hyperbolic) {
      const double kappa = domain.model.kappa;
      chart.rho = [kappa](double, double y) { return 1.0 / (kappa * kappa * y * y); };
      chart.tag = "half-plane-rectangle";
    } else {
      chart.rho = [](double, double) { return 1.0; };
      chart.tag = "euclidean-rectangle";
    }
    return chart;
  }
  if (const auto* d = std::get_if<Disk>(&domain.variant)) {
    chart.u0 = 0.0;
    chart.u1 = d->radius;
    chart.v0 = 0.0;
    chart.v1 = 2.0 * kPi;
    chart.rho = [](double r2, double) { return r2; };
    chart.au = [](double r2, double) { return r2; };
    chart.av = [](double r2, double) { return 1.0 / r2; };
    chart.periodic_v = true;
    chart.cell_centered_u = true;
    chart.left_dirichlet_u = false;
    chart.tag = "disk-polar";
    return chart;
  }
  throw std::invalid_argument(
      "conformal_chart: domain variant has no rectangular chart");
}

Pencil assemble(const ConformalChart& chart, const TensorSpec& tensor,
                const DriftSpec& drift, int nu, int nv) {
  if (nu < 2 || nv < 2) throw std::invalid_argument("assemble: grid too small");
  if (chart.periodic_v && nv < 3)
    throw std::invalid_argument("assemble: periodic direction needs nv >= 3");

  const double hu = chart.cell_centered_u ? (chart.u1 - chart.u0) / nu
                                          : (chart.u1 - chart.u0) / (nu + 1);
  const double hv = chart.periodic_v ? (chart.v1 - chart.v0) / nv
                                     : (chart.v1 - chart.v0) / (nv + 1);

  auto unode = [&](int i) {
    return chart.cell_centered_u ? chart.u0 + (i + 0.5) * hu
                                 : chart.u0 + (i + 1) * hu;
  };
  auto vnode = [&](int j) {
    return chart.periodic_v ? chart.v0 + j * hv : chart.v0 + (j + 1) * hv;
  };

  auto weight = [&](double u, double v) {
    const double phi = tensor.phi.v(u, v);
    if (!(phi > 0.0))
      throw std::runtime_error("assemble: nonpositive coefficient sampled");
    return phi * std::exp(-drift.eta.v(u, v));
  };
  auto cu = [&](double u, double v) { return weight(u, v) * chart.au(u, v); };
  auto cv = [&](double u, double v) { return weight(u, v) * chart.av(u, v); };
  auto face = [](double a, double b) { return std::sqrt(a * b); };

  Pencil pencil;
  pencil.nu = nu;
  pencil.nv = nv;
  pencil.hu = hu;
  pencil.hv = hv;
  pencil.Mdiag.resize(nu * nv);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(nu) * nv * 5);

  for (int i = 0; i < nu; ++i) {
    const double u = unode(i);
    for (int j = 0; j < nv; ++j) {
      const double v = vnode(j);
      const int idx = pencil.index(i, j);
      double diag = 0.0;

      // u-direction fluxes
      const double cu_here = cu(u, v);
      if (i + 1 < nu) {
        const double c = face(cu_here, cu(unode(i + 1), v)) * hv / hu;
        diag += c;
        trip.emplace_back(idx, pencil.index(i + 1, j), -c);
        trip.emplace_back(pencil.index(i + 1, j), idx, -c);
      } else {
        // right boundary (Dirichlet)
        diag += chart.cell_centered_u ? 2.0 * cu(chart.u1, v) * hv / hu
                                      : face(cu_here, cu(chart.u1, v)) * hv / hu;
      }
      if (i > 0) {
        diag += face(cu_here, cu(unode(i - 1), v)) * hv / hu;
      } else if (chart.cell_centered_u) {
        if (chart.left_dirichlet_u) diag += 2.0 * cu(chart.u0, v) * hv / hu;
        // natural condition: no left flux
      } else {
        diag += face(cu_here, cu(chart.u0, v)) * hv / hu;
      }

      // v-direction fluxes
      const double cv_here = cv(u, v);
      if (chart.periodic_v) {
        const int jn = (j + 1) % nv;
        const double c = face(cv_here, cv(u, vnode(jn))) * hu / hv;
        diag += c;
        trip.emplace_back(idx, pencil.index(i, jn), -c);
        trip.emplace_back(pencil.index(i, jn), idx, -c);
        const int jp = (j + nv - 1) % nv;
        diag += face(cv_here, cv(u, vnode(jp))) * hu / hv;
      } else {
        if (j + 1 < nv) {
          const double c = face(cv_here, cv(u, vnode(j + 1))) * hu / hv;
          diag += c;
          trip.emplace_back(idx, pencil.index(i, j + 1), -c);
          trip.emplace_back(pencil.index(i, j + 1), idx, -c);
        } else {
          diag += face(cv_here, cv(u, chart.v1)) * hu / hv;
        }
        if (j > 0) {
          diag += face(cv_here, cv(u, vnode(j - 1))) * hu / hv;
        } else {
          diag += face(cv_here, cv(u, chart.v0)) * hu / hv;
        }
      }

      trip.emplace_back(idx, idx, diag);
      pencil.Mdiag(idx) =
          std::exp(-drift.eta.v(u, v)) * chart.rho(u, v) * hu * hv;
    }
  }

  pencil.K.resize(nu * nv, nu * nv);
  pencil.K.setFromTriplets(trip.begin(), trip.end());
  pencil.K.makeCompressed();
  return pencil;
}

Spectrum spectrum_2d(const Pencil& pencil, int count, SolveMethod method) {
  if (count > pencil.dof() / 4)
    throw std::invalid_argument("spectrum_2d: count must be <= dof/4");
  return solve_generalized(pencil.K, pencil.Mdiag, count, method);
}

std::vector<double> richardson_eigenvalues(const ConformalChart& chart,
                                           const TensorSpec& tensor,
                                           const DriftSpec& drift, int nu,
                                           int nv, int count,
                                           SolveMethod method) {
  const Pencil coarse = assemble(chart, tensor, drift, nu, nv);
  const Pencil fine = assemble(chart, tensor, drift, 2 * nu, 2 * nv);
  const Spectrum sc = spectrum_2d(coarse, count, method);
  const Spectrum sf = spectrum_2d(fine, count, method);
  const double ratio = coarse.hu / fine.hu;
  const double r2 = ratio * ratio;
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = (r2 * sf.eigenvalues[i] - sc.eigenvalues[i]) / (r2 - 1.0);
  return out;
}

void write_matrix_market(const Pencil& pencil, std::ostream& k_out,
                         std::ostream& m_out) {
  const auto& K = pencil.K;
  // lower triangle of the symmetric stiffness
  size_t nnz = 0;
  for (int k = 0; k < K.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, k); it; ++it)
      if (it.row() >= it.col()) ++nnz;

  k_out << "%%MatrixMarket matrix coordinate real symmetric\n";
  k_out << K.rows() << " " << K.cols() << " " << nnz << "\n";
  k_out.precision(17);
  for (int k = 0; k < K.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, k); it; ++it)
      if (it.row() >= it.col())
        k_out << it.row() + 1 << " " << it.col() + 1 << " " << it.value()
              << "\n";

  m_out << "%%MatrixMarket matrix coordinate real symmetric\n";
  m_out << pencil.Mdiag.size() << " " << pencil.Mdiag.size() << " "
        << pencil.Mdiag.size() << "\n";
  m_out.precision(17);
  for (int i = 0; i < pencil.Mdiag.size(); ++i)
    m_out << i + 1 << " " << i + 1 << " " << pencil.Mdiag(i) << "\n";
}

}  // namespace hypspec
