#include "symbidisc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace symbidisc {

KernelPoint as_kernel_point(Complex z) {
  KernelPoint p(1);
  p(0) = z;
  return p;
}

KernelPoint as_kernel_point(const GPoint& g) {
  KernelPoint p(2);
  p << g.s(), g.p();
  return p;
}

GramMatrix gram_from_matrix(const ComplexMatrix& entries) {
  if (entries.rows() != entries.cols()) throw DimensionError("gram_from_matrix: not square");
  std::vector<KernelPoint> points;
  for (Eigen::Index i = 0; i < entries.rows(); ++i) points.push_back(as_kernel_point(Complex(i)));
  const ComplexMatrix copy = entries;
  return gram([&copy](const KernelPoint& a, const KernelPoint& b) {
    return copy(static_cast<Eigen::Index>(a(0).real()), static_cast<Eigen::Index>(b(0).real()));
  }, std::move(points));
}

PsdVerdict is_psd(const GramMatrix& g, double tol) {
  PsdVerdict v;
  if (g.entries.size() == 0) {
    v.psd = true;
    return v;
  }
  const auto eig = hermitian_eigenvalues(g.entries, 1e-10);
  v.min_eig = eig.eigenvalues(0);
  v.max_eig = eig.eigenvalues(eig.eigenvalues.size() - 1);
  v.psd = v.min_eig >= -tol;
  return v;
}

int numeric_rank(const GramMatrix& g, double tol) {
  if (g.entries.size() == 0) return 0;
  const auto eig = hermitian_eigenvalues(g.entries, 1e-10);
  const double max_eig = eig.eigenvalues(eig.eigenvalues.size() - 1);
  if (eig.eigenvalues(0) < -tol * std::max(1.0, max_eig)) {
    throw InvalidInput("numeric_rank: Gram matrix is not positive semidefinite");
  }
  if (max_eig <= 0) return 0;
  return static_cast<int>(
      (eig.eigenvalues.array() > tol * max_eig).count());
}

std::vector<ComplexVector> gram_factor(const GramMatrix& g, double tol) {
  const ComplexMatrix& k = g.entries;
  const Eigen::Index n = k.rows();
  ComplexMatrix l = ComplexMatrix::Zero(n, n);
  RealVector diag = k.diagonal().real();
  Eigen::Index step = 0;
  while (step < n) {
    Eigen::Index pivot = 0;
    const double dmax = diag.maxCoeff(&pivot);
    if (diag.minCoeff() < -std::max(tol, 1e-9 * std::abs(dmax))) {
      throw InvalidInput("gram_factor: Gram matrix is not positive semidefinite");
    }
    const double mass = diag.cwiseMax(0.0).sum();
    if (mass < tol) break;
    ComplexVector col = k.col(pivot);
    if (step > 0) col -= l.leftCols(step) * l.row(pivot).head(step).adjoint();
    col /= std::sqrt(dmax);
    l.col(step) = col;
    diag -= col.cwiseAbs2();
    diag(pivot) = 0;
    ++step;
  }
  std::vector<ComplexVector> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) rows.push_back(l.row(i).head(step).transpose());
  return rows;
}

double factor_residual(const GramMatrix& g, const std::vector<ComplexVector>& factors) {
  double worst = 0;
  const auto n = static_cast<Eigen::Index>(factors.size());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      // <F_i, F_j> = sum F_i conj(F_j)
      const Complex inner = factors[static_cast<std::size_t>(j)].dot(factors[static_cast<std::size_t>(i)]);
      worst = std::max(worst, std::abs(inner - g.entries(i, j)));
    }
  return worst;
}

QuotientVerdict extremal_quotient_check(const Polynomial& f, CirclePoint omega,
                                        const std::vector<GPoint>& points) {
  if (f.dim() != 2) throw DimensionError("extremal_quotient_check: f must be a function of (s, p)");
  const HereditaryPolynomial cleared = sandwich(magic_cleared_form(omega), f);
  const Complex w = omega.value();
  std::vector<KernelPoint> kp;
  for (const auto& g : points) kp.push_back(as_kernel_point(g));
  auto kernel = [&](const KernelPoint& lam, const KernelPoint& mu) {
    const std::array<Complex, 2> x{lam(0), lam(1)};
    const std::array<Complex, 2> ybar{std::conj(mu(0)), std::conj(mu(1))};
    // h(lambda, conj mu) with the (2 - omega s) factors divided back out
    const Complex weight = std::conj(2.0 - w * mu(0)) * (2.0 - w * lam(0));
    const Complex h = hered_eval_point(cleared, x, ybar) / weight;
    const Complex phi_l = phi(omega, GPoint::trusted(lam(0), lam(1)));
    const Complex phi_m = phi(omega, GPoint::trusted(mu(0), mu(1)));
    return h / (1.0 - std::conj(phi_m) * phi_l);
  };
  QuotientVerdict v;
  const GramMatrix g = gram(kernel, std::move(kp));
  const PsdVerdict psd = is_psd(g, 1e-10 * std::max(1.0, g.entries.cwiseAbs().maxCoeff()));
  v.psd = psd.psd;
  v.min_eig = psd.min_eig;
  v.rank = v.psd ? numeric_rank(g, 1e-9) : static_cast<int>(g.entries.rows());
  v.kernel = g.entries;
  return v;
}

}  // namespace symbidisc
