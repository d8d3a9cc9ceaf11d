#pragma once

// Finite-sample positive semidefinite kernel tests: Gram assembly, minimum
// eigenvalue, numeric rank and pivoted Cholesky Gram factorisation. Every
// verdict is about the supplied points only; no statement is made about the
// kernel on the whole domain.

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "symbidisc/bidisc.hpp"
#include "symbidisc/errors.hpp"
#include "symbidisc/hereditary.hpp"
#include "symbidisc/matrixnum.hpp"

namespace symbidisc {

using KernelPoint = ComplexVector;

struct GramMatrix {
  std::vector<KernelPoint> points;
  ComplexMatrix entries;  // entries(i, j) = k(points[i], points[j])
};

KernelPoint as_kernel_point(Complex z);
KernelPoint as_kernel_point(const GPoint& g);

/// [k(lambda_i, lambda_j)]. Throws InvalidInput when k(a, b) and
/// conj(k(b, a)) differ by more than `symmetry_tol`.
template <typename Kernel>
GramMatrix gram(const Kernel& kernel, std::vector<KernelPoint> points,
                double symmetry_tol = 1e-10) {
  const auto n = static_cast<Eigen::Index>(points.size());
  ComplexMatrix k(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      k(i, j) = kernel(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
  const double asym = n == 0 ? 0.0 : (k - k.adjoint()).cwiseAbs().maxCoeff();
  if (asym > symmetry_tol) {
    throw InvalidInput("gram: kernel is not Hermitian-symmetric on the samples (" +
                       std::to_string(asym) + ")");
  }
  return {std::move(points), (k + k.adjoint()) / 2.0};
}

/// Wraps an explicit Hermitian matrix as a Gram matrix over index points.
GramMatrix gram_from_matrix(const ComplexMatrix& entries);

struct PsdVerdict {
  bool psd = false;
  double min_eig = 0;
  double max_eig = 0;
};

PsdVerdict is_psd(const GramMatrix& g, double tol);

/// Eigenvalues > tol * max eigenvalue. Throws InvalidInput when not psd
/// (min eigenvalue below -tol * max(1, max eigenvalue)).
int numeric_rank(const GramMatrix& g, double tol = 1e-9);

/// Rows F(lambda_i) with <F(lambda_i), F(lambda_j)> = k(lambda_i, lambda_j),
/// by diagonally pivoted Cholesky stopping once the remaining diagonal mass
/// drops below tol.
std::vector<ComplexVector> gram_factor(const GramMatrix& g, double tol = 1e-12);

/// max_{i,j} |<F_i, F_j> - k_ij|.
double factor_residual(const GramMatrix& g, const std::vector<ComplexVector>& factors);

struct QuotientVerdict {
  bool psd = false;
  int rank = 0;
  double min_eig = 0;
  ComplexMatrix kernel;  // the quotient Gram matrix
};

/// h = f^vee (1 - Phi_omega^vee Phi_omega) f is evaluated through its
/// cleared-denominator hereditary polynomial; the quotient
/// h(lambda, conj mu) / (1 - conj(Phi_omega(mu)) Phi_omega(lambda)) is
/// assembled on the points and tested for psd and rank <= 1.
QuotientVerdict extremal_quotient_check(const Polynomial& f, CirclePoint omega,
                                        const std::vector<GPoint>& points);

/// max over point pairs of
///   |(1 - conj(m f(mu)) m f(lambda)) - conj(g(mu)) (1 - conj(f(mu)) f(lambda)) g(lambda)|
/// with g = sqrt(1 - |a|^2) / (1 - conj(a) f), a the centre of m.
template <typename Point, typename F>
double magic_sandwich_identity(const Moebius& m, const F& f, const std::vector<Point>& points) {
  const Complex a = m.center().value();
  const double scale = std::sqrt(1.0 - std::norm(a));
  std::vector<Complex> fv;
  fv.reserve(points.size());
  for (const auto& pt : points) fv.push_back(f(pt));
  double worst = 0;
  for (const Complex fl : fv) {
    for (const Complex fm : fv) {
      const Complex lhs = 1.0 - std::conj(m.apply(fm)) * m.apply(fl);
      const Complex gl = scale / (1.0 - std::conj(a) * fl);
      const Complex gm = scale / (1.0 - std::conj(a) * fm);
      const Complex rhs = std::conj(gm) * (1.0 - std::conj(fm) * fl) * gl;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

}  // namespace symbidisc
