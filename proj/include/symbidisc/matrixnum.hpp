#pragma once

// Small dense complex linear algebra: products, adjoints, a cyclic Jacobi
// Hermitian eigensolver, operator norms and a Hessenberg/shifted-QR Schur
// triangularization. Every routine is a pure function of its arguments and
// works on any Eigen expression with a std::complex scalar.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "symbidisc/errors.hpp"

namespace symbidisc {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = RVector<double>;

inline constexpr Eigen::Index kMaxMatrixDim = 32;

template <typename Real>
struct HermitianEigenResult {
  RVector<Real> eigenvalues;   // ascending
  CMatrix<Real> eigenvectors;  // columns match eigenvalues
  Real residual = 0;           // max_k |A v_k - lambda_k v_k|
  int sweeps = 0;
};

template <typename Real>
struct SchurResult {
  CMatrix<Real> q;  // unitary
  CMatrix<Real> r;  // upper triangular, q^* a q = r
};

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* who) {
  if (!a.allFinite()) {
    throw InvalidInput(std::string(who) + ": matrix has non-finite entries");
  }
}

template <typename Derived>
void require_size_cap(const Eigen::MatrixBase<Derived>& a, const char* who) {
  if (a.rows() > kMaxMatrixDim || a.cols() > kMaxMatrixDim) {
    throw DimensionError(std::string(who) + ": matrices are capped at 32x32");
  }
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError(std::string(who) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

// Returns (c, s) with [[c, s], [-conj(s), c]] * [a; b] = [r; 0], c real.
template <typename Real>
void givens(std::complex<Real> a, std::complex<Real> b, Real& c, std::complex<Real>& s) {
  const Real abs_a = std::abs(a);
  const Real abs_b = std::abs(b);
  if (abs_b == Real(0)) {
    c = 1;
    s = 0;
    return;
  }
  if (abs_a == Real(0)) {
    c = 0;
    s = 1;
    return;
  }
  const Real r = std::hypot(abs_a, abs_b);
  c = abs_a / r;
  s = (a / abs_a) * std::conj(b) / r;
}

}  // namespace detail

/// Matrix product with an explicit shape check.
template <typename DerivedA, typename DerivedB>
auto matmul(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  using Real = typename DerivedA::RealScalar;
  CMatrix<Real> out = a * b;
  return out;
}

template <typename Derived>
auto adjoint(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  CMatrix<Real> out = a.adjoint();
  return out;
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. `tol` bounds the admissible entrywise distance between `a` and
/// its adjoint; the eigenpair residual must also fall below
/// max(tol, 1e-10) * max(1, |a|_F).
template <typename Derived>
HermitianEigenResult<typename Derived::RealScalar> hermitian_eigen(
    const Eigen::MatrixBase<Derived>& input, typename Derived::RealScalar tol = 1e-10) {
  using Real = typename Derived::RealScalar;
  using Complex = std::complex<Real>;
  constexpr int kMaxSweeps = 100;

  CMatrix<Real> a = input;
  detail::require_square(a, "hermitian_eigen");
  detail::require_size_cap(a, "hermitian_eigen");
  detail::require_finite(a, "hermitian_eigen");
  const Real asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol) {
    throw InvalidInput("hermitian_eigen: matrix is not Hermitian (|A - A*|_max = " +
                       std::to_string(asym) + ")");
  }
  a = (a + a.adjoint()) / Real(2);
  const CMatrix<Real> reference = a;

  const Eigen::Index n = a.rows();
  CMatrix<Real> v = CMatrix<Real>::Identity(n, n);
  const Real threshold = Real(1e-13) * a.norm();

  auto off_norm = [&] {
    Real sum = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) sum += std::norm(a(i, j));
    return std::sqrt(sum);
  };

  int sweep = 0;
  bool converged = off_norm() <= threshold;
  while (!converged && sweep < kMaxSweeps) {
    ++sweep;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const Real r = std::abs(apq);
        if (r == Real(0)) continue;
        const Complex phase = apq / r;
        const Real app = a(p, p).real();
        const Real aqq = a(q, q).real();
        // Real Jacobi rotation on the phase-normalised 2x2 block.
        const Real theta = (aqq - app) / (Real(2) * r);
        const Real t = (theta >= 0 ? Real(1) : Real(-1)) /
                       (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
        const Real c = Real(1) / std::sqrt(t * t + Real(1));
        const Real s = t * c;
        // G = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const Complex g00 = c;
        const Complex g01 = s;
        const Complex g10 = -s * std::conj(phase);
        const Complex g11 = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex ap = a(k, p);
          const Complex aq = a(k, q);
          a(k, p) = ap * g00 + aq * g10;
          a(k, q) = ap * g01 + aq * g11;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex ap = a(p, k);
          const Complex aq = a(q, k);
          a(p, k) = std::conj(g00) * ap + std::conj(g10) * aq;
          a(q, k) = std::conj(g01) * ap + std::conj(g11) * aq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vp = v(k, p);
          const Complex vq = v(k, q);
          v(k, p) = vp * g00 + vq * g10;
          v(k, q) = vp * g01 + vq * g11;
        }
        a(p, q) = 0;
        a(q, p) = 0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
    converged = off_norm() <= threshold;
  }
  if (!converged) {
    throw ConvergenceError("hermitian_eigen: no convergence after 100 sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });

  HermitianEigenResult<Real> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src).real();
    out.eigenvectors.col(k) = v.col(src);
  }
  out.sweeps = sweep;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Real res =
        (reference * out.eigenvectors.col(k) - out.eigenvalues(k) * out.eigenvectors.col(k)).norm();
    out.residual = std::max(out.residual, res);
  }
  const Real allowed = std::max(tol, Real(1e-10)) * std::max(Real(1), reference.norm());
  if (out.residual > allowed) {
    throw ConvergenceError("hermitian_eigen: eigenpair residual " + std::to_string(out.residual) +
                           " exceeds tolerance");
  }
  return out;
}

/// Ascending eigenvalues of a Hermitian matrix.
template <typename Derived>
HermitianEigenResult<typename Derived::RealScalar> hermitian_eigenvalues(
    const Eigen::MatrixBase<Derived>& a, typename Derived::RealScalar tol = 1e-10) {
  return hermitian_eigen(a, tol);
}

/// Largest singular value, sqrt(lambda_max(A^* A)).
template <typename Derived>
typename Derived::RealScalar operator_norm(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  if (a.size() == 0) return Real(0);
  CMatrix<Real> gram = a.adjoint() * a;
  gram = (gram + gram.adjoint()) / Real(2);
  const auto eig = hermitian_eigen(gram, std::numeric_limits<Real>::infinity());
  return std::sqrt(std::max(Real(0), eig.eigenvalues(eig.eigenvalues.size() - 1)));
}

/// Complex Schur form: Householder reduction to Hessenberg form followed by
/// Wilkinson-shifted QR sweeps with deflation. The result is verified against
/// `tol` (unitarity of q and reconstruction relative to max(1, |a|_max)).
template <typename Derived>
SchurResult<typename Derived::RealScalar> schur_triangularize(
    const Eigen::MatrixBase<Derived>& input, typename Derived::RealScalar tol = 1e-10) {
  using Real = typename Derived::RealScalar;
  using Complex = std::complex<Real>;

  CMatrix<Real> h = input;
  detail::require_square(h, "schur_triangularize");
  detail::require_size_cap(h, "schur_triangularize");
  detail::require_finite(h, "schur_triangularize");
  const Eigen::Index n = h.rows();
  CMatrix<Real> q = CMatrix<Real>::Identity(n, n);

  // Hessenberg reduction, H <- P H P with P = I - 2 v v^*.
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index len = n - k - 1;
    CVector<Real> x = h.col(k).segment(k + 1, len);
    if (x.tail(len - 1).norm() == Real(0)) continue;
    const Real xnorm = x.norm();
    const Complex phase = x(0) == Complex(0) ? Complex(1) : x(0) / std::abs(x(0));
    x(0) += phase * xnorm;
    x /= x.norm();
    h.block(k + 1, 0, len, n) -= Real(2) * x * (x.adjoint() * h.block(k + 1, 0, len, n));
    h.block(0, k + 1, n, len) -= Real(2) * (h.block(0, k + 1, n, len) * x) * x.adjoint();
    q.block(0, k + 1, n, len) -= Real(2) * (q.block(0, k + 1, n, len) * x) * x.adjoint();
    for (Eigen::Index i = k + 2; i < n; ++i) h(i, k) = 0;
  }

  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real scale = std::max(h.cwiseAbs().maxCoeff(), std::numeric_limits<Real>::min());
  const int max_iter = 30 * static_cast<int>(std::max<Eigen::Index>(n, 1));
  Eigen::Index hi = n - 1;
  int iter = 0;
  int total_iter = 0;
  std::vector<Real> cs(static_cast<std::size_t>(n));
  std::vector<Complex> ss(static_cast<std::size_t>(n));

  while (hi > 0) {
    Eigen::Index lo = hi;
    while (lo > 0) {
      Real sum = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (sum == Real(0)) sum = scale;
      if (std::abs(h(lo, lo - 1)) <= eps * sum) break;
      --lo;
    }
    if (lo > 0) h(lo, lo - 1) = 0;
    if (lo == hi) {
      --hi;
      iter = 0;
      continue;
    }
    ++iter;
    if (++total_iter > max_iter * static_cast<int>(n)) {
      throw ConvergenceError("schur_triangularize: QR iteration did not converge");
    }

    Complex mu;
    if (iter % 10 == 0) {
      mu = h(hi, hi) + Real(1.5) * std::abs(h(hi, hi - 1));
    } else {
      const Complex a = h(hi - 1, hi - 1);
      const Complex b = h(hi - 1, hi);
      const Complex c = h(hi, hi - 1);
      const Complex d = h(hi, hi);
      const Complex half = (a - d) / Real(2);
      const Complex disc = std::sqrt(half * half + b * c);
      const Complex mid = (a + d) / Real(2);
      const Complex mu1 = mid + disc;
      const Complex mu2 = mid - disc;
      mu = std::abs(mu1 - d) <= std::abs(mu2 - d) ? mu1 : mu2;
    }

    for (Eigen::Index k = lo; k <= hi; ++k) h(k, k) -= mu;
    for (Eigen::Index k = lo; k < hi; ++k) {
      Real c;
      Complex s;
      detail::givens(h(k, k), h(k + 1, k), c, s);
      cs[static_cast<std::size_t>(k)] = c;
      ss[static_cast<std::size_t>(k)] = s;
      for (Eigen::Index j = k; j < n; ++j) {
        const Complex top = h(k, j);
        const Complex bot = h(k + 1, j);
        h(k, j) = c * top + s * bot;
        h(k + 1, j) = -std::conj(s) * top + c * bot;
      }
      h(k + 1, k) = 0;
    }
    for (Eigen::Index k = lo; k < hi; ++k) {
      const Real c = cs[static_cast<std::size_t>(k)];
      const Complex s = ss[static_cast<std::size_t>(k)];
      for (Eigen::Index i = 0; i <= k + 1; ++i) {
        const Complex left = h(i, k);
        const Complex right = h(i, k + 1);
        h(i, k) = c * left + std::conj(s) * right;
        h(i, k + 1) = -s * left + c * right;
      }
      for (Eigen::Index i = 0; i < n; ++i) {
        const Complex left = q(i, k);
        const Complex right = q(i, k + 1);
        q(i, k) = c * left + std::conj(s) * right;
        q(i, k + 1) = -s * left + c * right;
      }
    }
    for (Eigen::Index k = lo; k <= hi; ++k) h(k, k) += mu;
  }

  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j + 1; i < n; ++i) h(i, j) = 0;

  const Real unitary_err =
      (q.adjoint() * q - CMatrix<Real>::Identity(n, n)).cwiseAbs().maxCoeff();
  const CMatrix<Real> original = input;
  const Real recon_err = (q * h * q.adjoint() - original).cwiseAbs().maxCoeff();
  const Real amax = std::max(Real(1), original.cwiseAbs().maxCoeff());
  if (unitary_err > tol || recon_err > tol * amax) {
    throw ConvergenceError("schur_triangularize: result misses tolerance (unitarity " +
                           std::to_string(unitary_err) + ", reconstruction " +
                           std::to_string(recon_err) + ")");
  }
  return {std::move(q), std::move(h)};
}

/// Eigenvalues (diagonal of the Schur form), in Schur order.
template <typename Derived>
CVector<typename Derived::RealScalar> eigenvalues(const Eigen::MatrixBase<Derived>& a,
                                                  typename Derived::RealScalar tol = 1e-10) {
  return schur_triangularize(a, tol).r.diagonal();
}

}  // namespace symbidisc
