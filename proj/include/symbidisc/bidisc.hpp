#pragma once

// The symmetrised bidisc G = {(z + w, zw) : z, w in D}: membership,
// symmetrisation coordinates, the magic functions Phi_omega, royal and flat
// geodesics and the automorphisms tau(m).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>

#include "symbidisc/disc.hpp"
#include "symbidisc/errors.hpp"

namespace symbidisc {

/// Roots of x^2 - s x + p, larger-magnitude root first from the quadratic
/// formula, the other as p / root. Returned sorted by (Re, Im).
template <typename Real>
std::pair<std::complex<Real>, std::complex<Real>> quadratic_roots(std::complex<Real> s,
                                                                  std::complex<Real> p) {
  using Complex = std::complex<Real>;
  const Complex disc = std::sqrt(s * s - Real(4) * p);
  const Complex plus = s + disc;
  const Complex minus = s - disc;
  const Complex big = (std::abs(plus) >= std::abs(minus) ? plus : minus) / Real(2);
  const Complex small = big == Complex(0) ? Complex(0) : p / big;
  auto less = [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  };
  return less(small, big) ? std::pair{small, big} : std::pair{big, small};
}

/// (s, p) in G iff both roots of x^2 - s x + p have modulus < 1 - 1e-14.
template <typename Real>
bool contains(std::complex<Real> s, std::complex<Real> p) {
  if (!std::isfinite(std::abs(s)) || !std::isfinite(std::abs(p))) return false;
  const auto [r1, r2] = quadratic_roots(s, p);
  const Real bound = Real(1) - Real(kOpenMargin);
  return std::abs(r1) < bound && std::abs(r2) < bound;
}

template <typename Real>
class BasicGPoint {
 public:
  using Complex = std::complex<Real>;

  BasicGPoint() = default;

  /// Throws DomainError (carrying the larger root modulus) unless (s, p) in G.
  BasicGPoint(Complex s, Complex p) : s_(s), p_(p) {
    if (!contains(s, p)) {
      Real worst = std::numeric_limits<Real>::infinity();
      if (std::isfinite(std::abs(s)) && std::isfinite(std::abs(p))) {
        const auto [r1, r2] = quadratic_roots(s, p);
        worst = std::max(std::abs(r1), std::abs(r2));
      }
      throw DomainError("point is not in G: root of x^2 - s x + p has modulus " +
                            std::to_string(static_cast<double>(worst)),
                        static_cast<double>(worst));
    }
  }

  /// Skips the membership check; for values certified by construction.
  static BasicGPoint trusted(Complex s, Complex p) {
    BasicGPoint g;
    g.s_ = s;
    g.p_ = p;
    return g;
  }

  Complex s() const { return s_; }
  Complex p() const { return p_; }
  std::pair<Complex, Complex> roots() const { return quadratic_roots(s_, p_); }

  friend bool operator==(const BasicGPoint& a, const BasicGPoint& b) {
    return a.s_ == b.s_ && a.p_ == b.p_;
  }

 private:
  Complex s_{0};
  Complex p_{0};
};

template <typename Real>
BasicGPoint<Real> sym(BasicDiscPoint<Real> z, BasicDiscPoint<Real> w) {
  return BasicGPoint<Real>::trusted(z.value() + w.value(), z.value() * w.value());
}

template <typename Real>
std::pair<std::complex<Real>, std::complex<Real>> unsym(const BasicGPoint<Real>& g) {
  return g.roots();
}

/// Phi_omega(s, p) = (2 omega p - s) / (2 - omega s). On G the denominator is
/// at least 2 - |s| > 0.
template <typename Real>
std::complex<Real> phi(BasicCirclePoint<Real> omega, const BasicGPoint<Real>& g) {
  const std::complex<Real> w = omega.value();
  return (Real(2) * w * g.p() - g.s()) / (Real(2) - w * g.s());
}

/// Phi_omega applied to a commuting pair (S, P) by the functional calculus:
/// (2 omega P - S)(2 - omega S)^{-1}.
template <typename DerivedS, typename DerivedP>
auto phi_matrix(BasicCirclePoint<typename DerivedS::RealScalar> omega,
                const Eigen::MatrixBase<DerivedS>& s, const Eigen::MatrixBase<DerivedP>& p) {
  using Real = typename DerivedS::RealScalar;
  using Mat = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
  const std::complex<Real> w = omega.value();
  const Eigen::Index n = s.rows();
  const Mat numerator = Real(2) * w * p - s;
  const Mat denominator = Real(2) * Mat::Identity(n, n) - w * s;
  // numerator * denominator^{-1} == (denominator^T \ numerator^T)^T
  Mat out = denominator.transpose().partialPivLu().solve(numerator.transpose()).transpose();
  return out;
}

/// Royal variety parametrisation lambda -> (2 lambda, lambda^2).
template <typename Real>
BasicGPoint<Real> royal(BasicDiscPoint<Real> lambda) {
  const auto l = lambda.value();
  return BasicGPoint<Real>::trusted(Real(2) * l, l * l);
}

/// Flat geodesic phi_beta(lambda) = (beta lambda + conj(beta), lambda).
template <typename Real>
BasicGPoint<Real> flat_point(BasicDiscPoint<Real> beta, BasicDiscPoint<Real> lambda) {
  const auto b = beta.value();
  const auto l = lambda.value();
  return BasicGPoint<Real>::trusted(b * l + std::conj(b), l);
}

template <typename Real>
struct BasicFlatGeodesic {
  BasicDiscPoint<Real> beta;
  BasicGPoint<Real> operator()(BasicDiscPoint<Real> lambda) const {
    return flat_point(beta, lambda);
  }
};

/// Solves a + conj(a) c = r for a, |c| < 1: a = (r - c conj(r)) / (1 - |c|^2).
template <typename Real>
std::complex<Real> solve_conj_linear(std::complex<Real> c, std::complex<Real> r) {
  return (r - c * std::conj(r)) / (Real(1) - std::norm(c));
}

template <typename Real>
struct BasicFlatParameters {
  BasicDiscPoint<Real> beta;
  BasicDiscPoint<Real> lambda;
};

/// The unique flat geodesic through g: lambda = p and beta p + conj(beta) = s.
template <typename Real>
BasicFlatParameters<Real> flat_through(const BasicGPoint<Real>& g) {
  const auto beta = std::conj(solve_conj_linear(g.p(), g.s()));
  return {BasicDiscPoint<Real>(beta), BasicDiscPoint<Real>(g.p())};
}

/// The royal parameter where F_beta meets the royal variety: the root in D of
/// beta x^2 - 2 x + conj(beta) = 0, i.e. conj(beta) / (1 + sqrt(1 - |beta|^2)).
template <typename Real>
BasicDiscPoint<Real> flat_royal_meet(BasicDiscPoint<Real> beta) {
  const auto b = beta.value();
  return BasicDiscPoint<Real>(std::conj(b) / (Real(1) + std::sqrt(Real(1) - std::norm(b))));
}

template <typename Real>
struct BasicFlatMagicParams {
  BasicCirclePoint<Real> tau;
  BasicDiscPoint<Real> alpha;
};

/// (tau, alpha) with Phi_omega(phi_beta(z)) = tau * B_alpha(z) on D.
template <typename Real>
BasicFlatMagicParams<Real> phi_on_flat_params(BasicCirclePoint<Real> omega,
                                              BasicDiscPoint<Real> beta) {
  const auto w = omega.value();
  const auto b = beta.value();
  const auto alpha = std::conj(b) / (Real(2) * w - b);
  const auto tau = (Real(2) * w - b) / (Real(2) - w * std::conj(b));
  return {BasicCirclePoint<Real>(tau), BasicDiscPoint<Real>(alpha)};
}

/// tau(m)(z1 + z2, z1 z2) = (m(z1) + m(z2), m(z1) m(z2)).
template <typename Real>
class BasicGAutomorphism {
 public:
  BasicGAutomorphism() = default;
  explicit BasicGAutomorphism(BasicMoebius<Real> generator) : generator_(generator) {}

  const BasicMoebius<Real>& generator() const { return generator_; }

  BasicGPoint<Real> operator()(const BasicGPoint<Real>& g) const {
    const auto [z1, z2] = g.roots();
    const auto m1 = generator_.apply(z1);
    const auto m2 = generator_.apply(z2);
    return BasicGPoint<Real>::trusted(m1 + m2, m1 * m2);
  }

  BasicGAutomorphism compose(const BasicGAutomorphism& inner) const {
    return BasicGAutomorphism(generator_.compose(inner.generator_));
  }

  BasicGAutomorphism inverse() const { return BasicGAutomorphism(generator_.inverse()); }

 private:
  BasicMoebius<Real> generator_{};
};

template <typename Real>
BasicGPoint<Real> tau_apply(const BasicGAutomorphism<Real>& a, const BasicGPoint<Real>& g) {
  return a(g);
}

/// The involution lambda -> (a - lambda) / (1 - conj(a) lambda) swapping z and
/// w; a solves a + conj(a) zw = z + w. tau(m) fixes sym(z, w).
template <typename Real>
BasicMoebius<Real> involution_fixing(BasicDiscPoint<Real> z, BasicDiscPoint<Real> w) {
  const auto a = solve_conj_linear(z.value() * w.value(), z.value() + w.value());
  return BasicMoebius<Real>(BasicCirclePoint<Real>(std::complex<Real>(-1)),
                            BasicDiscPoint<Real>(a));
}

/// |s^2 - 4p|, zero exactly on the royal variety.
template <typename Real>
Real royal_defect(const BasicGPoint<Real>& g) {
  return std::abs(g.s() * g.s() - Real(4) * g.p());
}

using GPoint = BasicGPoint<double>;
using GAutomorphism = BasicGAutomorphism<double>;
using FlatGeodesic = BasicFlatGeodesic<double>;
using FlatParameters = BasicFlatParameters<double>;
using FlatMagicParams = BasicFlatMagicParams<double>;

}  // namespace symbidisc
