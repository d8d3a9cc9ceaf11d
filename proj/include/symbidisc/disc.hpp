#pragma once

// The unit disc D, the unit circle T, the pseudohyperbolic distance and the
// Moebius group Aut D.

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "symbidisc/errors.hpp"

namespace symbidisc {

/// Open-set membership margin shared by D and G.
inline constexpr double kOpenMargin = 1e-14;

template <typename Real>
class BasicDiscPoint {
 public:
  using Complex = std::complex<Real>;

  BasicDiscPoint() = default;

  /// Throws DomainError unless |z| < 1 - 1e-14.
  explicit BasicDiscPoint(Complex z) : value_(z) {
    if (!admits(z)) {
      throw DomainError("point " + describe(z) + " is not in the open unit disc",
                        static_cast<double>(std::abs(z)));
    }
  }

  static bool admits(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag()) &&
           std::abs(z) < Real(1) - Real(kOpenMargin);
  }

  Complex value() const { return value_; }

 private:
  static std::string describe(Complex z) {
    return "(" + std::to_string(static_cast<double>(z.real())) + ", " +
           std::to_string(static_cast<double>(z.imag())) + ")";
  }

  Complex value_{0};
};

template <typename Real>
class BasicCirclePoint {
 public:
  using Complex = std::complex<Real>;

  BasicCirclePoint() = default;

  /// Radially projects a non-zero finite complex number onto T.
  explicit BasicCirclePoint(Complex z) {
    const Real r = std::abs(z);
    if (!(r > Real(0)) || !std::isfinite(r)) {
      throw DomainError("cannot project zero or non-finite value onto the unit circle");
    }
    value_ = z / r;
  }

  static BasicCirclePoint from_angle(Real theta) {
    return BasicCirclePoint(std::polar(Real(1), theta));
  }

  Complex value() const { return value_; }
  Real arg() const { return std::arg(value_); }
  BasicCirclePoint conj() const { return BasicCirclePoint(std::conj(value_)); }

  friend BasicCirclePoint operator*(BasicCirclePoint a, BasicCirclePoint b) {
    return BasicCirclePoint(a.value_ * b.value_);
  }

 private:
  Complex value_{1};
};

/// Pseudohyperbolic distance |z - w| / |1 - conj(w) z| on raw complex values.
template <typename Real>
Real pseudohyperbolic(std::complex<Real> z, std::complex<Real> w) {
  return std::abs(z - w) / std::abs(Real(1) - std::conj(w) * z);
}

template <typename Real>
Real rho(BasicDiscPoint<Real> z, BasicDiscPoint<Real> w) {
  return pseudohyperbolic(z.value(), w.value());
}

/// Blaschke factor (z - alpha) / (1 - conj(alpha) z).
template <typename Real>
std::complex<Real> blaschke(std::complex<Real> alpha, std::complex<Real> z) {
  return (z - alpha) / (Real(1) - std::conj(alpha) * z);
}

template <typename Real>
std::complex<Real> blaschke(BasicDiscPoint<Real> alpha, BasicDiscPoint<Real> z) {
  return blaschke(alpha.value(), z.value());
}

/// z -> rotation * (z - center) / (1 - conj(center) z), stored in this
/// normal form so that equal maps have equal representations.
template <typename Real>
class BasicMoebius {
 public:
  using Complex = std::complex<Real>;
  using Disc = BasicDiscPoint<Real>;
  using Circle = BasicCirclePoint<Real>;

  BasicMoebius() = default;
  BasicMoebius(Circle rotation, Disc center) : rotation_(rotation), center_(center) {}

  static BasicMoebius identity() { return {}; }
  static BasicMoebius rotation(Circle omega) { return BasicMoebius(omega, Disc()); }

  Circle rotation() const { return rotation_; }
  Disc center() const { return center_; }

  /// Evaluates on any complex value off the pole (no membership check).
  Complex apply(Complex z) const {
    const Complex a = center_.value();
    return rotation_.value() * (z - a) / (Real(1) - std::conj(a) * z);
  }

  Complex operator()(Complex z) const { return apply(z); }
  Disc operator()(Disc z) const { return Disc(apply(z.value())); }

  /// Inverse map: (conj(omega), -omega a).
  BasicMoebius inverse() const {
    return BasicMoebius(rotation_.conj(), Disc(-rotation_.value() * center_.value()));
  }

  /// this o other, via the 2x2 matrix representation [[w, -w a], [-conj(a), 1]].
  BasicMoebius compose(const BasicMoebius& other) const {
    const auto m1 = matrix();
    const auto m2 = other.matrix();
    const Complex A = m1[0] * m2[0] + m1[1] * m2[2];
    const Complex B = m1[0] * m2[1] + m1[1] * m2[3];
    const Complex D = m1[2] * m2[1] + m1[3] * m2[3];
    return BasicMoebius(Circle(A / D), Disc(-B / A));
  }

 private:
  std::array<Complex, 4> matrix() const {
    const Complex w = rotation_.value();
    const Complex a = center_.value();
    return {w, -w * a, -std::conj(a), Complex(1)};
  }

  Circle rotation_{};
  Disc center_{};
};

template <typename Real>
BasicMoebius<Real> compose(const BasicMoebius<Real>& outer, const BasicMoebius<Real>& inner) {
  return outer.compose(inner);
}

/// |rho(m(z), m(w)) - rho(z, w)|.
template <typename Real>
Real moebius_invariance_check(const BasicMoebius<Real>& m, BasicDiscPoint<Real> z,
                              BasicDiscPoint<Real> w) {
  return std::abs(pseudohyperbolic(m.apply(z.value()), m.apply(w.value())) - rho(z, w));
}

using DiscPoint = BasicDiscPoint<double>;
using CirclePoint = BasicCirclePoint<double>;
using Moebius = BasicMoebius<double>;
using Complex = std::complex<double>;

}  // namespace symbidisc
