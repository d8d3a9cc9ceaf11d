#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "support.hpp"
#include "symbidisc/bidisc.hpp"
#include "symbidisc/sampling.hpp"

using namespace symbidisc;

namespace {

double gap(const GPoint& a, const GPoint& b) {
  return std::max(std::abs(a.s() - b.s()), std::abs(a.p() - b.p()));
}

// beta p + conj(beta) = s as a real 2x2 system in (Re beta, Im beta)
Complex flat_beta_by_real_system(Complex s, Complex p) {
  Eigen::Matrix2d m;
  m << p.real() + 1, -p.imag(), p.imag(), p.real() - 1;
  const Eigen::Vector2d x = m.fullPivLu().solve(Eigen::Vector2d(s.real(), s.imag()));
  return {x(0), x(1)};
}

// a + conj(a) c = r as a real 2x2 system in (Re a, Im a)
Complex conj_linear_by_real_system(Complex c, Complex r) {
  Eigen::Matrix2d m;
  m << 1 + c.real(), c.imag(), c.imag(), 1 - c.real();
  const Eigen::Vector2d x = m.fullPivLu().solve(Eigen::Vector2d(r.real(), r.imag()));
  return {x(0), x(1)};
}

}  // namespace

TEST(QuadraticRoots, KnownFactorisations) {
  // (x - 0.2)(x - 0.3) = x^2 - 0.5x + 0.06
  const auto [a, b] = quadratic_roots(Complex(0.5), Complex(0.06));
  EXPECT_NEAR(std::abs(a - 0.2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b - 0.3), 0.0, 1e-15);
  // x^2 + 1: roots -i, i, ordered by imaginary part
  const auto [c, d] = quadratic_roots(Complex(0), Complex(1));
  EXPECT_NEAR(std::abs(c - Complex(0, -1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d - Complex(0, 1)), 0.0, 1e-15);
  // p = 0 keeps an exact zero root
  const auto [e, f] = quadratic_roots(Complex(0.4, 0.1), Complex(0));
  EXPECT_EQ(e, Complex(0));
  EXPECT_NEAR(std::abs(f - Complex(0.4, 0.1)), 0.0, 1e-16);
}

TEST(QuadraticRoots, StableForTinyProduct) {
  // x^2 - x + 1e-20: roots 1e-20 (to relative precision) and ~1
  const auto [small, big] = quadratic_roots(Complex(1.0), Complex(1e-20));
  EXPECT_NEAR(small.real() / 1e-20, 1.0, 1e-12);
  EXPECT_NEAR(big.real(), 1.0, 1e-15);
}

TEST(Membership, SpecExamples) {
  EXPECT_TRUE(contains(Complex(0), Complex(0)));
  EXPECT_FALSE(contains(Complex(2), Complex(1)));  // double root 1
  EXPECT_TRUE(contains(Complex(1.8), Complex(0.81)));
  EXPECT_FALSE(contains(Complex(0), Complex(1)));  // roots +-i
  EXPECT_FALSE(contains(Complex(std::nan("")), Complex(0)));
  try {
    GPoint bad(Complex(0), Complex(-1.21));  // roots +-1.1
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    ASSERT_TRUE(e.modulus().has_value());
    EXPECT_NEAR(*e.modulus(), 1.1, 1e-14);
  }
}

TEST(Membership, SymmetrisationOfDiscPairs) {
  Sampler rng(31);
  for (int i = 0; i < 1000; ++i) {
    const DiscPoint z = rng.disc_point(0.999), w = rng.disc_point(0.999);
    const GPoint g = sym(z, w);
    EXPECT_TRUE(contains(g.s(), g.p()));
    const auto [r1, r2] = unsym(g);
    const double direct = std::min(std::abs(r1 - z.value()) + std::abs(r2 - w.value()),
                                   std::abs(r1 - w.value()) + std::abs(r2 - z.value()));
    EXPECT_LT(direct, 1e-7);  // roots of a near-double root are only sqrt(eps) accurate
  }
}

TEST(Phi, ClosedForms) {
  const CirclePoint one;
  // Phi_1(0, 0) = 0; Phi_w(s, 0) = -s / (2 - w s)
  EXPECT_EQ(phi(one, GPoint(0.0, 0.0)), Complex(0));
  const Complex s(0.9, 0);
  EXPECT_NEAR(std::abs(phi(one, GPoint(s, 0.0)) - (-0.9 / 1.1)), 0.0, 1e-15);
  // directly from the roots z, w: (2 w zw - z - w) / (2 - w (z + w))
  Sampler rng(32);
  for (int i = 0; i < 100; ++i) {
    const DiscPoint z = rng.disc_point(), w = rng.disc_point();
    const CirclePoint omega = rng.circle_point();
    const Complex o = omega.value(), a = z.value(), b = w.value();
    const Complex expected = (2.0 * o * a * b - a - b) / (2.0 - o * (a + b));
    EXPECT_NEAR(std::abs(phi(omega, sym(z, w)) - expected), 0.0, 1e-14);
    EXPECT_LT(std::abs(expected), 1.0);
  }
}

TEST(Phi, RoyalCollapse) {
  Sampler rng(33);
  for (int i = 0; i < 1000; ++i) {
    const CirclePoint omega = rng.circle_point();
    const DiscPoint lambda = rng.disc_point(0.999);
    EXPECT_LT(std::abs(phi(omega, royal(lambda)) + lambda.value()), 1e-12);
  }
}

TEST(Phi, MatrixCalculusAgreesOnDiagonalAndTriangular) {
  Sampler rng(34);
  const CirclePoint omega = rng.circle_point();
  ComplexMatrix s = ComplexMatrix::Zero(3, 3), p = ComplexMatrix::Zero(3, 3);
  std::vector<GPoint> pts;
  for (int k = 0; k < 3; ++k) {
    pts.push_back(rng.gpoint());
    s(k, k) = pts.back().s();
    p(k, k) = pts.back().p();
  }
  const ComplexMatrix out = phi_matrix(omega, s, p);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(std::abs(out(k, k) - phi(omega, pts[k])), 0.0, 1e-14);
  EXPECT_LT(testing_support::max_abs(out - ComplexMatrix(out.diagonal().asDiagonal())), 1e-15);

  const auto [t1, t2] = rng.commuting_contraction_pair(4);
  const ComplexMatrix ss = t1 + t2, pp = t1 * t2;
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  const ComplexMatrix expected = (2.0 * omega.value() * pp - ss) * (2.0 * id - omega.value() * ss).inverse();
  EXPECT_LT(testing_support::max_abs(phi_matrix(omega, ss, pp) - expected), 1e-12);
}

TEST(FlatGeodesics, ThroughPointAgreesWithRealSystem) {
  Sampler rng(35);
  for (int i = 0; i < 1000; ++i) {
    const GPoint g = rng.gpoint();
    const FlatParameters fp = flat_through(g);
    EXPECT_LT(std::abs(fp.beta.value()), 1.0);
    EXPECT_NEAR(std::abs(fp.beta.value() - flat_beta_by_real_system(g.s(), g.p())), 0.0, 1e-12);
    EXPECT_LT(gap(flat_point(fp.beta, fp.lambda), g), 1e-12);
  }
}

TEST(FlatGeodesics, ConjLinearSolver) {
  Sampler rng(36);
  for (int i = 0; i < 100; ++i) {
    const Complex c = rng.disc_point().value(), r = rng.normal_complex();
    const Complex a = solve_conj_linear(c, r);
    EXPECT_NEAR(std::abs(a + std::conj(a) * c - r), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(a - conj_linear_by_real_system(c, r)), 0.0, 1e-12);
  }
}

TEST(FlatGeodesics, MeetRoyalVarietyOnce) {
  Sampler rng(37);
  for (int i = 0; i < 1000; ++i) {
    const DiscPoint beta = rng.disc_point(0.999);
    const Complex b = beta.value();
    const Complex l = flat_royal_meet(beta).value();
    EXPECT_LT(std::abs(l), 1.0);
    // the point (2 l, l^2) lies on F_beta with parameter l^2
    EXPECT_LT(gap(royal(DiscPoint(l)), flat_point(beta, DiscPoint(l * l))), 1e-12);
    // the other root of beta x^2 - 2x + conj(beta) lies outside the closed disc
    if (std::abs(b) > 1e-8) {
      const Complex other = std::conj(b) / (b * l);
      EXPECT_GT(std::abs(other), 1.0);
    }
  }
  EXPECT_EQ(flat_royal_meet(DiscPoint()).value(), Complex(0));
}

TEST(FlatGeodesics, MagicFunctionRestrictsToBlaschkeFactor) {
  Sampler rng(38);
  for (int i = 0; i < 1000; ++i) {
    const CirclePoint omega = rng.circle_point();
    const DiscPoint beta = rng.disc_point(), z = rng.disc_point();
    const FlatMagicParams fm = phi_on_flat_params(omega, beta);
    EXPECT_LT(std::abs(fm.alpha.value()), 1.0);
    EXPECT_LT(std::abs(phi(omega, flat_point(beta, z)) - fm.tau.value() * blaschke(fm.alpha, z)),
              1e-12);
  }
}

TEST(Automorphisms, IdentityRotationAndRoyal) {
  const GPoint g(Complex(0.5, 0.1), Complex(0.2, -0.1));
  EXPECT_EQ(gap(GAutomorphism()(g), g) < 1e-15, true);
  const CirclePoint w(Complex(0.6, 0.8));
  const GPoint r = GAutomorphism(Moebius::rotation(w))(g);
  EXPECT_LT(std::abs(r.s() - w.value() * g.s()), 1e-15);
  EXPECT_LT(std::abs(r.p() - w.value() * w.value() * g.p()), 1e-15);

  Sampler rng(39);
  for (int i = 0; i < 200; ++i) {
    const GAutomorphism a(rng.moebius());
    const GPoint image = a(royal(rng.disc_point()));
    EXPECT_LT(royal_defect(image), 1e-12);
  }
}

TEST(Automorphisms, GroupLawsAndMembership) {
  Sampler rng(40);
  for (int i = 0; i < 1000; ++i) {
    const GAutomorphism a(rng.moebius()), b(rng.moebius());
    const GPoint g = rng.gpoint();
    EXPECT_LT(gap(tau_apply(a.compose(b), g), tau_apply(a, tau_apply(b, g))), 1e-11);
    EXPECT_LT(gap(a.inverse()(a(g)), g), 1e-11);
    const GPoint image = a(g);
    EXPECT_TRUE(contains(image.s(), image.p()));
  }
}

TEST(Automorphisms, RotationLaw) {
  Sampler rng(41);
  for (int i = 0; i < 1000; ++i) {
    const CirclePoint omega = rng.circle_point(), eta = rng.circle_point();
    const GPoint g = rng.gpoint();
    const Complex lhs = phi(omega, GAutomorphism(Moebius::rotation(eta))(g));
    EXPECT_LT(std::abs(lhs - eta.value() * phi(eta * omega, g)), 1e-11);
  }
}

TEST(Automorphisms, MapFlatGeodesicsToFlatGeodesics) {
  Sampler rng(42);
  for (int i = 0; i < 100; ++i) {
    const GAutomorphism a(rng.moebius());
    const DiscPoint beta = rng.disc_point();
    const Complex image_beta = flat_through(a(flat_point(beta, rng.disc_point()))).beta.value();
    for (int k = 0; k < 5; ++k) {
      const Complex other = flat_through(a(flat_point(beta, rng.disc_point()))).beta.value();
      EXPECT_LT(std::abs(other - image_beta), 1e-10);
    }
  }
}

TEST(Involution, FixesSymmetrisedPoint) {
  Sampler rng(43);
  for (int i = 0; i < 1000; ++i) {
    const DiscPoint z = rng.disc_point(), w = rng.disc_point();
    const Moebius m = involution_fixing(z, w);
    const Complex a = conj_linear_by_real_system(z.value() * w.value(), z.value() + w.value());
    EXPECT_NEAR(std::abs(m.center().value() - a), 0.0, 1e-10);
    EXPECT_LT(std::abs(m.apply(z.value()) - w.value()), 1e-11);
    EXPECT_LT(std::abs(m.apply(w.value()) - z.value()), 1e-11);
    const GPoint g = sym(z, w);
    EXPECT_LT(gap(GAutomorphism(m)(g), g), 1e-11);
  }
}

TEST(Templates, LongDoubleBidisc) {
  using LD = long double;
  const BasicDiscPoint<LD> lambda(std::complex<LD>(0.3L, -0.2L));
  const BasicCirclePoint<LD> omega(std::complex<LD>(0.0L, 1.0L));
  EXPECT_LT(std::abs(phi(omega, royal(lambda)) + lambda.value()), 1e-17L);
}
