#include <gtest/gtest.h>

#include <cmath>

#include "symbidisc/disc.hpp"
#include "symbidisc/sampling.hpp"

using namespace symbidisc;

TEST(DiscPoint, OpenMembership) {
  EXPECT_NO_THROW(DiscPoint(Complex(0.999, 0)));
  EXPECT_NO_THROW(DiscPoint(Complex(0, 1 - 1e-12)));
  EXPECT_FALSE(DiscPoint::admits(Complex(1, 0)));
  EXPECT_FALSE(DiscPoint::admits(Complex(1 - 1e-15, 0)));
  EXPECT_FALSE(DiscPoint::admits(Complex(std::nan(""), 0)));
  try {
    DiscPoint bad(Complex(0.6, 0.8000001));
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    ASSERT_TRUE(e.modulus().has_value());
    EXPECT_NEAR(*e.modulus(), std::hypot(0.6, 0.8000001), 1e-15);
  }
}

TEST(CirclePoint, ProjectsRadially) {
  const CirclePoint w(Complex(3, 4));
  EXPECT_NEAR(w.value().real(), 0.6, 1e-15);
  EXPECT_NEAR(w.value().imag(), 0.8, 1e-15);
  EXPECT_NEAR(CirclePoint::from_angle(M_PI / 2).value().imag(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs((w * w.conj()).value() - 1.0), 0.0, 1e-15);
  EXPECT_THROW(CirclePoint(Complex(0, 0)), DomainError);
}

TEST(Pseudohyperbolic, ClosedForms) {
  EXPECT_NEAR(rho(DiscPoint(), DiscPoint(Complex(0.5, 0))), 0.5, 1e-15);
  // |0.5 - (-0.5)| / |1 + 0.25|
  EXPECT_NEAR(rho(DiscPoint(Complex(0.5, 0)), DiscPoint(Complex(-0.5, 0))), 0.8, 1e-15);
  // rho(0, z) = |z| for every z
  const DiscPoint z(Complex(-0.3, 0.7));
  EXPECT_NEAR(rho(DiscPoint(), z), std::abs(z.value()), 1e-15);
  EXPECT_EQ(rho(z, z), 0.0);
}

TEST(Pseudohyperbolic, MetricPropertiesSweep) {
  Sampler rng(21);
  for (int i = 0; i < 1000; ++i) {
    const DiscPoint x = rng.disc_point(), y = rng.disc_point(), z = rng.disc_point();
    const double a = rho(x, y), b = rho(y, z);
    EXPECT_NEAR(rho(x, y), rho(y, x), 1e-15);
    EXPECT_LE(rho(x, z), (a + b) / (1 + a * b) + 1e-12);
    EXPECT_LT(a, 1.0);
  }
}

TEST(Blaschke, ZeroAndBoundary) {
  const Complex alpha(0.4, -0.2);
  EXPECT_EQ(blaschke(alpha, alpha), Complex(0));
  for (int k = 0; k < 16; ++k) {
    const Complex z = std::polar(1.0, 2 * M_PI * k / 16);
    EXPECT_NEAR(std::abs(blaschke(alpha, z)), 1.0, 1e-14);
  }
}

TEST(Moebius, NormalFormEvaluation) {
  const Moebius m(CirclePoint(Complex(0, 1)), DiscPoint(Complex(0.5, 0)));
  // i (0 - 0.5) / (1 - 0) = -0.5i
  EXPECT_NEAR(std::abs(m.apply(0.0) - Complex(0, -0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.apply(0.5)), 0.0, 1e-15);
  EXPECT_EQ(Moebius::identity().apply(Complex(0.3, 0.1)), Complex(0.3, 0.1));
  EXPECT_NEAR(std::abs(Moebius::rotation(CirclePoint(Complex(-1, 0))).apply(0.25) + 0.25), 0.0, 1e-16);
}

TEST(Moebius, InverseAndComposition) {
  Sampler rng(22);
  for (int i = 0; i < 500; ++i) {
    const Moebius a = rng.moebius(), b = rng.moebius(), c = rng.moebius();
    const Complex z = rng.disc_point().value();
    EXPECT_NEAR(std::abs(a.inverse().apply(a.apply(z)) - z), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(a.compose(a.inverse()).apply(z) - z), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(compose(a, b).apply(z) - a.apply(b.apply(z))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(a.compose(b).compose(c).apply(z) - a.compose(b.compose(c)).apply(z)), 0.0,
                1e-12);
  }
}

TEST(Moebius, CompositionIsInNormalForm) {
  // rotation after translation: z -> i (z - a)/(1 - conj(a) z) keeps centre a
  const DiscPoint a(Complex(0.2, 0.3));
  const Moebius shift(CirclePoint(), a);
  const Moebius m = Moebius::rotation(CirclePoint(Complex(0, 1))).compose(shift);
  EXPECT_NEAR(std::abs(m.center().value() - a.value()), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.rotation().value() - Complex(0, 1)), 0.0, 1e-15);
}

TEST(Moebius, PreservesPseudohyperbolicDistance) {
  Sampler rng(23);
  for (int i = 0; i < 1000; ++i) {
    const Moebius m = rng.moebius();
    EXPECT_LT(moebius_invariance_check(m, rng.disc_point(), rng.disc_point()), 1e-12);
  }
}

TEST(Moebius, LongDoubleInstantiation) {
  const BasicMoebius<long double> m(BasicCirclePoint<long double>(std::complex<long double>(0, 1)),
                                    BasicDiscPoint<long double>(std::complex<long double>(0.5L, 0)));
  EXPECT_LT(std::abs(m.inverse().apply(m.apply(std::complex<long double>(0.1L, 0.2L))) -
                     std::complex<long double>(0.1L, 0.2L)),
            1e-17L);
}
