#include <gtest/gtest.h>

#include <array>

#include "symbidisc/kernels.hpp"
#include "symbidisc/sampling.hpp"

using namespace symbidisc;

namespace {

std::vector<KernelPoint> disc_points(Sampler& rng, int n) {
  std::vector<KernelPoint> pts;
  for (int k = 0; k < n; ++k) pts.push_back(as_kernel_point(rng.disc_point().value()));
  return pts;
}

Complex szego(const KernelPoint& z, const KernelPoint& w) { return 1.0 / (1.0 - std::conj(w(0)) * z(0)); }

}  // namespace

TEST(Gram, AssemblesAndRejectsAsymmetry) {
  Sampler rng(81);
  const auto pts = disc_points(rng, 5);
  const GramMatrix g = gram(szego, pts);
  ASSERT_EQ(g.entries.rows(), 5);
  EXPECT_NEAR(std::abs(g.entries(1, 3) - szego(pts[1], pts[3])), 0.0, 1e-15);
  auto skew = [](const KernelPoint& z, const KernelPoint& w) { return z(0) * w(0); };
  EXPECT_THROW(gram(skew, disc_points(rng, 3)), InvalidInput);
  EXPECT_TRUE(is_psd(gram(szego, {}), 0).psd);
}

TEST(Psd, SzegoKernelIsPositive) {
  Sampler rng(82);
  for (int i = 0; i < 50; ++i) {
    const PsdVerdict v = is_psd(gram(szego, disc_points(rng, 8)), 1e-10);
    EXPECT_TRUE(v.psd) << v.min_eig;
    EXPECT_GE(v.max_eig, v.min_eig);
  }
}

TEST(Psd, DetectsIndefiniteMatrix) {
  ComplexMatrix m(2, 2);
  m << 1, 2, 2, 1;  // eigenvalues -1, 3
  const GramMatrix g = gram_from_matrix(m);
  const PsdVerdict v = is_psd(g, 1e-10);
  EXPECT_FALSE(v.psd);
  EXPECT_NEAR(v.min_eig, -1.0, 1e-13);
  EXPECT_NEAR(v.max_eig, 3.0, 1e-13);
  EXPECT_THROW(numeric_rank(g), InvalidInput);
  EXPECT_THROW(gram_from_matrix(ComplexMatrix(2, 3)), DimensionError);
}

TEST(Rank, KnownRanks) {
  ComplexMatrix ones = ComplexMatrix::Ones(3, 3);
  EXPECT_EQ(numeric_rank(gram_from_matrix(ones)), 1);
  EXPECT_EQ(numeric_rank(gram_from_matrix(ComplexMatrix::Identity(4, 4))), 4);
  EXPECT_EQ(numeric_rank(gram_from_matrix(ComplexMatrix::Zero(3, 3))), 0);
  Sampler rng(83);
  const ComplexMatrix f = rng.matrix(6, 2);
  EXPECT_EQ(numeric_rank(gram_from_matrix(f * f.adjoint())), 2);
}

TEST(Rank, AnalyticRankOne) {
  Sampler rng(84);
  for (int i = 0; i < 50; ++i) {
    const Polynomial f = rng.polynomial(1, 3);
    auto k = [&](const KernelPoint& l, const KernelPoint& m) {
      const std::array<Complex, 1> xl{l(0)}, xm{m(0)};
      return std::conj(f(xm)) * f(xl);
    };
    EXPECT_EQ(numeric_rank(gram(k, disc_points(rng, 8))), 1);
  }
}

TEST(Factor, ReconstructsGram) {
  Sampler rng(85);
  for (int i = 0; i < 50; ++i) {
    const GramMatrix g = gram(szego, disc_points(rng, rng.integer(1, 10)));
    const auto rows = gram_factor(g);
    EXPECT_LT(factor_residual(g, rows), 1e-10);
  }
  // low rank: the factor stops early
  const ComplexMatrix f = rng.matrix(5, 2);
  const GramMatrix g = gram_from_matrix(f * f.adjoint());
  const auto rows = gram_factor(g);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_LE(rows.front().size(), 3);
  EXPECT_LT(factor_residual(g, rows), 1e-10);
  ComplexMatrix bad(2, 2);
  bad << 1, 2, 2, 1;
  EXPECT_THROW(gram_factor(gram_from_matrix(bad)), InvalidInput);
}

TEST(Kernels, FlatKernelIsPositive) {
  // (1 - conj B(w) B(z)) / (1 - conj w z) for a Blaschke factor B
  Sampler rng(86);
  for (int i = 0; i < 100; ++i) {
    const Complex alpha = rng.disc_point().value();
    auto k = [&](const KernelPoint& z, const KernelPoint& w) {
      return (1.0 - std::conj(blaschke(alpha, w(0))) * blaschke(alpha, z(0))) /
             (1.0 - std::conj(w(0)) * z(0));
    };
    EXPECT_GE(is_psd(gram(k, disc_points(rng, 8)), 1e-10).min_eig, -1e-10);
  }
}

TEST(Kernels, ExtremalQuotientIsRankOne) {
  Sampler rng(87);
  for (int i = 0; i < 100; ++i) {
    const Polynomial f = rng.polynomial(2, 2);
    std::vector<GPoint> pts;
    for (int k = 0; k < 8; ++k) pts.push_back(rng.gpoint());
    const QuotientVerdict v = extremal_quotient_check(f, rng.circle_point(), pts);
    EXPECT_TRUE(v.psd) << v.min_eig;
    EXPECT_LE(v.rank, 1);
  }
  EXPECT_THROW(extremal_quotient_check(Polynomial(1), CirclePoint(), {GPoint(0.0, 0.0)}), DimensionError);
}

TEST(Kernels, ExtremalQuotientMatchesClosedForm) {
  // the quotient equals conj(f(mu)) f(lambda) on the samples
  Sampler rng(88);
  const Polynomial f = rng.polynomial(2, 2);
  std::vector<GPoint> pts;
  for (int k = 0; k < 6; ++k) pts.push_back(rng.gpoint());
  const QuotientVerdict v = extremal_quotient_check(f, CirclePoint(Complex(0, -1)), pts);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const std::array<Complex, 2> li{pts[i].s(), pts[i].p()}, mj{pts[j].s(), pts[j].p()};
      EXPECT_NEAR(std::abs(v.kernel(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                           std::conj(f(mj)) * f(li)),
                  0.0, 1e-9);
    }
}

TEST(Kernels, MagicSandwichIdentity) {
  Sampler rng(89);
  for (int i = 0; i < 100; ++i) {
    const Moebius m = rng.moebius();
    const CirclePoint omega = rng.circle_point();
    std::vector<GPoint> pts;
    for (int k = 0; k < 8; ++k) pts.push_back(rng.gpoint());
    EXPECT_LT(magic_sandwich_identity(m, [&](const GPoint& g) { return phi(omega, g); }, pts), 1e-12);
  }
  // holds for any map into the disc, here the identity on D
  const Moebius m(CirclePoint(), DiscPoint(Complex(0.5, 0)));
  const std::vector<Complex> zs{0.1, Complex(0, 0.3), -0.4};
  EXPECT_LT(magic_sandwich_identity(m, [](Complex z) { return z; }, zs), 1e-14);
}
