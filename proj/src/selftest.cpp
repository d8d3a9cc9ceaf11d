#include "symbidisc/selftest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "symbidisc/bidisc.hpp"
#include "symbidisc/cara.hpp"
#include "symbidisc/disc.hpp"
#include "symbidisc/hereditary.hpp"
#include "symbidisc/kernels.hpp"
#include "symbidisc/matrixnum.hpp"
#include "symbidisc/sampling.hpp"

namespace symbidisc {

namespace {

class Sweep {
 public:
  Sweep(const SelftestOptions& options, SelftestReport& report)
      : options_(options), report_(report) {}

  int n() const { return options_.level == SelftestLevel::full ? 1000 : 100; }
  int heavy() const { return options_.level == SelftestLevel::full ? 200 : 30; }

  /// Each check gets its own stream so adding a check never shifts another.
  Sampler sampler(int index) const {
    return Sampler(options_.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(index));
  }

  void record(const char* module, const char* name, int samples, double worst, double limit) {
    const bool ok = std::isfinite(worst) && worst <= limit;
    report_.checks.push_back({module, name, samples, worst, limit, ok});
  }

  const SelftestOptions& options() const { return options_; }

 private:
  const SelftestOptions& options_;
  SelftestReport& report_;
};

void matrixnum_checks(Sweep& sw) {
  {
    Sampler rng = sw.sampler(1);
    double worst = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const Eigen::Index dim = rng.integer(1, 8);
      const ComplexMatrix h = rng.hermitian(dim);
      const auto eig = hermitian_eigen(h);
      worst = std::max(worst, std::abs(eig.eigenvalues.sum() - h.trace().real()));
    }
    sw.record("matrixnum", "eigen_trace", sw.n(), worst, 1e-10);
  }
  {
    Sampler rng = sw.sampler(2);
    double worst = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const Eigen::Index dim = rng.integer(1, 8);
      const ComplexMatrix h = rng.hermitian(dim);
      const ComplexMatrix u = rng.unitary(dim);
      const ComplexMatrix rotated = u.adjoint() * h * u;
      const RealVector a = hermitian_eigenvalues(h).eigenvalues;
      const RealVector b = hermitian_eigenvalues((rotated + rotated.adjoint()) / 2.0).eigenvalues;
      worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
    sw.record("matrixnum", "eigen_unitary_invariance", sw.n(), worst, 1e-9);
  }
  {
    Sampler rng = sw.sampler(3);
    double worst = 0;
    const int trials = sw.n() / 10;
    for (int i = 0; i < trials; ++i) {
      const Eigen::Index dim = rng.integer(1, 8);
      const ComplexMatrix a = rng.matrix(dim, dim);
      const double norm = operator_norm(a);
      double sampled = 0;
      for (int k = 0; k < 1000; ++k) sampled = std::max(sampled, (a * rng.unit_vector(dim)).norm());
      // the norm may never fall below a sampled value
      worst = std::max(worst, sampled - norm);
    }
    sw.record("matrixnum", "operator_norm_upper", trials, std::max(worst, 0.0), 1e-8);
  }
  {
    Sampler rng = sw.sampler(4);
    double worst = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const Eigen::Index dim = rng.integer(1, 8);
      const ComplexMatrix a = rng.matrix(dim, dim);
      const auto sr = schur_triangularize(a);
      const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
      worst = std::max(worst, (sr.q * sr.q.adjoint() - id).cwiseAbs().maxCoeff());
      for (Eigen::Index r = 1; r < dim; ++r)
        for (Eigen::Index c = 0; c < r; ++c) worst = std::max(worst, std::abs(sr.r(r, c)));
    }
    sw.record("matrixnum", "schur_residuals", sw.n(), worst, 1e-10);
  }
}

void disc_checks(Sweep& sw) {
  {
    Sampler rng = sw.sampler(10);
    double worst = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const DiscPoint x = rng.disc_point(), y = rng.disc_point(), z = rng.disc_point();
      const double a = rho(x, y), b = rho(y, z);
      worst = std::max(worst, rho(x, z) - (a + b) / (1.0 + a * b));
    }
    sw.record("disc", "rho_triangle", sw.n(), std::max(worst, 0.0), 1e-12);
  }
  {
    Sampler rng = sw.sampler(11);
    double worst = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const Moebius m = rng.moebius();
      worst = std::max(worst, moebius_invariance_check(m, rng.disc_point(), rng.disc_point()));
    }
    sw.record("disc", "moebius_invariance", sw.n(), worst, 1e-12);
  }
  {
    Sampler rng = sw.sampler(12);
    double worst = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const Moebius a = rng.moebius(), b = rng.moebius(), c = rng.moebius();
      const Complex z = rng.disc_point().value();
      const Complex left = a.compose(b).compose(c).apply(z);
      const Complex right = a.compose(b.compose(c)).apply(z);
      const Complex direct = a.apply(b.apply(c.apply(z)));
      const Complex back = a.inverse().apply(a.apply(z));
      worst = std::max({worst, std::abs(left - right), std::abs(left - direct),
                        std::abs(back - z)});
    }
    sw.record("disc", "group_laws", sw.n(), worst, 1e-12);
  }
}

void bidisc_checks(Sweep& sw) {
  {
    Sampler rng = sw.sampler(20);
    const bool fault = sw.options().inject_phi_sign_fault;
    double worst = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const CirclePoint omega = rng.circle_point();
      const DiscPoint lambda = rng.disc_point();
      GPoint g = royal(lambda);
      if (fault) g = GPoint::trusted(-g.s(), g.p());
      worst = std::max(worst, std::abs(phi(omega, g) + lambda.value()));
    }
    sw.record("bidisc", "royal_collapse", sw.n(), worst, 1e-12);
  }
  {
    Sampler rng = sw.sampler(21);
    double worst = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const GPoint g = rng.gpoint();
      const FlatParameters fp = flat_through(g);
      const GPoint back = flat_point(fp.beta, fp.lambda);
      const DiscPoint meet = flat_royal_meet(fp.beta);
      const Complex b = fp.beta.value(), l = meet.value();
      worst = std::max({worst, std::abs(back.s() - g.s()), std::abs(back.p() - g.p()),
                        std::abs(b * l * l + std::conj(b) - 2.0 * l)});
    }
    sw.record("bidisc", "foliation", sw.n(), worst, 1e-12);
  }
  {
    Sampler rng = sw.sampler(22);
    double worst = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const CirclePoint omega = rng.circle_point();
      const DiscPoint beta = rng.disc_point(), z = rng.disc_point();
      const FlatMagicParams fm = phi_on_flat_params(omega, beta);
      const Complex lhs = phi(omega, flat_point(beta, z));
      worst = std::max(worst, std::abs(lhs - fm.tau.value() * blaschke(fm.alpha, z)));
    }
    sw.record("bidisc", "flat_restriction", sw.n(), worst, 1e-12);
  }
  {
    Sampler rng = sw.sampler(23);
    double worst = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const GAutomorphism a(rng.moebius()), b(rng.moebius());
      const GPoint g = rng.gpoint();
      const GPoint lhs = a.compose(b)(g);
      const GPoint rhs = a(b(g));
      worst = std::max({worst, std::abs(lhs.s() - rhs.s()), std::abs(lhs.p() - rhs.p())});
    }
    sw.record("bidisc", "tau_homomorphism", sw.n(), worst, 1e-11);
  }
  {
    Sampler rng = sw.sampler(24);
    double worst = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const CirclePoint omega = rng.circle_point(), eta = rng.circle_point();
      const GPoint g = rng.gpoint();
      const GAutomorphism rot(Moebius::rotation(eta));
      const Complex lhs = phi(omega, rot(g));
      const Complex rhs = eta.value() * phi(eta * omega, g);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    sw.record("bidisc", "rotation_law", sw.n(), worst, 1e-11);
  }
  {
    Sampler rng = sw.sampler(25);
    int failures = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const GAutomorphism a(rng.moebius());
      const GPoint image = a(rng.gpoint());
      if (!contains(image.s(), image.p())) ++failures;
    }
    sw.record("bidisc", "membership_stability", sw.n(), failures, 0);
  }
  {
    Sampler rng = sw.sampler(26);
    double worst = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const DiscPoint z = rng.disc_point(), w = rng.disc_point();
      const Moebius m = involution_fixing(z, w);
      const GPoint g = sym(z, w);
      const GPoint image = GAutomorphism(m)(g);
      worst = std::max({worst, std::abs(m.apply(z.value()) - w.value()),
                        std::abs(m.apply(m.apply(z.value())) - z.value()),
                        std::abs(image.s() - g.s()), std::abs(image.p() - g.p())});
    }
    sw.record("bidisc", "involution_fixes_point", sw.n(), worst, 1e-11);
  }
}

void cara_checks(Sweep& sw) {
  {
    Sampler rng = sw.sampler(30);
    double worst = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const GPoint x = rng.gpoint(), y = rng.gpoint();
      const CirclePoint omega = rng.circle_point();
      worst = std::max(worst, std::abs(objective(x, y, omega) - objective_via_magic(x, y, omega)));
    }
    sw.record("cara", "formula_agreement", sw.n(), worst, 1e-11);
  }
  {
    Sampler rng = sw.sampler(31);
    double worst = 0;
    for (int i = 0; i < sw.heavy(); ++i) {
      const GAutomorphism a(rng.moebius());
      const GPoint x = rng.gpoint(), y = rng.gpoint();
      const double before = cara_distance(x, y).distance;
      const double after = cara_distance(a(x), a(y)).distance;
      worst = std::max(worst, std::abs(before - after));
    }
    sw.record("cara", "automorphism_isometry", sw.heavy(), worst, 1e-8);
  }
  {
    Sampler rng = sw.sampler(32);
    double worst = 0;
    for (int i = 0; i < sw.heavy(); ++i) {
      const DiscPoint l1 = rng.disc_point(), l2 = rng.disc_point(), beta = rng.disc_point();
      const double expected = rho(l1, l2);
      worst = std::max(worst, std::abs(cara_distance(royal(l1), royal(l2)).distance - expected));
      worst = std::max(worst, std::abs(cara_distance(flat_point(beta, l1), flat_point(beta, l2))
                                           .distance -
                                       expected));
    }
    sw.record("cara", "geodesic_isometry", sw.heavy(), worst, 1e-8);
  }
  {
    Sampler rng = sw.sampler(33);
    double worst = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const DiscPoint l1 = rng.disc_point(), l2 = rng.disc_point(), beta = rng.disc_point();
      const std::array<std::pair<GPoint, GPoint>, 2> pairs{
          std::pair{royal(l1), royal(l2)}, std::pair{flat_point(beta, l1), flat_point(beta, l2)}};
      for (const auto& [x, y] : pairs) {
        double lo = 2, hi = -1;
        for (int k = 0; k < 64; ++k) {
          const double v = objective(x, y, CirclePoint::from_angle(2 * M_PI * k / 64));
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        worst = std::max(worst, hi - lo);
      }
    }
    sw.record("cara", "geodesic_all_omega_extremal", sw.n(), worst, 1e-10);
  }
  {
    Sampler rng = sw.sampler(34);
    double sym_worst = 0, tri_worst = 0;
    for (int i = 0; i < sw.heavy(); ++i) {
      const GPoint x = rng.gpoint(), y = rng.gpoint(), z = rng.gpoint();
      const double xy = cara_distance(x, y).distance;
      const double yx = cara_distance(y, x).distance;
      const double yz = cara_distance(y, z).distance;
      const double xz = cara_distance(x, z).distance;
      sym_worst = std::max(sym_worst, std::abs(xy - yx));
      tri_worst = std::max(tri_worst, xz - (xy + yz) / (1.0 + xy * yz));
    }
    sw.record("cara", "symmetry", sw.heavy(), sym_worst, 1e-10);
    sw.record("cara", "triangle_bound", sw.heavy(), std::max(tri_worst, 0.0), 1e-8);
  }
  {
    Sampler rng = sw.sampler(35);
    int disagreements = 0, tested = 0;
    for (int i = 0; i < sw.n(); ++i) {
      const GPoint x = rng.gpoint(), y = rng.gpoint();
      const CirclePoint omega = rng.circle_point();
      const double r = pseudohyperbolic(phi(omega, x), phi(omega, y));
      const double g = rng.uniform(0.0, 0.999);
      // skip samples within 1e-6 of the decision boundary
      if (std::abs(g * g - (1 - r * r)) < 1e-6) continue;
      ++tested;
      const StcalVerdict v = stcal_check(build_tuple_for_gram(g, x, y), omega);
      if (v.lhs != v.rhs) ++disagreements;
    }
    sw.record("cara", "stcal_equivalence", tested, disagreements, 0);
  }
  {
    Sampler rng = sw.sampler(36);
    double worst = 0;
    for (int i = 0; i < sw.heavy(); ++i) {
      const GPoint x = rng.gpoint(), y = rng.gpoint();
      const CirclePoint omega = rng.circle_point();
      const double r = pseudohyperbolic(phi(omega, x), phi(omega, y));
      worst = std::max(worst, std::abs(stcal_threshold(x, y, omega) - std::sqrt(1 - r * r)));
    }
    sw.record("cara", "stcal_threshold", sw.heavy(), worst, 1e-6);
  }
}

ComplexMatrix diagonal_in_basis(const ComplexMatrix& u, const ComplexVector& d) {
  return u * d.asDiagonal() * u.adjoint();
}

void hereditary_checks(Sweep& sw) {
  const int trials = std::max(sw.n() / 10, 10);
  {
    Sampler rng = sw.sampler(40);
    double worst = 0;
    for (int i = 0; i < trials; ++i) {
      const Eigen::Index dim = rng.integer(1, 6);
      const ComplexMatrix u = rng.unitary(dim);
      std::vector<std::vector<Complex>> spec(static_cast<std::size_t>(dim));
      ComplexVector d1(dim), d2(dim);
      for (Eigen::Index k = 0; k < dim; ++k) {
        d1(k) = rng.disc_point().value();
        d2(k) = rng.disc_point().value();
        spec[static_cast<std::size_t>(k)] = {d1(k), d2(k)};
      }
      const std::vector<ComplexMatrix> t{diagonal_in_basis(u, d1), diagonal_in_basis(u, d2)};
      const HereditaryPolynomial h = rng.hermitian_hereditary(2, 2);
      // <h(T) u_c, u_r> = h(lambda_c, conj lambda_r) <u_c, u_r>: only the diagonal survives
      ComplexMatrix assembled = ComplexMatrix::Zero(dim, dim);
      for (Eigen::Index k = 0; k < dim; ++k) {
        const auto& x = spec[static_cast<std::size_t>(k)];
        const std::array<Complex, 2> xbar{std::conj(x[0]), std::conj(x[1])};
        assembled(k, k) = hered_eval_point(h, x, xbar);
      }
      const ComplexMatrix direct = hered_eval_tuple(h, t);
      worst = std::max(worst, (direct - u * assembled * u.adjoint()).cwiseAbs().maxCoeff());
    }
    sw.record("hereditary", "point_tuple_consistency", trials, worst, 1e-10);
  }
  {
    Sampler rng = sw.sampler(41);
    double worst = 0;
    for (int i = 0; i < trials; ++i) {
      const auto [t1, t2] = rng.commuting_contraction_pair(rng.integer(1, 8));
      const std::vector<ComplexMatrix> t{t1, t2};
      const HereditaryPolynomial h = rng.hermitian_hereditary(2, 2);
      const Polynomial left = rng.polynomial(2, 2), right = rng.polynomial(2, 2);
      const ComplexMatrix lhs = hered_eval_tuple(conjugate(left, h, right), t);
      const ComplexMatrix rhs = left(t).adjoint() * hered_eval_tuple(h, t) * right(t);
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    sw.record("hereditary", "conjugation_identity", trials, worst, 1e-9);
  }
  {
    Sampler rng = sw.sampler(42);
    double worst = 0;
    for (int i = 0; i < trials; ++i) {
      const auto [t1, t2] = rng.commuting_contraction_pair(rng.integer(1, 8));
      const CommutingTuple t = CommutingTuple::make({t1, t2});
      const Polynomial g = rng.polynomial(2, 2);
      const HereditaryPolynomial h = HereditaryPolynomial::vee(g) * HereditaryPolynomial::from_analytic(g);
      worst = std::max(worst, -positivity(h, t, 1e-10).min_eig);
    }
    sw.record("hereditary", "rank_one_psd", trials, std::max(worst, 0.0), 1e-10);
  }
  {
    Sampler rng = sw.sampler(43);
    double worst = 0;
    for (int i = 0; i < trials; ++i) {
      const auto [t1, t2] = rng.commuting_contraction_pair(rng.integer(1, 6));
      for (int k = 0; k < 16; ++k) {
        const auto r = magic_membership_test_G(CirclePoint::from_angle(2 * M_PI * k / 16), t1, t2, 1e-9);
        worst = std::max(worst, -r.min_eig);
      }
    }
    sw.record("hereditary", "magic_membership", trials, std::max(worst, 0.0), 1e-9);
  }
  {
    double worst = 0;
    const HereditaryPolynomial h0 = disc_generator();
    const HereditaryPolynomial h0sq = h0 * h0;
    for (int k = 1; k <= 10; ++k) {
      const double a = 0.1 * k;
      ComplexMatrix t = ComplexMatrix::Zero(2, 2);
      t(0, 1) = a;
      const CommutingTuple ct = CommutingTuple::make({t});
      worst = std::max(worst, std::abs(positivity(h0sq, ct, 1e-12).min_eig - (1 - 2 * a * a)));
      worst = std::max(worst, -positivity(h0, ct, 1e-12).min_eig);
    }
    sw.record("hereditary", "h0_square_sweep", 10, std::max(worst, 0.0), 1e-12);
  }
  {
    Sampler rng = sw.sampler(44);
    double worst = 0;
    for (int i = 0; i < trials; ++i) {
      const auto [t1, t2] = rng.commuting_contraction_pair(rng.integer(1, 6));
      const ComplexMatrix u = rng.unitary(t1.rows());
      const std::vector<ComplexMatrix> a{t1, t2};
      const std::vector<ComplexMatrix> b{u * t1 * u.adjoint(), u * t2 * u.adjoint()};
      worst = std::max(worst, joint_spectrum_distance(joint_spectrum(a), joint_spectrum(b, 1e-9)));
    }
    sw.record("hereditary", "joint_spectrum_unitary_invariance", trials, worst, 1e-8);
  }
}

void kernel_checks(Sweep& sw) {
  const int trials = std::max(sw.n() / 10, 10);
  {
    Sampler rng = sw.sampler(50);
    double worst = 0;
    for (int i = 0; i < trials; ++i) {
      const Eigen::Index n = rng.integer(1, 10), r = rng.integer(1, 10);
      const ComplexMatrix f = rng.matrix(n, r);
      const GramMatrix g = gram_from_matrix(f * f.adjoint());
      worst = std::max(worst, factor_residual(g, gram_factor(g)));
    }
    sw.record("kernels", "factor_reconstruction", trials, worst, 1e-9);
  }
  {
    Sampler rng = sw.sampler(51);
    int failures = 0;
    for (int i = 0; i < trials; ++i) {
      const Polynomial f = rng.polynomial(1, 3);
      std::vector<KernelPoint> pts;
      for (int k = 0; k < 8; ++k) pts.push_back(as_kernel_point(rng.disc_point().value()));
      auto kernel = [&](const KernelPoint& l, const KernelPoint& m) {
        const std::array<Complex, 1> xl{l(0)}, xm{m(0)};
        return std::conj(f(xm)) * f(xl);
      };
      if (numeric_rank(gram(kernel, pts)) != 1) ++failures;
    }
    sw.record("kernels", "rank_one", trials, failures, 0);
  }
  {
    Sampler rng = sw.sampler(52);
    int failures = 0;
    for (int i = 0; i < trials; ++i) {
      const Polynomial f = rng.polynomial(2, 2);
      const CirclePoint omega = rng.circle_point();
      std::vector<GPoint> pts;
      for (int k = 0; k < 8; ++k) pts.push_back(rng.gpoint());
      const QuotientVerdict v = extremal_quotient_check(f, omega, pts);
      if (!v.psd || v.rank > 1) ++failures;
    }
    sw.record("kernels", "extremal_quotient_rank_one", trials, failures, 0);
  }
  {
    Sampler rng = sw.sampler(53);
    double worst = 0;
    for (int i = 0; i < trials; ++i) {
      const Complex alpha = rng.disc_point().value();
      std::vector<KernelPoint> pts;
      for (int k = 0; k < 8; ++k) pts.push_back(as_kernel_point(rng.disc_point().value()));
      auto kernel = [&](const KernelPoint& z, const KernelPoint& w) {
        return (1.0 - std::conj(blaschke(alpha, w(0))) * blaschke(alpha, z(0))) /
               (1.0 - std::conj(w(0)) * z(0));
      };
      worst = std::max(worst, -is_psd(gram(kernel, pts), 1e-10).min_eig);
    }
    sw.record("kernels", "flat_kernel_psd", trials, std::max(worst, 0.0), 1e-10);
  }
  {
    Sampler rng = sw.sampler(54);
    double worst = 0;
    for (int i = 0; i < trials; ++i) {
      const Moebius m = rng.moebius();
      const CirclePoint omega = rng.circle_point();
      std::vector<GPoint> pts;
      for (int k = 0; k < 8; ++k) pts.push_back(rng.gpoint());
      worst = std::max(worst, magic_sandwich_identity(m, [&](const GPoint& g) { return phi(omega, g); }, pts));
    }
    sw.record("kernels", "magic_sandwich", trials, worst, 1e-12);
  }
}

}  // namespace

bool SelftestReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed; });
}

SelftestReport run_selftest(const SelftestOptions& options) {
  SelftestReport report;
  Sweep sw(options, report);
  matrixnum_checks(sw);
  disc_checks(sw);
  bidisc_checks(sw);
  cara_checks(sw);
  hereditary_checks(sw);
  kernel_checks(sw);
  return report;
}

std::string format_report(const SelftestReport& report, const SelftestOptions& options) {
  std::ostringstream out;
  char line[256];
  int passed = 0;
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "[%s] %s/%s n=%d worst=%.3e limit=%.1e\n",
                  c.passed ? "PASS" : "FAIL", c.module.c_str(), c.name.c_str(), c.samples,
                  c.worst, c.limit);
    out << line;
    if (c.passed) ++passed;
  }
  std::snprintf(line, sizeof line, "selftest seed=%llu level=%s%s: %d/%zu passed\n",
                static_cast<unsigned long long>(options.seed),
                options.level == SelftestLevel::full ? "full" : "quick",
                options.inject_phi_sign_fault ? " fault=phi-sign" : "", passed,
                report.checks.size());
  out << line;
  return out.str();
}

}  // namespace symbidisc
