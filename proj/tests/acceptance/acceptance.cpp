// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "symbidisc/bidisc.hpp"
#include "symbidisc/cara.hpp"
#include "symbidisc/hereditary.hpp"
#include "symbidisc/kernels.hpp"
#include "symbidisc/sampling.hpp"
#include "symbidisc/selftest.hpp"

using namespace symbidisc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(const char* id, const char* title, bool ok, const std::string& detail) {
  std::printf("%s %-28s %s  %s\n", id, title, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

constexpr std::uint64_t kSeed = 42;

void ac01_royal_collapse() {
  Sampler rng(kSeed + 1);
  const auto start = Clock::now();
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const CirclePoint w = rng.circle_point();
    const DiscPoint l = rng.disc_point(0.999);
    worst = std::max(worst, std::abs(phi(w, royal(l)) + l.value()));
  }
  const double t = seconds_since(start);
  report("AC01", "royal collapse", worst < 1e-12 && t < 1.0,
         fmt("n=10000 worst=%.3e (<1e-12) time=%.3fs (<1s)", worst, t));
}

void ac02_closed_form() {
  Sampler rng(kSeed + 2);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const GPoint x = rng.gpoint(), y = rng.gpoint();
    const CirclePoint w = rng.circle_point();
    worst = std::max(worst, std::abs(objective_via_magic(x, y, w) - objective(x, y, w)));
  }
  report("AC02", "closed-form agreement", worst < 1e-11, fmt("n=10000 worst=%.3e (<1e-11)", worst));
}

void ac03_geodesic_isometry() {
  Sampler rng(kSeed + 3);
  double worst = 0, spread = 0;
  for (int i = 0; i < 1000; ++i) {
    const DiscPoint l1 = rng.disc_point(), l2 = rng.disc_point();
    GPoint x, y;
    if (i % 2 == 0) {
      x = royal(l1);
      y = royal(l2);
    } else {
      const DiscPoint beta = rng.disc_point();
      x = flat_point(beta, l1);
      y = flat_point(beta, l2);
    }
    worst = std::max(worst, std::abs(cara_distance(x, y).distance - rho(l1, l2)));
    const CaraObjective obj = CaraObjective::from_points(x, y);
    double lo = 2, hi = -1;
    for (int k = 0; k < 64; ++k) {
      const double v = obj(CirclePoint::from_angle(2 * M_PI * k / 64));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    spread = std::max(spread, hi - lo);
  }
  report("AC03", "flat and royal isometry", worst < 1e-8 && spread < 1e-10,
         fmt("n=1000 isometry=%.3e (<1e-8) constancy=%.3e (<1e-10)", worst, spread));
}

void ac04_automorphism_isometry() {
  Sampler rng(kSeed + 4);
  const auto start = Clock::now();
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const GAutomorphism a(rng.moebius());
    const GPoint x = rng.gpoint(), y = rng.gpoint();
    worst = std::max(worst, std::abs(cara_distance(a(x), a(y)).distance - cara_distance(x, y).distance));
  }
  const double t = seconds_since(start);
  report("AC04", "automorphism isometry", worst < 1e-8 && t < 30,
         fmt("n=1000 worst=%.3e (<1e-8) time=%.2fs (<30s)", worst, t));
}

void ac05_unique_extremal() {
  double dist_err = 0, arc = 0;
  bool all_unique = true;
  for (int k = 0; k < 16; ++k) {
    const CirclePoint eta = CirclePoint::from_angle(2 * M_PI * k / 16);
    const ExtremalResult r = cara_distance(GPoint(0.0, 0.0), GPoint(0.9 * std::conj(eta.value()), 0.0));
    dist_err = std::max(dist_err, std::abs(r.distance - 9.0 / 11.0));
    all_unique = all_unique && r.unique && !r.maximizers.empty();
    if (!r.maximizers.empty()) arc = std::max(arc, arc_distance(r.maximizers.front(), eta));
  }
  report("AC05", "unique extremal", dist_err < 1e-9 && all_unique && arc < 1e-6,
         fmt("n=16 |d-9/11|=%.3e (<1e-9) unique=%g arc=%.3e (<1e-6)", dist_err, all_unique ? 1 : 0, arc));
}

void ac06_foliation() {
  Sampler rng(kSeed + 6);
  double roundtrip = 0, meet = 0;
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const GPoint g = rng.gpoint();
    try {
      const auto fp = flat_through(g);
      const Complex b = fp.beta.value();
      const GPoint back = flat_point(fp.beta, fp.lambda);
      roundtrip = std::max(roundtrip, std::max(std::abs(back.s() - g.s()), std::abs(back.p() - g.p())));
      // F_beta meets V where beta l'^2 - 2 l' + conj(beta) = 0; count roots in D
      int inside = 0;
      if (std::abs(b) < 1e-300) {
        inside = 1;
      } else {
        const auto [r1, r2] = quadratic_roots(2.0 / b, std::conj(b) / b);
        inside = (std::abs(r1) < 1) + (std::abs(r2) < 1);
      }
      const Complex lp = flat_royal_meet(fp.beta).value();
      const double res =
          std::max(std::abs(b * lp * lp - 2.0 * lp + std::conj(b)),
                   std::max(std::abs(flat_point(fp.beta, DiscPoint(lp * lp)).s() - royal(DiscPoint(lp)).s()),
                            royal_defect(flat_point(fp.beta, DiscPoint(lp * lp)))));
      meet = std::max(meet, res);
      if (inside != 1) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  report("AC06", "foliation", bad == 0 && roundtrip < 1e-12 && meet < 1e-10,
         fmt("n=1000 failures=%g roundtrip=%.3e (<1e-12) royal_meet=%.3e (<1e-10)", bad, roundtrip, meet));
}

double h0_squared_min_eig(double a) {
  const HereditaryPolynomial h0 = disc_generator();
  ComplexMatrix t = ComplexMatrix::Zero(2, 2);
  t(0, 1) = a;
  return positivity(h0 * h0, CommutingTuple::make({t}), 1e-12).min_eig;
}

void ac07_counterexample_sweep() {
  double worst = 0;
  for (int k = 1; k <= 10; ++k) {
    const double a = 0.1 * k;
    worst = std::max(worst, std::abs(h0_squared_min_eig(a) - (1 - 2 * a * a)));
  }
  double lo = 0.1, hi = 1.0;
  while (hi - lo > 1e-13) {
    const double mid = (lo + hi) / 2;
    (h0_squared_min_eig(mid) >= 0 ? lo : hi) = mid;
  }
  const double target = 1 / std::sqrt(2.0);
  const bool bracket = lo - 1e-12 <= target && target <= hi + 1e-12;
  report("AC07", "hereditary counterexample", worst < 1e-12 && bracket,
         fmt("worst=%.3e (<1e-12) bracket=[%.15f, %.15f]", worst, lo, hi));
}

void ac08_conjugation() {
  Sampler rng(kSeed + 8);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const auto [a, b] = rng.commuting_contraction_pair(rng.integer(1, 8));
    const std::vector<ComplexMatrix> t{a, b};
    const HereditaryPolynomial h = rng.hermitian_hereditary(2, 2);
    const Polynomial f = rng.polynomial(2, 2), g = rng.polynomial(2, 2);
    const ComplexMatrix d = hered_eval_tuple(conjugate(f, h, g), t) - f(t).adjoint() * hered_eval_tuple(h, t) * g(t);
    worst = std::max(worst, d.cwiseAbs().maxCoeff());
  }
  report("AC08", "conjugation identity", worst < 1e-9, fmt("n=100 worst=%.3e (<1e-9)", worst));
}

void ac09_magic_membership() {
  Sampler rng(kSeed + 9);
  double lowest = 1e300;
  for (int i = 0; i < 100; ++i) {
    const auto [a, b] = rng.commuting_contraction_pair(rng.integer(2, 6));
    for (int k = 0; k < 16; ++k) {
      const auto r = magic_membership_test_G(CirclePoint::from_angle(2 * M_PI * k / 16), a, b, 1e-9);
      lowest = std::min(lowest, r.min_eig);
    }
  }
  report("AC09", "magic membership", lowest >= -1e-9, fmt("n=100x16 min_eig=%.3e (>=-1e-9)", lowest));
}

void ac10_stcal_boundary() {
  Sampler rng(kSeed + 10);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const GPoint x = rng.gpoint(), y = rng.gpoint();
    const CirclePoint w = rng.circle_point();
    const double r = pseudohyperbolic(phi(w, x), phi(w, y));
    worst = std::max(worst, std::abs(stcal_threshold(x, y, w) - std::sqrt(1 - r * r)));
  }
  report("AC10", "stcal boundary", worst < 1e-6, fmt("n=100 worst=%.3e (<1e-6)", worst));
}

void ac11_rank_one_quotients() {
  Sampler rng(kSeed + 11);
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    const Polynomial f = rng.polynomial(2, 2);
    const CirclePoint omega = rng.circle_point();
    std::vector<GPoint> pts;
    for (int k = 0; k < 8; ++k) pts.push_back(rng.gpoint());
    const QuotientVerdict v = extremal_quotient_check(f, omega, pts);
    if (!v.psd || v.rank > 1) ++bad;
  }
  report("AC11", "rank-one quotients", bad == 0, fmt("n=100 failures=%g", bad));
}

void ac12_magic_sandwich() {
  Sampler rng(kSeed + 12);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const Moebius m = rng.moebius();
    const CirclePoint omega = rng.circle_point();
    std::vector<GPoint> pts;
    for (int k = 0; k < 8; ++k) pts.push_back(rng.gpoint());
    worst = std::max(worst, magic_sandwich_identity(m, [&](const GPoint& g) { return phi(omega, g); }, pts));
  }
  report("AC12", "magic sandwich identity", worst < 1e-12, fmt("n=100 worst=%.3e (<1e-12)", worst));
}

void ac13_determinism() {
  SelftestOptions quick;
  quick.seed = 42;
  const std::string a = format_report(run_selftest(quick), quick);
  const std::string b = format_report(run_selftest(quick), quick);
  SelftestOptions full = quick;
  full.level = SelftestLevel::full;
  const auto start = Clock::now();
  const SelftestReport r = run_selftest(full);
  const double t = seconds_since(start);
  report("AC13", "determinism", a == b && r.all_passed() && t < 300,
         fmt("identical=%g full_passed=%g full_time=%.2fs (<300s)", a == b ? 1 : 0, r.all_passed() ? 1 : 0, t));
}

}  // namespace

int main() {
  ac01_royal_collapse();
  ac02_closed_form();
  ac03_geodesic_isometry();
  ac04_automorphism_isometry();
  ac05_unique_extremal();
  ac06_foliation();
  ac07_counterexample_sweep();
  ac08_conjugation();
  ac09_magic_membership();
  ac10_stcal_boundary();
  ac11_rank_one_quotients();
  ac12_magic_sandwich();
  ac13_determinism();
  std::printf("acceptance: %d/13 passed\n", 13 - failures);
  return failures == 0 ? 0 : 1;
}
