#include "symbidisc/cara.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "symbidisc/matrixnum.hpp"

namespace symbidisc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex horner(const std::array<Complex, 3>& c, Complex w) { return (c[0] * w + c[1]) * w + c[2]; }

struct Candidate {
  double theta;
  double value;
};

template <typename F>
Candidate golden_section_max(const F& f, double lo, double hi, Candidate start, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  Candidate best = start;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 200 && b - a > tol; ++iter) {
    if (fc > best.value) best = {c, fc};
    if (fd > best.value) best = {d, fd};
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fc > best.value) best = {c, fc};
  if (fd > best.value) best = {d, fd};
  return best;
}

/// Sharpens a golden-section maximiser (accurate to about sqrt(eps) in angle)
/// by bisecting on the sign of d/dtheta |N|^2 / |D|^2 inside a small bracket.
Candidate polish(const CaraObjective& obj, Candidate c, double max_bracket) {
  auto slope = [&obj](double theta) {
    const Complex w = std::polar(1.0, theta);
    const Complex iw(-w.imag(), w.real());
    const Complex n = obj.numerator_at(w), d = obj.denominator_at(w);
    const Complex np = 2.0 * obj.numerator[0] * w + obj.numerator[1];
    const Complex dp = 2.0 * obj.denominator[0] * w + obj.denominator[1];
    return (std::conj(n) * iw * np).real() * std::norm(d) -
           (std::conj(d) * iw * dp).real() * std::norm(n);
  };
  for (double h : {1e-7, 1e-5, max_bracket}) {
    double a = c.theta - h, b = c.theta + h;
    if (!(slope(a) > 0 && slope(b) < 0)) continue;
    for (int iter = 0; iter < 200 && b - a > 0; ++iter) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      (slope(mid) > 0 ? a : b) = mid;
    }
    const double theta = 0.5 * (a + b);
    const double value = obj(CirclePoint::from_angle(theta));
    if (value >= c.value * (1 - 8 * std::numeric_limits<double>::epsilon())) {
      return {theta, std::max(value, c.value)};
    }
    return c;
  }
  return c;
}

double wrapped_gap(double t1, double t2) {
  double d = std::fmod(std::abs(t1 - t2), kTwoPi);
  return d > std::numbers::pi ? kTwoPi - d : d;
}

}  // namespace

CaraObjective CaraObjective::from_points(const GPoint& x, const GPoint& y) {
  const Complex s1 = x.s(), p1 = x.p(), s2 = y.s(), p2 = y.p();
  CaraObjective obj{x, y, {}, {}};
  obj.numerator = {s2 * p1 - s1 * p2, 2.0 * (p2 - p1), s1 - s2};
  obj.denominator = {s1 - std::conj(s2) * p1, -2.0 * (1.0 - p1 * std::conj(p2)),
                     std::conj(s2) - s1 * std::conj(p2)};
  return obj;
}

Complex CaraObjective::numerator_at(Complex omega) const { return horner(numerator, omega); }
Complex CaraObjective::denominator_at(Complex omega) const { return horner(denominator, omega); }

double CaraObjective::operator()(CirclePoint omega) const {
  const Complex w = omega.value();
  return std::abs(numerator_at(w) / denominator_at(w));
}

double objective(const GPoint& x, const GPoint& y, CirclePoint omega) {
  return CaraObjective::from_points(x, y)(omega);
}

double objective_via_magic(const GPoint& x, const GPoint& y, CirclePoint omega) {
  return pseudohyperbolic(phi(omega, x), phi(omega, y));
}

double arc_distance(CirclePoint a, CirclePoint b) { return wrapped_gap(a.arg(), b.arg()); }

ExtremalResult cara_distance(const GPoint& x, const GPoint& y, const SearchConfig& config) {
  const int n = std::max(config.samples, 8);
  const CaraObjective obj = CaraObjective::from_points(x, y);
  auto f = [&obj](double theta) { return obj(CirclePoint::from_angle(theta)); };
  const double step = kTwoPi / n;

  // Each sample depends only on its index; batches may be evaluated in any order.
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = f(i * step);

  ExtremalResult result;
  result.samples_used = n;
  result.refined_tolerance = config.refine_tolerance;

  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  if (*max_it - *min_it <= config.flatness_tolerance) {
    result.distance = *max_it;
    result.constant = true;
    result.unique = false;
    for (int k = 0; k < 8; ++k) result.maximizers.push_back(CirclePoint::from_angle(k * n / 8 * step));
    return result;
  }

  std::vector<Candidate> refined;
  for (int i = 0; i < n; ++i) {
    const double v = values[static_cast<std::size_t>(i)];
    const double prev = values[static_cast<std::size_t>((i + n - 1) % n)];
    const double next = values[static_cast<std::size_t>((i + 1) % n)];
    if (v < prev || v < next) continue;
    const double theta = i * step;
    const Candidate coarse =
        golden_section_max(f, theta - step, theta + step, {theta, v}, config.refine_tolerance);
    refined.push_back(polish(obj, coarse, step));
  }
  std::sort(refined.begin(), refined.end(),
            [](const Candidate& a, const Candidate& b) { return a.value > b.value; });

  std::vector<Candidate> clusters;
  for (const auto& c : refined) {
    const bool merged = std::any_of(clusters.begin(), clusters.end(), [&](const Candidate& k) {
      return wrapped_gap(k.theta, c.theta) < config.cluster_radius &&
             std::abs(k.value - c.value) <= config.value_tolerance;
    });
    if (!merged) clusters.push_back(c);
  }

  result.distance = clusters.front().value;
  for (const auto& c : clusters) {
    if (c.value >= result.distance - config.value_tolerance) {
      result.maximizers.push_back(CirclePoint::from_angle(c.theta));
    }
  }
  result.unique = result.maximizers.size() == 1;
  return result;
}

ExtremalMagic extremal_magic(const GPoint& x, const GPoint& y, const SearchConfig& config) {
  if (x == y) throw DomainError("extremal_magic: points coincide");
  const ExtremalResult r = cara_distance(x, y, config);
  const CirclePoint omega = r.maximizers.front();
  const Complex a = phi(omega, x);
  const Complex b = blaschke(a, phi(omega, y));
  const Moebius centre{CirclePoint{}, DiscPoint(a)};
  const Moebius m = b == Complex(0) ? centre
                                    : Moebius::rotation(CirclePoint(std::conj(b))).compose(centre);
  return {omega, m, r.distance};
}

TupleTu build_tuple(const Eigen::Vector2cd& u1, const Eigen::Vector2cd& u2, const GPoint& x,
                    const GPoint& y) {
  if (std::abs(u1.norm() - 1.0) > 1e-12 || std::abs(u2.norm() - 1.0) > 1e-12) {
    throw DomainError("build_tuple: basis vectors must be unit vectors");
  }
  Eigen::Matrix2cd basis;
  basis.col(0) = u1;
  basis.col(1) = u2;
  if (std::abs(basis.determinant()) < 1e-12) {
    throw DomainError("build_tuple: basis vectors are linearly dependent");
  }
  const Eigen::Matrix2cd inv = basis.inverse();
  TupleTu t{u1, u2, x, y, {}, {}, 0.0};
  t.t1 = basis * Eigen::Vector2cd(x.s(), y.s()).asDiagonal() * inv;
  t.t2 = basis * Eigen::Vector2cd(x.p(), y.p()).asDiagonal() * inv;
  t.commutation_residual = (t.t1 * t.t2 - t.t2 * t.t1).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, t.t1.cwiseAbs().maxCoeff() * t.t2.cwiseAbs().maxCoeff());
  if (t.commutation_residual > 1e-11 * scale) {
    throw CommutationError("build_tuple: T1(u), T2(u) fail to commute", t.commutation_residual);
  }
  return t;
}

TupleTu build_tuple_for_gram(double g, const GPoint& x, const GPoint& y) {
  const Eigen::Vector2cd u1(1.0, 0.0);
  const Eigen::Vector2cd u2(g, std::sqrt(std::max(0.0, 1.0 - g * g)));
  return build_tuple(u1, u2, x, y);
}

StcalVerdict stcal_check(const TupleTu& t, CirclePoint omega) {
  StcalVerdict v;
  v.norm = operator_norm(phi_matrix(omega, t.t1, t.t2));
  v.gram_squared = std::norm(t.u2.dot(t.u1));
  v.rho = pseudohyperbolic(phi(omega, t.x), phi(omega, t.y));
  v.lhs = v.norm <= 1.0 + 1e-10;
  v.rhs = v.gram_squared <= 1.0 - v.rho * v.rho + 1e-10;
  return v;
}

namespace {

bool norm_condition(double g, const GPoint& x, const GPoint& y,
                    const std::vector<CirclePoint>& omegas) {
  const TupleTu t = build_tuple_for_gram(g, x, y);
  return std::all_of(omegas.begin(), omegas.end(), [&](CirclePoint w) {
    return operator_norm(phi_matrix(w, t.t1, t.t2)) <= 1.0 + 4.0 * 2.220446049250313e-16;
  });
}

constexpr double kGramCeiling = 1.0 - 1e-12;

double bisect_threshold(double lo, double hi, double tol, const GPoint& x, const GPoint& y,
                        const std::vector<CirclePoint>& omegas) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (norm_condition(mid, x, y, omegas)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

double stcal_threshold(const GPoint& x, const GPoint& y, CirclePoint omega, double tol) {
  const std::vector<CirclePoint> omegas{omega};
  if (norm_condition(kGramCeiling, x, y, omegas)) return kGramCeiling;
  return bisect_threshold(0.0, kGramCeiling, tol, x, y, omegas);
}

double caraform_estimate(const GPoint& x, const GPoint& y, int omega_samples, int gram_steps) {
  if (x == y) throw DomainError("caraform_estimate: points coincide");
  omega_samples = std::max(omega_samples, 1);
  gram_steps = std::max(gram_steps, 1);
  std::vector<CirclePoint> omegas;
  omegas.reserve(static_cast<std::size_t>(omega_samples));
  for (int k = 0; k < omega_samples; ++k) {
    omegas.push_back(CirclePoint::from_angle(kTwoPi * k / omega_samples));
  }
  double lo = 0.0;
  double hi = kGramCeiling;
  for (int j = 1; j < gram_steps; ++j) {
    const double g = static_cast<double>(j) / gram_steps;
    if (norm_condition(g, x, y, omegas)) {
      lo = g;
    } else {
      hi = g;
      break;
    }
  }
  double gstar = hi;
  if (hi == kGramCeiling && norm_condition(hi, x, y, omegas)) {
    gstar = hi;
  } else {
    gstar = bisect_threshold(lo, hi, 1e-14, x, y, omegas);
  }
  return std::sqrt(std::max(0.0, 1.0 - gstar * gstar));
}

}  // namespace symbidisc
