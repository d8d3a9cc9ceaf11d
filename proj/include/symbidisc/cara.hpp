#pragma once

// Caratheodory distance on G as the supremum over omega in T of
// rho(Phi_omega(x), Phi_omega(y)), its extremal magic functions, and the
// two-point operator model T(u) relating operator norms of Phi_omega(T(u)) to
// the Gram entry <u1, u2>.

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "symbidisc/bidisc.hpp"
#include "symbidisc/disc.hpp"

namespace symbidisc {

/// |N(omega) / D(omega)| where N, D are quadratics in omega determined by x, y.
struct CaraObjective {
  GPoint x;
  GPoint y;
  std::array<Complex, 3> numerator;    // coefficients of omega^2, omega, 1
  std::array<Complex, 3> denominator;  // coefficients of omega^2, omega, 1

  static CaraObjective from_points(const GPoint& x, const GPoint& y);

  Complex numerator_at(Complex omega) const;
  Complex denominator_at(Complex omega) const;
  double operator()(CirclePoint omega) const;
};

/// Closed-form objective |N(omega)/D(omega)|.
double objective(const GPoint& x, const GPoint& y, CirclePoint omega);

/// The same quantity computed as rho(Phi_omega(x), Phi_omega(y)).
double objective_via_magic(const GPoint& x, const GPoint& y, CirclePoint omega);

struct SearchConfig {
  int samples = 1024;
  double refine_tolerance = 1e-12;  // golden-section bracket width in angle
  double cluster_radius = 1e-6;     // arc distance merging refined maximizers
  double value_tolerance = 1e-9;    // objective agreement within a cluster
  double flatness_tolerance = 1e-12;
};

struct ExtremalResult {
  double distance = 0;
  std::vector<CirclePoint> maximizers;
  bool unique = false;
  bool constant = false;  // objective flat on T: every omega is extremal
  int samples_used = 0;
  double refined_tolerance = 0;
};

/// Global maximisation of the objective over T: uniform sampling, golden
/// section refinement of every local maximum, then clustering.
ExtremalResult cara_distance(const GPoint& x, const GPoint& y, const SearchConfig& config = {});

struct ExtremalMagic {
  CirclePoint omega;
  Moebius m;        // (m o Phi_omega)(x) = 0, (m o Phi_omega)(y) >= 0
  double distance;  // C_G(x, y)
};

/// Throws DomainError when x == y.
ExtremalMagic extremal_magic(const GPoint& x, const GPoint& y, const SearchConfig& config = {});

/// Arc distance on T, in [0, pi].
double arc_distance(CirclePoint a, CirclePoint b);

/// The commuting pair (T1(u), T2(u)) whose matrices in the basis (u1, u2) are
/// diag(s_x, s_y) and diag(p_x, p_y).
struct TupleTu {
  Eigen::Vector2cd u1;
  Eigen::Vector2cd u2;
  GPoint x;
  GPoint y;
  Eigen::Matrix2cd t1;
  Eigen::Matrix2cd t2;
  double commutation_residual = 0;
};

/// Throws DomainError if u1, u2 are not unit vectors or are parallel.
TupleTu build_tuple(const Eigen::Vector2cd& u1, const Eigen::Vector2cd& u2, const GPoint& x,
                    const GPoint& y);

/// u1 = (1, 0), u2 = (g, sqrt(1 - g^2)), so that <u1, u2> = g.
TupleTu build_tuple_for_gram(double g, const GPoint& x, const GPoint& y);

struct StcalVerdict {
  bool lhs = false;  // ||Phi_omega(T(u))|| <= 1
  bool rhs = false;  // |<u1,u2>|^2 <= 1 - rho(Phi_omega(x), Phi_omega(y))^2
  double norm = 0;
  double gram_squared = 0;
  double rho = 0;
};

StcalVerdict stcal_check(const TupleTu& t, CirclePoint omega);

/// Largest g in [0, 1) with ||Phi_omega(T(u(g)))|| <= 1, by bisection.
double stcal_threshold(const GPoint& x, const GPoint& y, CirclePoint omega, double tol = 1e-13);

/// Finds the largest Gram entry g* for which ||Phi_omega(T(u))|| <= 1 holds at
/// every one of `omega_samples` equally spaced omega (grid scan in g with
/// `gram_steps` cells, then bisection) and returns sqrt(1 - g*^2), the induced
/// estimate of C_G(x, y). Throws DomainError when x == y.
double caraform_estimate(const GPoint& x, const GPoint& y, int omega_samples, int gram_steps);

}  // namespace symbidisc
