#pragma once

// Hereditary polynomials h(x, y) = sum c_{ab} y^b x^a and their functional
// calculus on commuting matrix tuples, h(T) = sum c_{ab} (T^*)^b T^a, with
// every starred factor to the left.

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "symbidisc/disc.hpp"
#include "symbidisc/matrixnum.hpp"

namespace symbidisc {

using MultiIndex = std::vector<int>;

/// Analytic polynomial in d variables.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Complex>;

  explicit Polynomial(int dim = 1);

  static Polynomial constant(int dim, Complex c);
  static Polynomial variable(int dim, int j);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }

  /// Adds c to the coefficient of x^alpha; zero coefficients are dropped.
  Polynomial& add_term(const MultiIndex& alpha, Complex c);

  Complex operator()(std::span<const Complex> x) const;

  /// f(T) for a commuting tuple (the order of factors is immaterial).
  ComplexMatrix operator()(std::span<const ComplexMatrix> t) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex c, const Polynomial& a);

 private:
  int dim_;
  Terms terms_;
};

/// A polynomial map C^q -> C^d, one Polynomial per output coordinate.
using PolynomialMap = std::vector<Polynomial>;

class HereditaryPolynomial {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;  // (alpha on x, beta on y)
  using Terms = std::map<Key, Complex>;

  explicit HereditaryPolynomial(int dim = 1);

  static HereditaryPolynomial constant(int dim, Complex c);
  static HereditaryPolynomial x(int dim, int j);
  static HereditaryPolynomial y(int dim, int j);
  /// f(x) viewed as a hereditary polynomial.
  static HereditaryPolynomial from_analytic(const Polynomial& f);
  /// f^vee(y) = conj(f(conj y)).
  static HereditaryPolynomial vee(const Polynomial& f);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }

  HereditaryPolynomial& add_term(const MultiIndex& alpha, const MultiIndex& beta, Complex c);

  /// True when every beta is zero.
  bool is_x_only() const;
  /// Throws InvalidInput unless x-only.
  Polynomial x_part() const;

  /// max |c_{ab} - conj(c_{ba})| <= tol.
  bool is_hermitian_symmetric(double tol) const;

  HereditaryPolynomial& operator+=(const HereditaryPolynomial& other);
  HereditaryPolynomial& operator-=(const HereditaryPolynomial& other);
  friend HereditaryPolynomial operator+(HereditaryPolynomial a, const HereditaryPolynomial& b) {
    return a += b;
  }
  friend HereditaryPolynomial operator-(HereditaryPolynomial a, const HereditaryPolynomial& b) {
    return a -= b;
  }
  /// Pointwise product.
  friend HereditaryPolynomial operator*(const HereditaryPolynomial& a,
                                        const HereditaryPolynomial& b);
  friend HereditaryPolynomial operator*(Complex c, const HereditaryPolynomial& a);

 private:
  int dim_;
  Terms terms_;
};

/// A commuting d-tuple of n x n matrices together with its joint spectrum.
class CommutingTuple {
 public:
  /// Validates shapes and pairwise commutation (residual < tol), then computes
  /// the joint spectrum. Throws DimensionError / CommutationError.
  static CommutingTuple make(std::vector<ComplexMatrix> matrices, double tol = 1e-10,
                             std::uint64_t seed = 0x5eed);

  int dim() const { return static_cast<int>(matrices_.size()); }
  Eigen::Index size() const { return matrices_.front().rows(); }
  const std::vector<ComplexMatrix>& matrices() const { return matrices_; }
  double commutation_residual() const { return commutation_residual_; }
  const std::vector<std::vector<Complex>>& joint_spectrum() const { return joint_spectrum_; }

 private:
  std::vector<ComplexMatrix> matrices_;
  double commutation_residual_ = 0;
  std::vector<std::vector<Complex>> joint_spectrum_;
};

/// max_{i,j} |T_i T_j - T_j T_i|_max.
double commutation_residual(std::span<const ComplexMatrix> matrices);

/// Joint eigenvalues by Schur triangularisation of a random combination
/// sum gamma_i T_i (gamma uniform on the unit sphere, up to 8 draws); one
/// d-tuple per diagonal position.
std::vector<std::vector<Complex>> joint_spectrum(std::span<const ComplexMatrix> matrices,
                                                 double tol = 1e-10,
                                                 std::uint64_t seed = 0x5eed);

/// Matching distance between two joint spectra of equal length: each tuple of
/// `a` is greedily paired with its nearest unused tuple of `b`; returns the
/// largest paired max-coordinate distance.
double joint_spectrum_distance(const std::vector<std::vector<Complex>>& a,
                               const std::vector<std::vector<Complex>>& b);

/// h(x, ybar) = sum c_{ab} ybar^b x^a, ybar being the point of the conjugate domain.
Complex hered_eval_point(const HereditaryPolynomial& h, std::span<const Complex> x,
                         std::span<const Complex> ybar);

ComplexMatrix hered_eval_tuple(const HereditaryPolynomial& h, std::span<const ComplexMatrix> t);
ComplexMatrix hered_eval_tuple(const HereditaryPolynomial& h, const CommutingTuple& t);

/// left^vee . h . right, i.e. conj(left(conj y)) h(x, y) right(x).
HereditaryPolynomial conjugate(const Polynomial& left, const HereditaryPolynomial& h,
                               const Polynomial& right);

/// g^vee . h . g.
HereditaryPolynomial sandwich(const HereditaryPolynomial& h, const Polynomial& g);
/// Same, with g given as a hereditary polynomial; throws InvalidInput unless x-only.
HereditaryPolynomial sandwich(const HereditaryPolynomial& h, const HereditaryPolynomial& g);

struct PositivityResult {
  bool psd = false;
  double min_eig = 0;
  double hermitian_residual = 0;
};

/// min eigenvalue of h(T). Throws InvalidInput when h lacks Hermitian symmetry
/// or h(T) is not Hermitian within tol.
PositivityResult positivity(const HereditaryPolynomial& h, const CommutingTuple& t, double tol);

/// sigma(T) in D and ||T|| <= 1 + 1e-12.
bool spectral_domain_check_disc(const ComplexMatrix& t);

/// h0(x, y) = 1 - y x on the disc.
HereditaryPolynomial disc_generator();

/// The cleared-denominator form of 1 - Phi_omega^vee Phi_omega on G in the
/// coordinates (s, p):
///   q = (2 - omega s)^vee (2 - omega s) - (2 omega p - s)^vee (2 omega p - s).
HereditaryPolynomial magic_cleared_form(CirclePoint omega);

/// Positivity of q(S, P) for S = T1 + T2, P = T1 T2. Throws CommutationError
/// or DomainError when the pair is not a commuting pair of contractions with
/// joint spectrum in D^2.
PositivityResult magic_membership_test_G(CirclePoint omega, const ComplexMatrix& t1,
                                         const ComplexMatrix& t2, double tol);

/// <h(T) f, f> for T_i = V diag(lambda^i_1, ..., lambda^i_N) V^{-1} and
/// f = V c, which equals sum_{i,j} c_i conj(c_j) h(lambda_i, conj lambda_j)
/// <v_i, v_j>. With V = I (the default) T is the diagonal tuple.
Complex hered_Cd_psd_bridge(const HereditaryPolynomial& h,
                            const std::vector<std::vector<Complex>>& points,
                            std::span<const Complex> coeffs,
                            const ComplexMatrix& basis = ComplexMatrix());

/// alpha(x) for a polynomial map.
std::vector<Complex> apply_map(const PolynomialMap& alpha, std::span<const Complex> x);
/// alpha(T) by the polynomial calculus.
std::vector<ComplexMatrix> apply_map(const PolynomialMap& alpha, std::span<const ComplexMatrix> t);

/// h(alpha(x), alpha^vee(ybar)) with alpha^vee(z) = conj(alpha(conj z)).
Complex pullback_point(const HereditaryPolynomial& h, const PolynomialMap& alpha,
                       std::span<const Complex> x, std::span<const Complex> ybar);

/// alpha^# h = h o (alpha x alpha^vee) as a hereditary polynomial in q variables.
HereditaryPolynomial pullback(const HereditaryPolynomial& h, const PolynomialMap& alpha);

/// pi(z, w) = (z + w, z w).
PolynomialMap symmetrization_map();

}  // namespace symbidisc
