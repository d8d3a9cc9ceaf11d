#include "symbidisc/hereditary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "symbidisc/errors.hpp"

namespace symbidisc {

namespace {

void require_index(const MultiIndex& a, int dim, const char* who) {
  if (static_cast<int>(a.size()) != dim) {
    throw DimensionError(std::string(who) + ": multi-index length " + std::to_string(a.size()) +
                         " does not match dimension " + std::to_string(dim));
  }
  if (std::any_of(a.begin(), a.end(), [](int e) { return e < 0; })) {
    throw InvalidInput(std::string(who) + ": negative exponent in multi-index");
  }
}

MultiIndex add_indices(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

bool is_zero_index(const MultiIndex& a) {
  return std::all_of(a.begin(), a.end(), [](int e) { return e == 0; });
}

Complex monomial(std::span<const Complex> x, const MultiIndex& a) {
  Complex out(1.0);
  for (std::size_t j = 0; j < a.size(); ++j)
    for (int k = 0; k < a[j]; ++k) out *= x[j];
  return out;
}

// T^alpha for a commuting tuple, memoised per multi-index.
class MonomialCache {
 public:
  explicit MonomialCache(std::span<const ComplexMatrix> t) : t_(t) {}

  const ComplexMatrix& get(const MultiIndex& a) {
    auto it = cache_.find(a);
    if (it != cache_.end()) return it->second;
    const Eigen::Index n = t_.front().rows();
    ComplexMatrix m = ComplexMatrix::Identity(n, n);
    for (std::size_t j = 0; j < a.size(); ++j)
      for (int k = 0; k < a[j]; ++k) m = m * t_[j];
    return cache_.emplace(a, std::move(m)).first->second;
  }

 private:
  std::span<const ComplexMatrix> t_;
  std::map<MultiIndex, ComplexMatrix> cache_;
};

void require_tuple(std::span<const ComplexMatrix> t, int dim, const char* who) {
  if (static_cast<int>(t.size()) != dim) {
    throw DimensionError(std::string(who) + ": tuple has " + std::to_string(t.size()) +
                         " matrices, expected " + std::to_string(dim));
  }
  if (t.empty()) throw DimensionError(std::string(who) + ": empty tuple");
  const Eigen::Index n = t.front().rows();
  for (const auto& m : t) {
    if (m.rows() != n || m.cols() != n || n == 0) {
      throw DimensionError(std::string(who) + ": tuple matrices must be square of equal size");
    }
    if (n > kMaxMatrixDim) throw DimensionError(std::string(who) + ": matrices capped at 32x32");
  }
}

}  // namespace

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(int dim) : dim_(dim) {
  if (dim < 1) throw DimensionError("Polynomial: dimension must be positive");
}

Polynomial Polynomial::constant(int dim, Complex c) {
  Polynomial f(dim);
  f.add_term(MultiIndex(static_cast<std::size_t>(dim), 0), c);
  return f;
}

Polynomial Polynomial::variable(int dim, int j) {
  Polynomial f(dim);
  MultiIndex a(static_cast<std::size_t>(dim), 0);
  a.at(static_cast<std::size_t>(j)) = 1;
  f.add_term(a, 1.0);
  return f;
}

Polynomial& Polynomial::add_term(const MultiIndex& alpha, Complex c) {
  require_index(alpha, dim_, "Polynomial::add_term");
  const Complex v = (terms_[alpha] += c);
  if (v == Complex(0)) terms_.erase(alpha);
  return *this;
}

Complex Polynomial::operator()(std::span<const Complex> x) const {
  if (static_cast<int>(x.size()) != dim_) throw DimensionError("Polynomial: point dimension");
  Complex sum(0.0);
  for (const auto& [a, c] : terms_) sum += c * monomial(x, a);
  return sum;
}

ComplexMatrix Polynomial::operator()(std::span<const ComplexMatrix> t) const {
  require_tuple(t, dim_, "Polynomial");
  MonomialCache cache(t);
  const Eigen::Index n = t.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& [a, c] : terms_) sum += c * cache.get(a);
  return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.dim_ != dim_) throw DimensionError("Polynomial: dimension mismatch");
  for (const auto& [a, c] : other.terms_) add_term(a, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.dim_ != dim_) throw DimensionError("Polynomial: dimension mismatch");
  for (const auto& [a, c] : other.terms_) add_term(a, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.dim_ != b.dim_) throw DimensionError("Polynomial: dimension mismatch");
  Polynomial out(a.dim_);
  for (const auto& [ia, ca] : a.terms_)
    for (const auto& [ib, cb] : b.terms_) out.add_term(add_indices(ia, ib), ca * cb);
  return out;
}

Polynomial operator*(Complex c, const Polynomial& a) {
  Polynomial out(a.dim_);
  for (const auto& [ia, ca] : a.terms_) out.add_term(ia, c * ca);
  return out;
}

// ------------------------------------------------------ HereditaryPolynomial

HereditaryPolynomial::HereditaryPolynomial(int dim) : dim_(dim) {
  if (dim < 1) throw DimensionError("HereditaryPolynomial: dimension must be positive");
}

HereditaryPolynomial HereditaryPolynomial::constant(int dim, Complex c) {
  HereditaryPolynomial h(dim);
  const MultiIndex zero(static_cast<std::size_t>(dim), 0);
  h.add_term(zero, zero, c);
  return h;
}

HereditaryPolynomial HereditaryPolynomial::x(int dim, int j) {
  return from_analytic(Polynomial::variable(dim, j));
}

HereditaryPolynomial HereditaryPolynomial::y(int dim, int j) {
  return vee(Polynomial::variable(dim, j));
}

HereditaryPolynomial HereditaryPolynomial::from_analytic(const Polynomial& f) {
  HereditaryPolynomial h(f.dim());
  const MultiIndex zero(static_cast<std::size_t>(f.dim()), 0);
  for (const auto& [a, c] : f.terms()) h.add_term(a, zero, c);
  return h;
}

HereditaryPolynomial HereditaryPolynomial::vee(const Polynomial& f) {
  HereditaryPolynomial h(f.dim());
  const MultiIndex zero(static_cast<std::size_t>(f.dim()), 0);
  for (const auto& [a, c] : f.terms()) h.add_term(zero, a, std::conj(c));
  return h;
}

HereditaryPolynomial& HereditaryPolynomial::add_term(const MultiIndex& alpha,
                                                     const MultiIndex& beta, Complex c) {
  require_index(alpha, dim_, "HereditaryPolynomial::add_term");
  require_index(beta, dim_, "HereditaryPolynomial::add_term");
  const Key key{alpha, beta};
  const Complex v = (terms_[key] += c);
  if (v == Complex(0)) terms_.erase(key);
  return *this;
}

bool HereditaryPolynomial::is_x_only() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return is_zero_index(t.first.second); });
}

Polynomial HereditaryPolynomial::x_part() const {
  if (!is_x_only()) throw InvalidInput("hereditary polynomial depends on y");
  Polynomial f(dim_);
  for (const auto& [key, c] : terms_) f.add_term(key.first, c);
  return f;
}

bool HereditaryPolynomial::is_hermitian_symmetric(double tol) const {
  for (const auto& [key, c] : terms_) {
    const auto it = terms_.find(Key{key.second, key.first});
    const Complex mirror = it == terms_.end() ? Complex(0) : it->second;
    if (std::abs(c - std::conj(mirror)) > tol) return false;
  }
  return true;
}

HereditaryPolynomial& HereditaryPolynomial::operator+=(const HereditaryPolynomial& other) {
  if (other.dim_ != dim_) throw DimensionError("HereditaryPolynomial: dimension mismatch");
  for (const auto& [key, c] : other.terms_) add_term(key.first, key.second, c);
  return *this;
}

HereditaryPolynomial& HereditaryPolynomial::operator-=(const HereditaryPolynomial& other) {
  if (other.dim_ != dim_) throw DimensionError("HereditaryPolynomial: dimension mismatch");
  for (const auto& [key, c] : other.terms_) add_term(key.first, key.second, -c);
  return *this;
}

HereditaryPolynomial operator*(const HereditaryPolynomial& a, const HereditaryPolynomial& b) {
  if (a.dim_ != b.dim_) throw DimensionError("HereditaryPolynomial: dimension mismatch");
  HereditaryPolynomial out(a.dim_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      out.add_term(add_indices(ka.first, kb.first), add_indices(ka.second, kb.second), ca * cb);
  return out;
}

HereditaryPolynomial operator*(Complex c, const HereditaryPolynomial& a) {
  HereditaryPolynomial out(a.dim_);
  for (const auto& [k, v] : a.terms_) out.add_term(k.first, k.second, c * v);
  return out;
}

// ------------------------------------------------------------ tuples

double commutation_residual(std::span<const ComplexMatrix> matrices) {
  double worst = 0;
  for (std::size_t i = 0; i < matrices.size(); ++i)
    for (std::size_t j = i + 1; j < matrices.size(); ++j)
      worst = std::max(worst, (matrices[i] * matrices[j] - matrices[j] * matrices[i])
                                  .cwiseAbs()
                                  .maxCoeff());
  return worst;
}

std::vector<std::vector<Complex>> joint_spectrum(std::span<const ComplexMatrix> matrices,
                                                 double tol, std::uint64_t seed) {
  require_tuple(matrices, static_cast<int>(matrices.size()), "joint_spectrum");
  const double residual = commutation_residual(matrices);
  if (residual > tol) {
    throw CommutationError("joint_spectrum: matrices do not commute (residual " +
                               std::to_string(residual) + ")",
                           residual);
  }
  const Eigen::Index n = matrices.front().rows();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  constexpr int kAttempts = 8;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    ComplexVector gamma(static_cast<Eigen::Index>(matrices.size()));
    for (auto& g : gamma) g = Complex(normal(rng), normal(rng));
    gamma /= gamma.norm();
    ComplexMatrix combo = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < matrices.size(); ++i)
      combo += gamma(static_cast<Eigen::Index>(i)) * matrices[i];

    SchurResult<double> schur;
    try {
      schur = schur_triangularize(combo, 1e-10);
    } catch (const ConvergenceError&) {
      continue;
    }
    std::vector<ComplexMatrix> triangular;
    bool ok = true;
    for (const auto& t : matrices) {
      ComplexMatrix r = schur.q.adjoint() * t * schur.q;
      const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
      double lower = 0;
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = j + 1; i < n; ++i) lower = std::max(lower, std::abs(r(i, j)));
      if (lower > 1e-9 * scale) {
        ok = false;
        break;
      }
      triangular.push_back(std::move(r));
    }
    if (!ok) continue;
    std::vector<std::vector<Complex>> out(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k)
      for (const auto& r : triangular) out[static_cast<std::size_t>(k)].push_back(r(k, k));
    return out;
  }
  throw ConvergenceError("joint_spectrum: simultaneous triangularisation failed after 8 draws");
}

double joint_spectrum_distance(const std::vector<std::vector<Complex>>& a,
                               const std::vector<std::vector<Complex>>& b) {
  if (a.size() != b.size()) throw DimensionError("joint_spectrum_distance: sizes differ");
  auto gap = [](const std::vector<Complex>& u, const std::vector<Complex>& v) {
    if (u.size() != v.size()) throw DimensionError("joint_spectrum_distance: tuple lengths differ");
    double d = 0;
    for (std::size_t i = 0; i < u.size(); ++i) d = std::max(d, std::abs(u[i] - v[i]));
    return d;
  };
  std::vector<bool> used(b.size(), false);
  double worst = 0;
  for (const auto& u : a) {
    std::size_t best = b.size();
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double g = gap(u, b[j]);
      if (g < best_gap) {
        best_gap = g;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_gap);
  }
  return worst;
}

CommutingTuple CommutingTuple::make(std::vector<ComplexMatrix> matrices, double tol,
                                    std::uint64_t seed) {
  require_tuple(matrices, static_cast<int>(matrices.size()), "CommutingTuple");
  for (const auto& m : matrices) detail::require_finite(m, "CommutingTuple");
  CommutingTuple t;
  t.commutation_residual_ = symbidisc::commutation_residual(matrices);
  if (t.commutation_residual_ >= tol) {
    throw CommutationError("CommutingTuple: matrices do not commute (residual " +
                               std::to_string(t.commutation_residual_) + ")",
                           t.commutation_residual_);
  }
  t.joint_spectrum_ = symbidisc::joint_spectrum(matrices, tol, seed);
  t.matrices_ = std::move(matrices);
  return t;
}

// ------------------------------------------------------------ evaluation

Complex hered_eval_point(const HereditaryPolynomial& h, std::span<const Complex> x,
                         std::span<const Complex> ybar) {
  if (static_cast<int>(x.size()) != h.dim() || static_cast<int>(ybar.size()) != h.dim()) {
    throw DimensionError("hered_eval_point: point dimension does not match polynomial");
  }
  Complex sum(0.0);
  for (const auto& [key, c] : h.terms()) sum += c * monomial(ybar, key.second) * monomial(x, key.first);
  return sum;
}

ComplexMatrix hered_eval_tuple(const HereditaryPolynomial& h, std::span<const ComplexMatrix> t) {
  require_tuple(t, h.dim(), "hered_eval_tuple");
  MonomialCache cache(t);
  const Eigen::Index n = t.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  // (T^*)^beta = (T^beta)^* for a commuting tuple.
  for (const auto& [key, c] : h.terms()) {
    sum += c * (cache.get(key.second).adjoint() * cache.get(key.first));
  }
  return sum;
}

ComplexMatrix hered_eval_tuple(const HereditaryPolynomial& h, const CommutingTuple& t) {
  return hered_eval_tuple(h, std::span<const ComplexMatrix>(t.matrices()));
}

HereditaryPolynomial conjugate(const Polynomial& left, const HereditaryPolynomial& h,
                               const Polynomial& right) {
  return HereditaryPolynomial::vee(left) * h * HereditaryPolynomial::from_analytic(right);
}

HereditaryPolynomial sandwich(const HereditaryPolynomial& h, const Polynomial& g) {
  return conjugate(g, h, g);
}

HereditaryPolynomial sandwich(const HereditaryPolynomial& h, const HereditaryPolynomial& g) {
  if (!g.is_x_only()) throw InvalidInput("sandwich: conjugating factor must depend on x only");
  return sandwich(h, g.x_part());
}

PositivityResult positivity(const HereditaryPolynomial& h, const CommutingTuple& t, double tol) {
  if (!h.is_hermitian_symmetric(tol)) {
    throw InvalidInput("positivity: hereditary polynomial lacks Hermitian symmetry");
  }
  const ComplexMatrix m = hered_eval_tuple(h, t);
  PositivityResult out;
  out.hermitian_residual = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (out.hermitian_residual > tol * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw InvalidInput("positivity: h(T) is not Hermitian (residual " +
                       std::to_string(out.hermitian_residual) + ")");
  }
  const ComplexMatrix sym = (m + m.adjoint()) / 2.0;
  out.min_eig = hermitian_eigenvalues(sym, tol).eigenvalues(0);
  out.psd = out.min_eig >= -tol;
  return out;
}

bool spectral_domain_check_disc(const ComplexMatrix& t) {
  const ComplexVector ev = eigenvalues(t, 1e-10);
  for (const auto& lambda : ev)
    if (!(std::abs(lambda) < 1.0)) return false;
  return operator_norm(t) <= 1.0 + 1e-12;
}

HereditaryPolynomial disc_generator() {
  return HereditaryPolynomial::constant(1, 1.0) -
         HereditaryPolynomial::y(1, 0) * HereditaryPolynomial::x(1, 0);
}

HereditaryPolynomial magic_cleared_form(CirclePoint omega) {
  const Complex w = omega.value();
  const Polynomial s = Polynomial::variable(2, 0);
  const Polynomial p = Polynomial::variable(2, 1);
  const Polynomial denom = Polynomial::constant(2, 2.0) - w * s;
  const Polynomial numer = (2.0 * w) * p - s;
  const HereditaryPolynomial one = HereditaryPolynomial::constant(2, 1.0);
  return sandwich(one, denom) - sandwich(one, numer);
}

PositivityResult magic_membership_test_G(CirclePoint omega, const ComplexMatrix& t1,
                                         const ComplexMatrix& t2, double tol) {
  const CommutingTuple pair = CommutingTuple::make({t1, t2});
  for (const auto& joint : pair.joint_spectrum()) {
    for (const auto& lambda : joint) {
      if (!(std::abs(lambda) < 1.0)) {
        throw DomainError("magic_membership_test_G: joint spectrum leaves the bidisc",
                          std::abs(lambda));
      }
    }
  }
  for (const auto* t : {&t1, &t2}) {
    const double norm = operator_norm(*t);
    if (norm > 1.0 + 1e-12) {
      throw DomainError("magic_membership_test_G: operand is not a contraction", norm);
    }
  }
  const CommutingTuple sp = CommutingTuple::make({t1 + t2, t1 * t2});
  return positivity(magic_cleared_form(omega), sp, tol);
}

Complex hered_Cd_psd_bridge(const HereditaryPolynomial& h,
                            const std::vector<std::vector<Complex>>& points,
                            std::span<const Complex> coeffs, const ComplexMatrix& basis) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (points.empty() || static_cast<Eigen::Index>(coeffs.size()) != n) {
    throw DimensionError("hered_Cd_psd_bridge: points and coefficients must have equal length");
  }
  const ComplexMatrix v = basis.size() == 0 ? ComplexMatrix::Identity(n, n) : basis;
  if (v.rows() != n || v.cols() != n) throw DimensionError("hered_Cd_psd_bridge: basis shape");
  const Eigen::PartialPivLU<ComplexMatrix> lu(v);
  const ComplexMatrix v_inv = lu.inverse();
  std::vector<ComplexMatrix> tuple;
  for (int i = 0; i < h.dim(); ++i) {
    ComplexVector diag(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& pt = points[static_cast<std::size_t>(k)];
      if (static_cast<int>(pt.size()) != h.dim()) {
        throw DimensionError("hered_Cd_psd_bridge: point dimension");
      }
      diag(k) = pt[static_cast<std::size_t>(i)];
    }
    tuple.push_back(v * diag.asDiagonal() * v_inv);
  }
  const ComplexVector c = Eigen::Map<const ComplexVector>(coeffs.data(), n);
  const ComplexVector f = v * c;
  return f.dot(hered_eval_tuple(h, tuple) * f);
}

// ------------------------------------------------------------ pullbacks

std::vector<Complex> apply_map(const PolynomialMap& alpha, std::span<const Complex> x) {
  std::vector<Complex> out;
  out.reserve(alpha.size());
  for (const auto& f : alpha) out.push_back(f(x));
  return out;
}

std::vector<ComplexMatrix> apply_map(const PolynomialMap& alpha,
                                     std::span<const ComplexMatrix> t) {
  std::vector<ComplexMatrix> out;
  out.reserve(alpha.size());
  for (const auto& f : alpha) out.push_back(f(t));
  return out;
}

Complex pullback_point(const HereditaryPolynomial& h, const PolynomialMap& alpha,
                       std::span<const Complex> x, std::span<const Complex> ybar) {
  if (static_cast<int>(alpha.size()) != h.dim()) {
    throw DimensionError("pullback_point: map codomain does not match polynomial dimension");
  }
  const std::vector<Complex> ax = apply_map(alpha, x);
  std::vector<Complex> conj_y(ybar.begin(), ybar.end());
  for (auto& v : conj_y) v = std::conj(v);
  std::vector<Complex> ay = apply_map(alpha, conj_y);
  for (auto& v : ay) v = std::conj(v);
  return hered_eval_point(h, ax, ay);
}

HereditaryPolynomial pullback(const HereditaryPolynomial& h, const PolynomialMap& alpha) {
  if (static_cast<int>(alpha.size()) != h.dim() || alpha.empty()) {
    throw DimensionError("pullback: map codomain does not match polynomial dimension");
  }
  const int q = alpha.front().dim();
  std::vector<HereditaryPolynomial> xs;
  std::vector<HereditaryPolynomial> ys;
  for (const auto& f : alpha) {
    if (f.dim() != q) throw DimensionError("pullback: inconsistent map domain");
    xs.push_back(HereditaryPolynomial::from_analytic(f));
    ys.push_back(HereditaryPolynomial::vee(f));
  }
  HereditaryPolynomial out(q);
  for (const auto& [key, c] : h.terms()) {
    HereditaryPolynomial term = HereditaryPolynomial::constant(q, c);
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      for (int k = 0; k < key.first[j]; ++k) term = term * xs[j];
      for (int k = 0; k < key.second[j]; ++k) term = term * ys[j];
    }
    out += term;
  }
  return out;
}

PolynomialMap symmetrization_map() {
  const Polynomial z = Polynomial::variable(2, 0);
  const Polynomial w = Polynomial::variable(2, 1);
  return {z + w, z * w};
}

}  // namespace symbidisc
