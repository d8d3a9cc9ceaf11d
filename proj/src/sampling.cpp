#include "symbidisc/sampling.hpp"

#include <cmath>
#include <numbers>

namespace symbidisc {

namespace {

// All exponent vectors of length dim with total degree <= degree.
void enumerate_indices(int dim, int degree, MultiIndex& current, int pos,
                       std::vector<MultiIndex>& out) {
  if (pos == dim) {
    out.push_back(current);
    return;
  }
  int used = 0;
  for (int j = 0; j < pos; ++j) used += current[static_cast<std::size_t>(j)];
  for (int e = 0; e + used <= degree; ++e) {
    current[static_cast<std::size_t>(pos)] = e;
    enumerate_indices(dim, degree, current, pos + 1, out);
  }
  current[static_cast<std::size_t>(pos)] = 0;
}

std::vector<MultiIndex> indices_up_to(int dim, int degree) {
  std::vector<MultiIndex> out;
  MultiIndex cur(static_cast<std::size_t>(dim), 0);
  enumerate_indices(dim, degree, cur, 0, out);
  return out;
}

}  // namespace

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

int Sampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Complex Sampler::normal_complex() {
  std::normal_distribution<double> n;
  const double re = n(rng_);
  const double im = n(rng_);
  return {re, im};
}

DiscPoint Sampler::disc_point(double radius) {
  const double r = radius * std::sqrt(uniform(0.0, 1.0));
  const double theta = uniform(0.0, 2.0 * std::numbers::pi);
  return DiscPoint(std::polar(r, theta));
}

CirclePoint Sampler::circle_point() {
  return CirclePoint::from_angle(uniform(0.0, 2.0 * std::numbers::pi));
}

GPoint Sampler::gpoint(double radius) {
  const DiscPoint z = disc_point(radius);
  const DiscPoint w = disc_point(radius);
  return sym(z, w);
}

Moebius Sampler::moebius(double max_center) {
  const CirclePoint w = circle_point();
  const DiscPoint a = disc_point(max_center);
  return Moebius(w, a);
}

ComplexVector Sampler::unit_vector(Eigen::Index n) {
  ComplexVector v(n);
  for (auto& e : v) e = normal_complex();
  return v / v.norm();
}

ComplexMatrix Sampler::matrix(Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal_complex();
  return m;
}

ComplexMatrix Sampler::hermitian(Eigen::Index n) {
  const ComplexMatrix a = matrix(n, n);
  return (a + a.adjoint()) / 2.0;
}

ComplexMatrix Sampler::unitary(Eigen::Index n) {
  const ComplexMatrix a = matrix(n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix q = qr.householderQ();
  return q;
}

ComplexMatrix Sampler::contraction(Eigen::Index n, double norm) {
  const ComplexMatrix a = matrix(n, n);
  return a * (norm / operator_norm(a));
}

Polynomial Sampler::polynomial(int dim, int degree, double scale) {
  Polynomial f(dim);
  for (const auto& a : indices_up_to(dim, degree)) f.add_term(a, scale * normal_complex());
  return f;
}

HereditaryPolynomial Sampler::hermitian_hereditary(int dim, int degree) {
  const auto idx = indices_up_to(dim, degree);
  HereditaryPolynomial h(dim);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i; j < idx.size(); ++j) {
      if (i == j) {
        h.add_term(idx[i], idx[i], uniform(-1.0, 1.0));
      } else {
        const Complex c = normal_complex();
        h.add_term(idx[i], idx[j], c);
        h.add_term(idx[j], idx[i], std::conj(c));
      }
    }
  }
  return h;
}

std::pair<ComplexMatrix, ComplexMatrix> Sampler::commuting_contraction_pair(Eigen::Index n) {
  ComplexMatrix base = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) base(i, i) = disc_point(0.9).value();
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) base(i, j) = 0.5 * normal_complex();
  const std::vector<ComplexMatrix> single{base};
  auto draw = [&]() {
    const Polynomial f = polynomial(1, 3);
    ComplexMatrix t = f(std::span<const ComplexMatrix>(single));
    const double target = uniform(0.3, 0.999);
    return ComplexMatrix(t * (target / operator_norm(t)));
  };
  ComplexMatrix t1 = draw();
  ComplexMatrix t2 = draw();
  return {std::move(t1), std::move(t2)};
}

}  // namespace symbidisc
