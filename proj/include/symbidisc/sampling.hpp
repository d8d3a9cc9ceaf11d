#pragma once

// Seeded random generators for points, maps, matrices and commuting tuples.
// Identical seeds give identical streams.

#include <cstdint>
#include <random>
#include <utility>

#include "symbidisc/bidisc.hpp"
#include "symbidisc/hereditary.hpp"
#include "symbidisc/matrixnum.hpp"

namespace symbidisc {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  int integer(int lo, int hi);  // inclusive
  Complex normal_complex();

  /// Uniform by area on the disc of radius `radius`.
  DiscPoint disc_point(double radius = 0.95);
  CirclePoint circle_point();
  /// sym(z, w) of two disc points of modulus below `radius`.
  GPoint gpoint(double radius = 0.95);
  Moebius moebius(double max_center = 0.9);

  ComplexVector unit_vector(Eigen::Index n);
  ComplexMatrix matrix(Eigen::Index rows, Eigen::Index cols);
  ComplexMatrix hermitian(Eigen::Index n);
  ComplexMatrix unitary(Eigen::Index n);
  ComplexMatrix contraction(Eigen::Index n, double norm);

  /// Polynomial of total degree <= `degree` with normal coefficients of scale `scale`.
  Polynomial polynomial(int dim, int degree, double scale = 1.0);
  /// Hermitian-symmetric hereditary polynomial with bi-degree <= `degree`.
  HereditaryPolynomial hermitian_hereditary(int dim, int degree);

  /// Commuting, generally non-normal pair p(N), q(N) for N = diagonal plus a
  /// random nilpotent upper part, each rescaled to operator norm in [0.3, 0.999].
  std::pair<ComplexMatrix, ComplexMatrix> commuting_contraction_pair(Eigen::Index n);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace symbidisc
