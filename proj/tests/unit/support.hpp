#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <complex>
#include <vector>

#include "symbidisc/disc.hpp"
#include "symbidisc/matrixnum.hpp"

namespace testing_support {

using symbidisc::Complex;

/// Largest distance between two complex multisets after greedy nearest matching.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  EXPECT_EQ(a.size(), b.size());
  double worst = 0;
  for (const Complex& z : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](Complex u, Complex v) {
      return std::abs(u - z) < std::abs(v - z);
    });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst;
}

inline std::vector<Complex> to_vector(const symbidisc::ComplexVector& v) {
  return {v.data(), v.data() + v.size()};
}

inline double max_abs(const symbidisc::ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace testing_support
