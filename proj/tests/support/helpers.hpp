#pragma once

#include <Eigen/Dense>

#include <cstddef>

#include "oracle.hpp"
#include "pkl/hermitian.hpp"

namespace testing_support {

inline oracle::CMatrix to_oracle(const Eigen::MatrixXcd& m) {
  oracle::CMatrix out(static_cast<std::size_t>(m.rows()),
                      std::vector<oracle::cplx>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return out;
}

inline Eigen::MatrixXcd from_oracle(const oracle::CMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

inline double oracle_min_eig(const pkl::HermitianMatrix& a) {
  return oracle::min_eigenvalue(to_oracle(a.matrix()));
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const oracle::CMatrix& b) {
  double d = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      d = std::max(d, std::abs(a(i, j) - b[static_cast<std::size_t>(i)]
                                            [static_cast<std::size_t>(j)]));
  return d;
}

}  // namespace testing_support
