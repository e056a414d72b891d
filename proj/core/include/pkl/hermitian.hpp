#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>

#include "pkl/point.hpp"

namespace pkl {

/// Default relative PSD tolerance coefficient. A matrix passes when its
/// smallest eigenvalue is >= -coefficient * max(1, max |diagonal|).
inline constexpr double kDefaultPsdTol = 1e-9;

/// Dense complex Hermitian matrix. Construction symmetrizes the input as
/// (M + M*)/2 so that entry(i, j) == conj(entry(j, i)) holds bit-exactly.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const Eigen::MatrixXcd& m);

  static HermitianMatrix zero(std::size_t dim);
  static HermitianMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(m_.rows());
  }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

  /// max(1, max_i |a_ii|); the yardstick for every relative tolerance.
  double scale() const noexcept;
  Complex trace() const noexcept { return m_.trace(); }

  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  Eigen::MatrixXcd m_;
};

enum class Verdict { psd, not_psd };

struct PSDReport {
  Verdict verdict = Verdict::psd;
  double min_eigenvalue = 0.0;
  double tolerance_used = 0.0;
  Eigen::VectorXcd witness;  // unit eigenvector for min_eigenvalue
  std::size_t numerical_rank = 0;
  Eigen::VectorXd eigenvalues;  // ascending

  bool is_psd() const noexcept { return verdict == Verdict::psd; }
};

/// Eigendecomposition-based PSD certification. `tol` is the relative
/// coefficient; the absolute threshold is tol * a.scale().
PSDReport psd_check(const HermitianMatrix& a, double tol = kDefaultPsdTol);

/// Entrywise (Hadamard) product.
HermitianMatrix schur_product(const HermitianMatrix& a,
                              const HermitianMatrix& b);

/// Rows v_i of the returned N x r matrix satisfy A_ij = v_i v_j^*, with
/// r the numerical rank at `tol`. Throws NotPSD if psd_check fails.
Eigen::MatrixXcd rank_factorization(const HermitianMatrix& a,
                                    double tol = kDefaultPsdTol);

/// max_{i,j} |a_ij - b_ij|.
double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace pkl
