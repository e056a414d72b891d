#include "pkl/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pkl/error.hpp"

namespace pkl {

HermitianMatrix::HermitianMatrix(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "Hermitian matrix must be square, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const Eigen::Index n = m.rows();
  m_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m_(i, i) = Complex(m(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex upper = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = upper;
      m_(j, i) = std::conj(upper);
    }
  }
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianMatrix(Eigen::MatrixXcd::Zero(n, n));
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianMatrix(Eigen::MatrixXcd::Identity(n, n));
}

double HermitianMatrix::scale() const noexcept {
  double s = 1.0;
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    s = std::max(s, std::abs(m_(i, i).real()));
  }
  return s;
}

PSDReport psd_check(const HermitianMatrix& a, double tol) {
  if (!(tol >= 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorCode::InvalidInput, "tolerance must be finite and >= 0");
  }
  if (!a.matrix().allFinite()) {
    throw Error(ErrorCode::NonFiniteEntry, "matrix has a non-finite entry");
  }
  PSDReport report;
  report.tolerance_used = tol * a.scale();
  if (a.dim() == 0) {
    report.eigenvalues.resize(0);
    return report;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonConvergence, "Hermitian eigensolver failed");
  }
  report.eigenvalues = solver.eigenvalues();
  report.min_eigenvalue = report.eigenvalues(0);
  report.witness = solver.eigenvectors().col(0);
  report.verdict = report.min_eigenvalue >= -report.tolerance_used
                       ? Verdict::psd
                       : Verdict::not_psd;
  report.numerical_rank = static_cast<std::size_t>(
      (report.eigenvalues.array() > report.tolerance_used).count());
  return report;
}

HermitianMatrix schur_product(const HermitianMatrix& a,
                              const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "schur_product of " + std::to_string(a.dim()) + "x" +
                    std::to_string(a.dim()) + " and " +
                    std::to_string(b.dim()) + "x" + std::to_string(b.dim()));
  }
  return HermitianMatrix(a.matrix().cwiseProduct(b.matrix()));
}

Eigen::MatrixXcd rank_factorization(const HermitianMatrix& a, double tol) {
  const PSDReport report = psd_check(a, tol);
  if (!report.is_psd()) {
    throw Error(ErrorCode::NotPSD,
                "cannot factor: min eigenvalue " +
                    std::to_string(report.min_eigenvalue));
  }
  const auto n = static_cast<Eigen::Index>(a.dim());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.matrix());
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();

  // Keep eigenpairs above the threshold; the rest (including small
  // negatives) are clamped to zero.
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    if (vals(k) > report.tolerance_used) kept.push_back(k);
  }
  Eigen::MatrixXcd v(n, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const Eigen::Index k = kept[c];
    v.col(static_cast<Eigen::Index>(c)) = vecs.col(k) * std::sqrt(vals(k));
  }
  return v;
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "max_abs_diff shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace pkl
