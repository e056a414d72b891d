#include "pkl/proof_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pkl/error.hpp"

namespace pkl {
namespace {

constexpr double kZeroPaddingTol = 1e-12;
constexpr double kScalerInverseTol = 1e-10;

CheckRecord psd_record(std::string name, PSDReport report,
                       std::optional<std::size_t> required_rank = {}) {
  CheckRecord c;
  c.name = std::move(name);
  c.passed = report.is_psd() &&
             (!required_rank || report.numerical_rank == *required_rank);
  c.psd = std::move(report);
  return c;
}

CheckRecord residual_record(std::string name, double residual, double bound) {
  CheckRecord c;
  c.name = std::move(name);
  c.residual = residual;
  c.passed = residual <= bound;
  return c;
}

// 1 - v_i v_j^*, entrywise.
Eigen::MatrixXcd one_minus_gram(const Eigen::MatrixXcd& v) {
  const auto n = v.rows();
  return Eigen::MatrixXcd::Ones(n, n) - v * v.adjoint();
}

}  // namespace

bool InductionStepRecord::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.passed; });
}

std::optional<std::string> InductionStepRecord::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return c.name;
  }
  return std::nullopt;
}

InductionStepRecord induction_step(const KernelSpec& spec,
                                   const PointSet& points, double tol) {
  if (points.size() < 3) {
    throw Error(ErrorCode::InvalidInput,
                "induction step needs at least 3 points (N >= 2)");
  }
  const std::size_t n = points.size() - 1;
  const auto ni = static_cast<Eigen::Index>(n);
  const Eigen::Index last = ni - 1;  // index of x_N

  const HermitianMatrix gram_all = assemble_gram(spec, points);
  const Eigen::MatrixXcd& k = gram_all.matrix();
  const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < k.rows(); ++i) {
    for (Eigen::Index j = 0; j < k.cols(); ++j) {
      if (std::abs(k(i, j)) <= kVanishingTol * scale) {
        throw Error(ErrorCode::VanishingKernel,
                    "k(x_" + std::to_string(i + 1) + ", x_" +
                        std::to_string(j + 1) + ") vanishes");
      }
    }
  }

  const PointSet first = points.prefix(n);
  const CriterionReport hypothesis =
      fz_gram(spec, points[n - 1], points.prefix(n - 1), tol);
  if (!hypothesis.psd.is_psd()) {
    throw Error(ErrorCode::HypothesisFailed,
                "F_{x_N} on x_1..x_{N-1} is not PSD (min eigenvalue " +
                    std::to_string(hypothesis.psd.min_eigenvalue) + ")");
  }

  InductionStepRecord rec{n,
                          points,
                          {},
                          {},
                          {},
                          {},
                          {},
                          CriterionReport{points[n], first, {}, {}},
                          {}};
  rec.checks.push_back(psd_record("hypothesis", hypothesis.psd));

  // (1) zero-pad: F_{x_N}(x_i, x_N) = 0, measured on the raw formula.
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(ni, ni);
  a.topLeftCorner(last, last) = hypothesis.gram_of_fz.matrix();
  rec.padded = HermitianMatrix(a);
  double pad_residual = 0.0;
  for (Eigen::Index i = 0; i < ni; ++i) {
    pad_residual = std::max(
        pad_residual,
        std::abs(criterion_entry(k(i, last), k(last, last), k(last, last),
                                 k(i, last))));
  }
  auto pad = residual_record("zero_padding", pad_residual,
                             kZeroPaddingTol * scale);
  pad.psd = psd_check(rec.padded, tol);
  pad.passed = pad.passed && pad.psd->is_psd();
  rec.checks.push_back(std::move(pad));

  // (2) A = V V^*.
  rec.factors = rank_factorization(rec.padded, tol);
  rec.checks.push_back(residual_record(
      "factorization",
      max_abs_diff(rec.factors * rec.factors.adjoint(), rec.padded.matrix()),
      kIdentityResidualTol * rec.padded.scale()));

  // (3) (1 - v_i v_j^*) k_ij = k_iN k_Nj / k_NN, rank one and PSD.
  const Eigen::MatrixXcd one_minus = one_minus_gram(rec.factors);
  const Eigen::MatrixXcd k_first = k.topLeftCorner(ni, ni);
  const Eigen::VectorXcd k_col = k.col(last).head(ni);  // k_iN
  const Complex k_nn = k(last, last);
  rec.rank_one_matrix = HermitianMatrix(k_col * k_col.adjoint() / k_nn);
  rec.checks.push_back(residual_record(
      "rank_one_identity",
      max_abs_diff(one_minus.cwiseProduct(k_first), rec.rank_one_matrix.matrix()),
      kIdentityResidualTol * scale));
  rec.checks.push_back(
      psd_record("rank_one_psd", psd_check(rec.rank_one_matrix, tol), 1));

  // (4) the defect over k^{x_{N+1}} of the values v_i.
  const HermitianMatrix kz = schur_complement_gram(spec, points[n], first);
  rec.restricted_defect = HermitianMatrix(one_minus.cwiseProduct(kz.matrix()));
  rec.checks.push_back(
      psd_record("restricted_defect", psd_check(rec.restricted_defect, tol)));

  // (5) it equals (k_iN k_Nj / k_NN) F_{x_{N+1}}(x_i, x_j).
  rec.conclusion = fz_gram(spec, points[n], first, tol);
  rec.checks.push_back(residual_record(
      "restricted_identity",
      max_abs_diff(rec.restricted_defect.matrix(),
                   rec.rank_one_matrix.matrix().cwiseProduct(
                       rec.conclusion.gram_of_fz.matrix())),
      kIdentityResidualTol * scale));

  // (6) k_NN / (k_iN k_Nj) is rank one and PSD, the entrywise inverse of (3).
  const Eigen::VectorXcd inv_col = k_col.cwiseInverse();
  rec.schur_scaler = HermitianMatrix(inv_col * inv_col.adjoint() * k_nn);
  rec.checks.push_back(
      psd_record("schur_scaler_psd", psd_check(rec.schur_scaler, tol), 1));
  rec.checks.push_back(residual_record(
      "scaler_inverse",
      max_abs_diff(rec.rank_one_matrix.matrix().cwiseProduct(
                       rec.schur_scaler.matrix()),
                   Eigen::MatrixXcd::Ones(ni, ni)),
      kScalerInverseTol));

  // (7) Schur product recovers F_{x_{N+1}}; it is PSD.
  const HermitianMatrix product = schur_product(rec.schur_scaler, rec.restricted_defect);
  auto prod = residual_record(
      "schur_product",
      max_abs_diff(product.matrix(), rec.conclusion.gram_of_fz.matrix()),
      kIdentityResidualTol * scale);
  prod.psd = psd_check(product, tol);
  prod.passed = prod.passed && prod.psd->is_psd();
  rec.checks.push_back(std::move(prod));
  rec.checks.push_back(psd_record("conclusion", rec.conclusion.psd));
  return rec;
}

ProofCertificate necessity_certificate(const KernelSpec& spec,
                                       const PointSet& ordering, double tol) {
  if (ordering.size() < 3) {
    throw Error(ErrorCode::InvalidInput, "ordering needs at least 3 points");
  }
  ProofCertificate cert{spec, ordering, {}, {}, std::nullopt, std::nullopt};

  // Base case: F_z(x, x) = 1 - |k(x,z)|^2 / (k(x,x) k(z,z)) >= 0.
  const HermitianMatrix g = assemble_gram(spec, ordering);
  for (std::size_t x = 0; x < ordering.size(); ++x) {
    for (std::size_t z = 0; z < ordering.size(); ++z) {
      const double denom = g(x, x).real() * g(z, z).real();
      if (!(std::abs(denom) > kVanishingTol * g.scale() * g.scale())) {
        throw Error(ErrorCode::VanishingKernel,
                    "k(x_" + std::to_string(x + 1) + ", x_" +
                        std::to_string(x + 1) + ") vanishes");
      }
      const double value = 1.0 - std::norm(g(x, z)) / denom;
      cert.base_case.push_back({x, z, value, value >= -tol});
      if (value < -tol && !cert.invalid_at) {
        cert.invalid_at = InvalidAt{0, "base_case"};
      }
    }
  }
  if (cert.invalid_at) return cert;

  for (std::size_t n = 2; n + 1 <= ordering.size(); ++n) {
    try {
      cert.steps.push_back(induction_step(spec, ordering.prefix(n + 1), tol));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::HypothesisFailed) {
        cert.invalid_at = InvalidAt{n, "hypothesis"};
        return cert;
      }
      throw Error(e.code(), "step " + std::to_string(n) + ": " + e.what());
    }
    if (auto failure = cert.steps.back().first_failure()) {
      cert.invalid_at = InvalidAt{n, *failure};
      return cert;
    }
  }

  const std::size_t m = ordering.size();
  cert.final_check = fz_gram(spec, ordering[m - 1], ordering.prefix(m - 1), tol);
  if (!cert.final_check->psd.is_psd()) {
    cert.invalid_at = InvalidAt{m - 1, "final_cross_check"};
  }
  return cert;
}

}  // namespace pkl
