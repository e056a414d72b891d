#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pkl/hermitian.hpp"
#include "pkl/kernel.hpp"
#include "pkl/pick_analysis.hpp"

namespace pkl {

/// Entrywise identities compound one factorization, so they get a looser
/// budget than the PSD tolerance.
inline constexpr double kIdentityResidualTol = 1e-8;

/// One named assertion of the induction. PSD assertions carry a report;
/// algebraic identities carry a residual; some carry both.
struct CheckRecord {
  std::string name;
  bool passed = false;
  std::optional<PSDReport> psd;
  std::optional<double> residual;
};

/// One pass from F_{x_N} >= 0 on x_1..x_{N-1} to F_{x_{N+1}} >= 0 on
/// x_1..x_N, with every intermediate matrix kept for inspection.
struct InductionStepRecord {
  std::size_t n = 0;  // N
  PointSet points;    // x_1 .. x_{N+1}
  HermitianMatrix padded;          // A, N x N, last row/column zero
  Eigen::MatrixXcd factors;        // rows v_i, A = V V^*
  HermitianMatrix rank_one_matrix; // k_iN k_Nj / k_NN
  HermitianMatrix schur_scaler;    // k_NN / (k_iN k_Nj)
  HermitianMatrix restricted_defect;  // (1 - v_i v_j^*) k^{x_{N+1}}_ij
  CriterionReport conclusion;      // F_{x_{N+1}} on x_1..x_N
  std::vector<CheckRecord> checks;

  bool passed() const noexcept;
  /// Name of the first failing check, if any.
  std::optional<std::string> first_failure() const;
};

/// Throws HypothesisFailed when F_{x_N} on x_1..x_{N-1} is not PSD at tol,
/// VanishingKernel when a needed kernel value is zero. Checks that fail are
/// recorded, not thrown.
InductionStepRecord induction_step(const KernelSpec& spec,
                                   const PointSet& points,
                                   double tol = kDefaultPsdTol);

struct BaseCaseCheck {
  std::size_t x = 0;  // index of x
  std::size_t z = 0;  // index of z
  double value = 0.0; // F_z(x, x)
  bool passed = false;
};

struct InvalidAt {
  std::size_t step = 0;  // 0 means the base case
  std::string check;
};

struct ProofCertificate {
  KernelSpec kernel;
  PointSet ordering;
  std::vector<BaseCaseCheck> base_case;
  std::vector<InductionStepRecord> steps;
  std::optional<CriterionReport> final_check;
  std::optional<InvalidAt> invalid_at;

  bool valid() const noexcept { return !invalid_at.has_value(); }
};

/// Base case plus one induction step per prefix x_1..x_{n+1},
/// n = 2..size-1. Stops at the first failing step.
ProofCertificate necessity_certificate(const KernelSpec& spec,
                                       const PointSet& ordering,
                                       double tol = kDefaultPsdTol);

}  // namespace pkl
