#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pkl/hermitian.hpp"
#include "pkl/kernel.hpp"
#include "pkl/pick_analysis.hpp"

namespace pkl {

/// Values W_i (each s x t) of a matrix-valued function on a finite set.
class MultiplierData {
 public:
  MultiplierData(KernelSpec spec, PointSet points,
                 std::vector<Eigen::MatrixXcd> targets);

  /// Scalar (s = t = 1) targets.
  static MultiplierData scalar(KernelSpec spec, PointSet points,
                               const std::vector<Complex>& targets);

  const KernelSpec& spec() const noexcept { return spec_; }
  const PointSet& points() const noexcept { return points_; }
  const std::vector<Eigen::MatrixXcd>& targets() const noexcept {
    return targets_;
  }
  std::size_t rows() const noexcept;  // s
  std::size_t cols() const noexcept;  // t

  MultiplierData scaled(Complex lambda) const;

 private:
  KernelSpec spec_;
  PointSet points_;
  std::vector<Eigen::MatrixXcd> targets_;
};

struct ExtensionDisk {
  bool empty = false;
  Complex center{0.0, 0.0};
  double radius = 0.0;
  // Boundary samples re-checked through pick_feasible.
  bool boundary_verified = false;
};

struct PickReport {
  PSDReport psd;  // product form, the verdict of record
  HermitianMatrix product_matrix;
  std::optional<HermitianMatrix> quotient_matrix;
  std::optional<PSDReport> quotient_psd;

  bool feasible() const noexcept { return psd.is_psd(); }
  bool forms_agree() const noexcept {
    return !quotient_psd || quotient_psd->verdict == psd.verdict;
  }
};

struct DefectInvariance {
  PSDReport ambient;     // defect over k
  PSDReport restricted;  // defect over k^z
};

/// Block (i, j) = (c^2 I_s - W_i W_j^*) * gram(i, j).
HermitianMatrix defect_gram(const std::vector<Eigen::MatrixXcd>& targets,
                            const HermitianMatrix& gram, double c);
HermitianMatrix defect_gram(const MultiplierData& data, double c);

PSDReport is_contractive_multiplier(const MultiplierData& data,
                                    double tol = kDefaultPsdTol);

inline constexpr double kDefaultNormTol = 1e-8;

/// Least c >= 0 with defect_gram(data, c) PSD, to within +-tol.
double multiplier_norm(const MultiplierData& data,
                       double tol = kDefaultNormTol);

/// Throws PreconditionFailed when the ambient defect is not PSD.
DefectInvariance defect_invariance_check(const MultiplierData& data,
                                         const Point& z,
                                         double tol = kDefaultPsdTol);

/// Pick matrix (1 - w_i conj(w_j)) k(z_i, z_j), plus the quotient form
/// (1 - w_i conj(w_j)) / k(z_i, z_j)^{-1} when the Gram never vanishes.
PickReport pick_feasible(const PointSet& z, const std::vector<Complex>& w,
                         const KernelSpec& spec = KernelSpec::szego(),
                         double tol = kDefaultPsdTol);

/// The set of w_new keeping the data feasible after adding z_new.
/// Throws InfeasibleBase when the base data fails pick_feasible.
ExtensionDisk one_point_extension_disk(
    const PointSet& z, const std::vector<Complex>& w, const Point& z_new,
    const KernelSpec& spec = KernelSpec::szego(), double tol = kDefaultPsdTol);

/// Brute-force companion of one_point_extension_disk: scan w_new over a
/// square grid of spacing `resolution` and summarize the feasible cells.
struct GridScanResult {
  std::size_t feasible_count = 0;
  double min_re = 0.0, max_re = 0.0, min_im = 0.0, max_im = 0.0;
  Complex center() const noexcept {
    return {0.5 * (min_re + max_re), 0.5 * (min_im + max_im)};
  }
  double radius() const noexcept {
    return 0.25 * ((max_re - min_re) + (max_im - min_im));
  }
};

GridScanResult grid_scan_extension(const PointSet& z,
                                   const std::vector<Complex>& w,
                                   const Point& z_new, const KernelSpec& spec,
                                   double resolution,
                                   double tol = kDefaultPsdTol);

}  // namespace pkl
