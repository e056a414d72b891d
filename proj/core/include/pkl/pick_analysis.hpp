#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pkl/hermitian.hpp"
#include "pkl/kernel.hpp"

namespace pkl {

/// Relative cutoff below which a kernel value counts as zero.
inline constexpr double kVanishingTol = 1e-14;

/// F_z(x, y) = 1 - k(x,z) k(z,y) / (k(z,z) k(x,y)) sampled on a point set.
struct CriterionReport {
  Point base_point;
  PointSet sample;
  HermitianMatrix gram_of_fz;
  PSDReport psd;
};

struct IrreducibilityReport {
  bool nonvanishing = true;
  bool independent_pairs = true;
  std::vector<std::pair<std::size_t, std::size_t>> offending_pairs;
};

/// Raw criterion entry from the four kernel values it depends on.
Complex criterion_entry(Complex k_xz, Complex k_zy, Complex k_zz,
                        Complex k_xy);

/// Throws VanishingKernel when k(z,z) or any k(x_i, x_j) is zero within
/// kVanishingTol * scale. Rows/columns of sample points equal to z are 0.
CriterionReport fz_gram(const KernelSpec& spec, const Point& z,
                        const PointSet& sample, double tol = kDefaultPsdTol);

/// k^z(x_i, x_j) = k(x_i,x_j) - k(x_i,z) k(z,x_j) / k(z,z).
/// Throws DegenerateBasePoint when k(z,z) is not positive.
HermitianMatrix schur_complement_gram(const KernelSpec& spec, const Point& z,
                                      const PointSet& sample);

/// Finite-sample necessary test of the complete Pick property: one report
/// per base point, in input order.
std::vector<CriterionReport> cpp_check(const KernelSpec& spec,
                                       const PointSet& base_points,
                                       const PointSet& sample,
                                       double tol = kDefaultPsdTol);

bool all_psd(const std::vector<CriterionReport>& reports) noexcept;

/// Diagnostic only; never throws for points in the kernel's domain.
IrreducibilityReport irreducibility_check(const KernelSpec& spec,
                                          const PointSet& sample,
                                          double tol = kDefaultPsdTol);

}  // namespace pkl
