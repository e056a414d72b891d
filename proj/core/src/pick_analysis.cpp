#include "pkl/pick_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pkl/error.hpp"

namespace pkl {
namespace {

struct KernelSlice {
  Complex k_zz;
  Eigen::VectorXcd k_xz;  // k(x_i, z)
  HermitianMatrix gram;   // k(x_i, x_j)
  double scale = 1.0;
};

KernelSlice slice(const KernelSpec& spec, const Point& z,
                  const PointSet& sample) {
  KernelSlice s;
  s.k_zz = evaluate_kernel(spec, z, z);
  s.gram = assemble_gram(spec, sample);
  s.k_xz.resize(static_cast<Eigen::Index>(sample.size()));
  for (std::size_t i = 0; i < sample.size(); ++i) {
    s.k_xz(static_cast<Eigen::Index>(i)) = evaluate_kernel(spec, sample[i], z);
  }
  s.scale = std::max(s.gram.scale(), std::abs(s.k_zz));
  return s;
}

}  // namespace

Complex criterion_entry(Complex k_xz, Complex k_zy, Complex k_zz,
                        Complex k_xy) {
  return 1.0 - (k_xz * k_zy) / (k_zz * k_xy);
}

CriterionReport fz_gram(const KernelSpec& spec, const Point& z,
                        const PointSet& sample, double tol) {
  const KernelSlice s = slice(spec, z, sample);
  const double cutoff = kVanishingTol * s.scale;
  if (std::abs(s.k_zz) <= cutoff) {
    throw Error(ErrorCode::VanishingKernel, "k(z, z) vanishes");
  }
  const auto n = static_cast<Eigen::Index>(sample.size());
  Eigen::MatrixXcd f(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex k_xy = s.gram.matrix()(i, j);
      if (std::abs(k_xy) <= cutoff) {
        throw Error(ErrorCode::VanishingKernel,
                    "k(x_" + std::to_string(i) + ", x_" + std::to_string(j) +
                        ") vanishes");
      }
      f(i, j) = criterion_entry(s.k_xz(i), std::conj(s.k_xz(j)), s.k_zz, k_xy);
    }
  }
  // F_z(x, z) = 0 identically; do not leave rounding residue there.
  for (Eigen::Index i = 0; i < n; ++i) {
    if (sample[static_cast<std::size_t>(i)] == z) {
      f.row(i).setZero();
      f.col(i).setZero();
    }
  }
  CriterionReport report{z, sample, HermitianMatrix(f), {}};
  report.psd = psd_check(report.gram_of_fz, tol);
  return report;
}

HermitianMatrix schur_complement_gram(const KernelSpec& spec, const Point& z,
                                      const PointSet& sample) {
  const KernelSlice s = slice(spec, z, sample);
  const double k_zz = s.k_zz.real();
  if (!(k_zz > kVanishingTol * s.scale)) {
    throw Error(ErrorCode::DegenerateBasePoint,
                "k(z, z) = " + std::to_string(k_zz) + " is not positive");
  }
  Eigen::MatrixXcd kz =
      s.gram.matrix() - (s.k_xz * s.k_xz.adjoint()) / k_zz;
  for (Eigen::Index i = 0; i < kz.rows(); ++i) {
    if (sample[static_cast<std::size_t>(i)] == z) {
      kz.row(i).setZero();
      kz.col(i).setZero();
    }
  }
  return HermitianMatrix(kz);
}

std::vector<CriterionReport> cpp_check(const KernelSpec& spec,
                                       const PointSet& base_points,
                                       const PointSet& sample, double tol) {
  std::vector<CriterionReport> reports;
  reports.reserve(base_points.size());
  for (std::size_t b = 0; b < base_points.size(); ++b) {
    try {
      reports.push_back(fz_gram(spec, base_points[b], sample, tol));
    } catch (const Error& e) {
      throw Error(e.code(), "base point #" + std::to_string(b) + ": " + e.what());
    }
  }
  return reports;
}

bool all_psd(const std::vector<CriterionReport>& reports) noexcept {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CriterionReport& r) { return r.psd.is_psd(); });
}

IrreducibilityReport irreducibility_check(const KernelSpec& spec,
                                          const PointSet& sample, double tol) {
  const HermitianMatrix g = assemble_gram(spec, sample);
  const double scale = g.scale();
  IrreducibilityReport report;
  const std::size_t n = sample.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const bool vanishes = std::abs(g(i, j)) <= kVanishingTol * scale;
      bool dependent = false;
      if (i != j) {
        const double det =
            g(i, i).real() * g(j, j).real() - std::norm(g(i, j));
        dependent = !(det > tol * scale);
      }
      if (vanishes) report.nonvanishing = false;
      if (dependent) report.independent_pairs = false;
      if (vanishes || dependent) report.offending_pairs.emplace_back(i, j);
    }
  }
  return report;
}

}  // namespace pkl
