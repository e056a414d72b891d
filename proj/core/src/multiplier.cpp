#include "pkl/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pkl/error.hpp"

namespace pkl {
namespace {

// Bisection needs a sharper PSD decision than the reporting default so the
// computed norm is not biased low by the tolerance band.
constexpr double kNormPsdTol = 1e-12;
constexpr double kMaxBracketGrowth = 1099511627776.0;  // 2^40
// Boundary samples of an extension disk lie on the singular locus of the
// augmented Pick matrix; re-verify them with a looser coefficient.
constexpr double kBoundaryVerifyTol = 1e-7;

void check_shapes(const std::vector<Eigen::MatrixXcd>& targets,
                  std::size_t expected_count) {
  if (targets.size() != expected_count) {
    throw Error(ErrorCode::ShapeMismatch,
                std::to_string(targets.size()) + " targets for " +
                    std::to_string(expected_count) + " points");
  }
  if (targets.empty()) return;
  const auto s = targets.front().rows();
  const auto t = targets.front().cols();
  if (s < 1 || t < 1) {
    throw Error(ErrorCode::ShapeMismatch, "target matrices must be at least 1x1");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].rows() != s || targets[i].cols() != t) {
      throw Error(ErrorCode::ShapeMismatch,
                  "target " + std::to_string(i) + " is " +
                      std::to_string(targets[i].rows()) + "x" +
                      std::to_string(targets[i].cols()) + ", expected " +
                      std::to_string(s) + "x" + std::to_string(t));
    }
    if (!targets[i].allFinite()) {
      throw Error(ErrorCode::NonFiniteEntry,
                  "target " + std::to_string(i) + " has a non-finite entry");
    }
  }
}

bool uses_szego_formula(const KernelSpec& spec) {
  if (std::holds_alternative<Szego>(spec.variant())) return true;
  const auto* p = std::get_if<PowerKernel>(&spec.variant());
  return p != nullptr && p->alpha == 1.0;
}

struct ExtensionPieces {
  HermitianMatrix pick;
  Eigen::VectorXcd g;  // k(z_i, z_new)
  Eigen::VectorXcd m;  // w_i k(z_i, z_new)
  double k_new = 0.0;  // k(z_new, z_new)
};

ExtensionPieces extension_pieces(const PointSet& z,
                                 const std::vector<Complex>& w,
                                 const Point& z_new, const KernelSpec& spec,
                                 const HermitianMatrix& pick) {
  ExtensionPieces p;
  p.pick = pick;
  const auto n = static_cast<Eigen::Index>(z.size());
  p.g.resize(n);
  p.m.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    p.g(i) = evaluate_kernel(spec, z[idx], z_new);
    p.m(i) = w[idx] * p.g(i);
  }
  p.k_new = evaluate_kernel(spec, z_new, z_new).real();
  return p;
}

// Augmented Pick matrix for a candidate value u at the new node.
Eigen::MatrixXcd augmented(const ExtensionPieces& p, Complex u) {
  const auto n = p.g.size();
  Eigen::MatrixXcd a(n + 1, n + 1);
  a.topLeftCorner(n, n) = p.pick.matrix();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex b = p.g(i) - p.m(i) * std::conj(u);
    a(i, n) = b;
    a(n, i) = std::conj(b);
  }
  a(n, n) = (1.0 - std::norm(u)) * p.k_new;
  return a;
}

}  // namespace

MultiplierData::MultiplierData(KernelSpec spec, PointSet points,
                               std::vector<Eigen::MatrixXcd> targets)
    : spec_(std::move(spec)),
      points_(std::move(points)),
      targets_(std::move(targets)) {
  check_shapes(targets_, points_.size());
}

MultiplierData MultiplierData::scalar(KernelSpec spec, PointSet points,
                                      const std::vector<Complex>& targets) {
  std::vector<Eigen::MatrixXcd> mats;
  mats.reserve(targets.size());
  for (const auto& w : targets) {
    mats.push_back(Eigen::MatrixXcd::Constant(1, 1, w));
  }
  return MultiplierData(std::move(spec), std::move(points), std::move(mats));
}

std::size_t MultiplierData::rows() const noexcept {
  return static_cast<std::size_t>(targets_.front().rows());
}

std::size_t MultiplierData::cols() const noexcept {
  return static_cast<std::size_t>(targets_.front().cols());
}

MultiplierData MultiplierData::scaled(Complex lambda) const {
  auto t = targets_;
  for (auto& m : t) m *= lambda;
  return MultiplierData(spec_, points_, std::move(t));
}

HermitianMatrix defect_gram(const std::vector<Eigen::MatrixXcd>& targets,
                            const HermitianMatrix& gram, double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::InvalidInput, "defect scale c must be finite and >= 0");
  }
  check_shapes(targets, gram.dim());
  const Eigen::Index n = static_cast<Eigen::Index>(gram.dim());
  const Eigen::Index s = targets.front().rows();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(s, s);
  Eigen::MatrixXcd d(n * s, n * s);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& wi = targets[static_cast<std::size_t>(i)];
      const auto& wj = targets[static_cast<std::size_t>(j)];
      d.block(i * s, j * s, s, s) =
          (c * c * eye - wi * wj.adjoint()) * gram.matrix()(i, j);
    }
  }
  return HermitianMatrix(d);
}

HermitianMatrix defect_gram(const MultiplierData& data, double c) {
  return defect_gram(data.targets(), assemble_gram(data.spec(), data.points()),
                     c);
}

PSDReport is_contractive_multiplier(const MultiplierData& data, double tol) {
  return psd_check(defect_gram(data, 1.0), tol);
}

double multiplier_norm(const MultiplierData& data, double tol) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "multiplier_norm needs tol > 0");
  }
  const HermitianMatrix gram = assemble_gram(data.spec(), data.points());
  const auto feasible = [&](double c2) {
    return psd_check(defect_gram(data.targets(), gram, std::sqrt(c2)),
                     kNormPsdTol)
        .is_psd();
  };
  if (feasible(0.0)) return 0.0;

  double sigma = 0.0;
  for (const auto& w : data.targets()) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(w);
    sigma = std::max(sigma, svd.singularValues()(0));
  }
  // W = 0 makes the zero-scale defect vanish, which is PSD.
  double hi = sigma;
  double growth = 1.0;
  while (!feasible(hi * hi)) {
    growth *= 2.0;
    hi *= 2.0;
    if (growth > kMaxBracketGrowth) {
      throw Error(ErrorCode::NonConvergence,
                  "defect never became PSD; is the Gram matrix PSD?");
    }
  }

  double lo2 = 0.0;
  double hi2 = hi * hi;
  for (int iter = 0; iter < 400; ++iter) {
    if (std::sqrt(hi2) - std::sqrt(lo2) <= 0.125 * tol) break;
    const double mid = 0.5 * (lo2 + hi2);
    if (mid <= lo2 || mid >= hi2) break;
    (feasible(mid) ? hi2 : lo2) = mid;
  }
  return std::sqrt(hi2);
}

DefectInvariance defect_invariance_check(const MultiplierData& data,
                                         const Point& z, double tol) {
  DefectInvariance out;
  out.ambient = is_contractive_multiplier(data, tol);
  if (!out.ambient.is_psd()) {
    throw Error(ErrorCode::PreconditionFailed,
                "ambient defect is not PSD (min eigenvalue " +
                    std::to_string(out.ambient.min_eigenvalue) + ")");
  }
  const HermitianMatrix kz = schur_complement_gram(data.spec(), z, data.points());
  out.restricted = psd_check(defect_gram(data.targets(), kz, 1.0), tol);
  return out;
}

PickReport pick_feasible(const PointSet& z, const std::vector<Complex>& w,
                         const KernelSpec& spec, double tol) {
  if (w.size() != z.size()) {
    throw Error(ErrorCode::ShapeMismatch,
                std::to_string(w.size()) + " targets for " +
                    std::to_string(z.size()) + " nodes");
  }
  for (const auto& v : w) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::NonFiniteEntry, "non-finite interpolation target");
    }
  }
  const HermitianMatrix g = assemble_gram(spec, z);
  const auto n = static_cast<Eigen::Index>(z.size());
  Eigen::MatrixXcd product(n, n);
  Eigen::MatrixXcd quotient(n, n);
  bool vanishing = false;
  const bool szego_form = uses_szego_formula(spec);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      const Complex num = 1.0 - w[ui] * std::conj(w[uj]);
      const Complex k = g.matrix()(i, j);
      product(i, j) = num * k;
      if (std::abs(k) <= kVanishingTol * g.scale()) {
        vanishing = true;
        continue;
      }
      const Complex den = szego_form
                              ? 1.0 - z[ui].value() * std::conj(z[uj].value())
                              : 1.0 / k;
      quotient(i, j) = num / den;
    }
  }
  PickReport report;
  report.product_matrix = HermitianMatrix(product);
  report.psd = psd_check(report.product_matrix, tol);
  if (!vanishing) {
    report.quotient_matrix = HermitianMatrix(quotient);
    report.quotient_psd = psd_check(*report.quotient_matrix, tol);
  }
  return report;
}

ExtensionDisk one_point_extension_disk(const PointSet& z,
                                       const std::vector<Complex>& w,
                                       const Point& z_new,
                                       const KernelSpec& spec, double tol) {
  const PickReport base = pick_feasible(z, w, spec, tol);
  if (!base.feasible()) {
    throw Error(ErrorCode::InfeasibleBase,
                "base Pick matrix is not PSD (min eigenvalue " +
                    std::to_string(base.psd.min_eigenvalue) + ")");
  }
  const ExtensionPieces p =
      extension_pieces(z, w, z_new, spec, base.product_matrix);

  // Pseudo-inverse and null space of the base Pick matrix. A strictly
  // feasible base has an empty null space and P^+ = P^{-1}.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(p.pick.matrix());
  const double thresh = base.psd.tolerance_used;
  const auto n = p.g.size();
  Eigen::MatrixXcd pinv = Eigen::MatrixXcd::Zero(n, n);
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues()(k);
    const Eigen::VectorXcd v = eig.eigenvectors().col(k);
    if (lambda > thresh) {
      pinv += v * v.adjoint() / lambda;
    } else {
      null_cols.push_back(k);
    }
  }

  // Feasibility of u reads q(u) = gamma + 2 Re(u beta) - alpha |u|^2 >= 0
  // together with b(u) = g - m conj(u) lying in the range of P.
  const double alpha = p.k_new + (p.m.adjoint() * pinv * p.m)(0, 0).real();
  const Complex beta = (p.m.adjoint() * pinv * p.g)(0, 0);
  const double gamma = p.k_new - (p.g.adjoint() * pinv * p.g)(0, 0).real();
  const auto q = [&](Complex u) {
    return gamma + 2.0 * (u * beta).real() - alpha * std::norm(u);
  };
  const double slack = 1e-7 * std::max({1.0, p.k_new, base.product_matrix.scale()});

  ExtensionDisk disk;
  disk.center = std::conj(beta) / alpha;
  const double r2 = gamma / alpha + std::norm(disk.center);
  disk.radius = r2 > 0.0 ? std::sqrt(r2) : 0.0;
  if (r2 < -slack / alpha) disk.empty = true;

  if (!null_cols.empty()) {
    Eigen::MatrixXcd null_basis(n, static_cast<Eigen::Index>(null_cols.size()));
    for (std::size_t c = 0; c < null_cols.size(); ++c) {
      null_basis.col(static_cast<Eigen::Index>(c)) =
          eig.eigenvectors().col(null_cols[c]);
    }
    const Eigen::VectorXcd na = null_basis.adjoint() * p.g;
    const Eigen::VectorXcd nm = null_basis.adjoint() * p.m;
    const double eps = 1e-6 * std::max({1.0, p.g.norm(), p.m.norm()});
    if (nm.norm() > eps) {
      // The range condition pins conj(u) by least squares.
      const Complex conj_u = nm.dot(na) / nm.squaredNorm();
      const Complex u = std::conj(conj_u);
      if ((na - nm * conj_u).norm() <= eps && q(u) >= -slack) {
        disk = ExtensionDisk{false, u, 0.0, false};
      } else {
        disk = ExtensionDisk{true, {0.0, 0.0}, 0.0, false};
      }
    } else if (na.norm() > eps) {
      disk = ExtensionDisk{true, {0.0, 0.0}, 0.0, false};
    }
  }
  if (disk.empty) {
    disk.center = {0.0, 0.0};
    disk.radius = 0.0;
    return disk;
  }

  const PointSet z_aug = z.with_appended(z_new);
  auto w_aug = w;
  w_aug.push_back(disk.center);
  disk.boundary_verified = true;
  const int samples = disk.radius > 0.0 ? 8 : 1;
  for (int s = 0; s < samples; ++s) {
    const double theta = 2.0 * std::numbers::pi * s / samples;
    w_aug.back() = disk.center + std::polar(disk.radius, theta);
    if (!pick_feasible(z_aug, w_aug, spec, kBoundaryVerifyTol).feasible()) {
      disk.boundary_verified = false;
    }
  }
  return disk;
}

GridScanResult grid_scan_extension(const PointSet& z,
                                   const std::vector<Complex>& w,
                                   const Point& z_new, const KernelSpec& spec,
                                   double resolution, double tol) {
  if (!(resolution > 0.0) || resolution > 1.0) {
    throw Error(ErrorCode::InvalidInput, "grid resolution must be in (0, 1]");
  }
  const PickReport base = pick_feasible(z, w, spec, tol);
  const ExtensionPieces p =
      extension_pieces(z, w, z_new, spec, base.product_matrix);

  // The new diagonal entry (1 - |u|^2) k(z_new, z_new) forces |u| <= 1.
  const auto steps = static_cast<long>(std::llround(2.0 / resolution));
  GridScanResult out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig;
  for (long iy = 0; iy <= steps; ++iy) {
    const double y = -1.0 + static_cast<double>(iy) * resolution;
    for (long ix = 0; ix <= steps; ++ix) {
      const double x = -1.0 + static_cast<double>(ix) * resolution;
      const Complex u{x, y};
      if (std::norm(u) > 1.0) continue;
      const HermitianMatrix a(augmented(p, u));
      eig.compute(a.matrix(), Eigen::EigenvaluesOnly);
      if (eig.eigenvalues()(0) < -tol * a.scale()) continue;
      if (out.feasible_count == 0) {
        out.min_re = out.max_re = x;
        out.min_im = out.max_im = y;
      } else {
        out.min_re = std::min(out.min_re, x);
        out.max_re = std::max(out.max_re, x);
        out.min_im = std::min(out.min_im, y);
        out.max_im = std::max(out.max_im, y);
      }
      ++out.feasible_count;
    }
  }
  return out;
}

}  // namespace pkl
