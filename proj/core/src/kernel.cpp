#include "pkl/kernel.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "pkl/error.hpp"

namespace pkl {
namespace {

std::string describe(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << p.re() << ", " << p.im() << ')';
  return os.str();
}

void require_in_disk(const Point& p) {
  if (!(std::norm(p.value()) < 1.0)) {
    throw Error(ErrorCode::DomainError,
                "point " + describe(p) + " is not inside the unit disk");
  }
}

Complex szego(Complex x, Complex y) {
  return 1.0 / (1.0 - x * std::conj(y));
}

Complex bergman(Complex x, Complex y) {
  const Complex d = 1.0 - x * std::conj(y);
  return 1.0 / (d * d);
}

}  // namespace

KernelSpec::KernelSpec(PowerKernel p) : v_(p) {
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
    throw Error(ErrorCode::InvalidInput, "power kernel needs alpha > 0");
  }
}

KernelSpec::KernelSpec(GramTable t) : v_(std::move(t)) {
  const auto& table = std::get<GramTable>(v_);
  if (table.matrix.dim() != table.points.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "gram_table matrix is " + std::to_string(table.matrix.dim()) +
                    "x" + std::to_string(table.matrix.dim()) + " but has " +
                    std::to_string(table.points.size()) + " points");
  }
  if (!table.matrix.matrix().allFinite()) {
    throw Error(ErrorCode::NonFiniteEntry, "gram_table has a non-finite entry");
  }
}

Complex evaluate_kernel(const KernelSpec& spec, const Point& x,
                        const Point& y) {
  if (const auto* table = std::get_if<GramTable>(&spec.variant())) {
    const auto i = table->points.index_of(x);
    if (!i) throw Error(ErrorCode::UnknownPoint, "no table row for " + describe(x));
    const auto j = table->points.index_of(y);
    if (!j) throw Error(ErrorCode::UnknownPoint, "no table row for " + describe(y));
    return table->matrix(*i, *j);
  }

  require_in_disk(x);
  require_in_disk(y);
  const Complex xv = x.value();
  const Complex yv = y.value();
  return std::visit(
      [&](const auto& k) -> Complex {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Szego>) {
          return szego(xv, yv);
        } else if constexpr (std::is_same_v<K, Bergman>) {
          return bergman(xv, yv);
        } else if constexpr (std::is_same_v<K, PowerKernel>) {
          if (k.alpha == 1.0) return szego(xv, yv);
          if (k.alpha == 2.0) return bergman(xv, yv);
          // Re(1 - x conj(y)) > 0 inside the disk, so the principal branch
          // is continuous and k(y, x) = conj(k(x, y)).
          return std::pow(1.0 - xv * std::conj(yv), -k.alpha);
        } else {
          return Complex{};  // GramTable handled above
        }
      },
      spec.variant());
}

HermitianMatrix assemble_gram(const KernelSpec& spec, const PointSet& pts) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const Complex v = evaluate_kernel(spec, pts[static_cast<std::size_t>(i)],
                                        pts[static_cast<std::size_t>(j)]);
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return HermitianMatrix(g);
}

}  // namespace pkl
