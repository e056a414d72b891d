#pragma once

#include <variant>

#include "pkl/hermitian.hpp"
#include "pkl/point.hpp"

namespace pkl {

/// 1 / (1 - x conj(y)) on the unit disk.
struct Szego {
  friend bool operator==(const Szego&, const Szego&) = default;
};

/// 1 / (1 - x conj(y))^2 on the unit disk.
struct Bergman {
  friend bool operator==(const Bergman&, const Bergman&) = default;
};

/// (1 - x conj(y))^(-alpha), alpha > 0, principal branch. alpha == 1 and
/// alpha == 2 evaluate through the Szego and Bergman code paths.
struct PowerKernel {
  double alpha = 1.0;
  friend bool operator==(const PowerKernel&, const PowerKernel&) = default;
};

/// Explicit Gram table over its own point set; no domain restriction.
struct GramTable {
  HermitianMatrix matrix;
  PointSet points;
  friend bool operator==(const GramTable&, const GramTable&) = default;
};

class KernelSpec {
 public:
  using Variant = std::variant<Szego, Bergman, PowerKernel, GramTable>;

  KernelSpec() : v_(Szego{}) {}
  KernelSpec(Szego s) : v_(s) {}
  KernelSpec(Bergman b) : v_(b) {}
  KernelSpec(PowerKernel p);
  KernelSpec(GramTable t);

  static KernelSpec szego() { return Szego{}; }
  static KernelSpec bergman() { return Bergman{}; }
  static KernelSpec power(double alpha) { return PowerKernel{alpha}; }
  static KernelSpec gram_table(HermitianMatrix m, PointSet pts) {
    return GramTable{std::move(m), std::move(pts)};
  }

  const Variant& variant() const noexcept { return v_; }
  bool is_disk_kernel() const noexcept {
    return !std::holds_alternative<GramTable>(v_);
  }

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

 private:
  Variant v_;
};

Complex evaluate_kernel(const KernelSpec& spec, const Point& x,
                        const Point& y);

/// Entry (i, j) = k(x_i, x_j).
HermitianMatrix assemble_gram(const KernelSpec& spec, const PointSet& pts);

}  // namespace pkl
