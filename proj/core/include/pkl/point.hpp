#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pkl {

using Complex = std::complex<double>;

/// A complex evaluation point. Components are always finite; membership in
/// the unit disk is checked by the kernels that need it.
class Point {
 public:
  Point() = default;
  Point(double re, double im);
  explicit Point(Complex z) : Point(z.real(), z.imag()) {}

  double re() const noexcept { return re_; }
  double im() const noexcept { return im_; }
  Complex value() const noexcept { return {re_, im_}; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  double re_ = 0.0;
  double im_ = 0.0;
};

/// Ordered, nonempty list of points. Matrix indices follow list order.
/// Duplicates are allowed; `duplicates()` lists them for diagnostics.
class PointSet {
 public:
  explicit PointSet(std::vector<Point> points,
                    std::vector<std::string> labels = {});
  PointSet(std::initializer_list<Complex> values);

  static PointSet from_values(const std::vector<Complex>& values);

  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  std::optional<std::size_t> index_of(const Point& p) const noexcept;

  /// Index pairs (i, j), i < j, whose points coincide exactly.
  std::vector<std::pair<std::size_t, std::size_t>> duplicates() const;

  /// First `n` points (labels follow).
  PointSet prefix(std::size_t n) const;
  PointSet with_appended(const Point& p) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<Point> points_;
  std::vector<std::string> labels_;
};

}  // namespace pkl
