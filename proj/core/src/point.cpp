#include "pkl/point.hpp"

#include <cmath>
#include <string>

#include "pkl/error.hpp"

namespace pkl {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::UnknownPoint: return "UnknownPoint";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::VanishingKernel: return "VanishingKernel";
    case ErrorCode::DegenerateBasePoint: return "DegenerateBasePoint";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::InfeasibleBase: return "InfeasibleBase";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
  }
  return "Unknown";
}

Point::Point(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw Error(ErrorCode::DomainError, "point has a non-finite component");
  }
}

PointSet::PointSet(std::vector<Point> points, std::vector<std::string> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  if (points_.empty()) {
    throw Error(ErrorCode::InvalidInput, "point set must be nonempty");
  }
  if (!labels_.empty() && labels_.size() != points_.size()) {
    throw Error(ErrorCode::InvalidInput,
                "label count " + std::to_string(labels_.size()) +
                    " does not match point count " +
                    std::to_string(points_.size()));
  }
}

PointSet::PointSet(std::initializer_list<Complex> values)
    : PointSet(from_values(std::vector<Complex>(values))) {}

PointSet PointSet::from_values(const std::vector<Complex>& values) {
  std::vector<Point> pts;
  pts.reserve(values.size());
  for (const auto& v : values) pts.emplace_back(v);
  return PointSet(std::move(pts));
}

std::optional<std::size_t> PointSet::index_of(const Point& p) const noexcept {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] == p) return i;
  }
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> PointSet::duplicates() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (points_[i] == points_[j]) out.emplace_back(i, j);
    }
  }
  return out;
}

PointSet PointSet::prefix(std::size_t n) const {
  if (n == 0 || n > points_.size()) {
    throw Error(ErrorCode::InvalidInput, "prefix length out of range");
  }
  std::vector<Point> pts(points_.begin(), points_.begin() + n);
  std::vector<std::string> labels;
  if (!labels_.empty()) labels.assign(labels_.begin(), labels_.begin() + n);
  return PointSet(std::move(pts), std::move(labels));
}

PointSet PointSet::with_appended(const Point& p) const {
  auto pts = points_;
  pts.push_back(p);
  auto labels = labels_;
  if (!labels.empty()) labels.emplace_back();
  return PointSet(std::move(pts), std::move(labels));
}

}  // namespace pkl
