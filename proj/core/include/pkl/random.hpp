#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "pkl/point.hpp"

namespace pkl {

/// Uniform sample from the disk |z| < radius.
template <class Rng>
Complex random_disk_value(Rng& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  return std::polar(r, theta);
}

template <class Rng>
PointSet random_disk_points(Rng& rng, std::size_t n, double radius = 0.9) {
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts.emplace_back(random_disk_value(rng, radius));
  }
  return PointSet(std::move(pts));
}

}  // namespace pkl
