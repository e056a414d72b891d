#pragma once

#include <random>
#include <vector>

#include "pkl/multiplier.hpp"
#include "pkl/random.hpp"

namespace testing_support {

/// Random targets shrunk geometrically until the ambient defect is PSD.
template <class Rng>
pkl::MultiplierData random_contractive(Rng& rng, const pkl::KernelSpec& spec,
                                       std::size_t n, Eigen::Index s,
                                       Eigen::Index t, double radius = 0.9) {
  std::normal_distribution<double> nd;
  const pkl::PointSet pts = pkl::random_disk_points(rng, n, radius);
  std::vector<Eigen::MatrixXcd> targets;
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::MatrixXcd w(s, t);
    for (Eigen::Index r = 0; r < s; ++r)
      for (Eigen::Index c = 0; c < t; ++c) w(r, c) = {nd(rng), nd(rng)};
    targets.push_back(w);
  }
  pkl::MultiplierData data(spec, pts, targets);
  while (!pkl::is_contractive_multiplier(data).is_psd()) {
    data = data.scaled(0.8);
  }
  return data;
}

}  // namespace testing_support
