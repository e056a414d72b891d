#include <doctest.h>

#include <random>

#include "pkl/error.hpp"
#include "pkl/multiplier.hpp"
#include "pkl/random.hpp"
#include "support/generators.hpp"
#include "support/helpers.hpp"
#include "support/oracle.hpp"

using namespace pkl;
using testing_support::oracle_min_eig;

namespace {

MultiplierData identity_on_two_points(double w1 = 0.5) {
  return MultiplierData::scalar(KernelSpec::szego(), PointSet{0.0, 0.5}, {0.0, w1});
}

// Feasibility of a candidate value at the new node by the test-side
// eigenvalue oracle, entries written out from the Pick matrix definition.
bool oracle_feasible(const std::vector<Complex>& z, const std::vector<Complex>& w) {
  oracle::CMatrix p(z.size(), std::vector<oracle::cplx>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j)
      p[i][j] = (1.0 - w[i] * std::conj(w[j])) / (1.0 - z[i] * std::conj(z[j]));
  return oracle::min_eigenvalue(p) >= -1e-9;
}

}  // namespace

TEST_CASE("defect_gram examples") {
  const auto zero = MultiplierData::scalar(KernelSpec::bergman(), PointSet{0.1, -0.4}, {0.0, 0.0});
  const auto d0 = defect_gram(zero, 1.0);
  CHECK(d0 == assemble_gram(KernelSpec::bergman(), PointSet{0.1, -0.4}));
  CHECK(psd_check(d0).is_psd());

  const auto d = defect_gram(identity_on_two_points(), 1.0);
  const oracle::CMatrix ones{{1.0, 1.0}, {1.0, 1.0}};
  CHECK(testing_support::max_abs_diff(d.matrix(), ones) < 1e-15);
  const auto r = psd_check(d);
  CHECK(r.is_psd());
  CHECK(std::abs(r.min_eigenvalue) < 1e-12);

  CHECK_FALSE(psd_check(defect_gram(identity_on_two_points(), 0.9)).is_psd());
  CHECK_THROWS_AS(defect_gram(identity_on_two_points(), -1.0), Error);
}

TEST_CASE("defect_gram block layout for matrix targets") {
  Eigen::MatrixXcd w1(2, 1), w2(2, 1);
  w1 << 0.5, Complex(0, 0.25);
  w2 << -0.1, 0.3;
  const MultiplierData data(KernelSpec::szego(), PointSet{0.2, -0.3}, {w1, w2});
  CHECK(data.rows() == 2);
  CHECK(data.cols() == 1);
  const auto d = defect_gram(data, 1.0);
  REQUIRE(d.dim() == 4);
  const Complex k12 = oracle::szego(0.2, -0.3);
  const Eigen::MatrixXcd block = (Eigen::MatrixXcd::Identity(2, 2) - w1 * w2.adjoint()) * k12;
  CHECK(max_abs_diff(d.matrix().block(0, 2, 2, 2), block) < 1e-15);
}

TEST_CASE("multiplier data shape errors") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(1, 2);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(2, 1);
  try {
    MultiplierData(KernelSpec::szego(), PointSet{0.1, 0.2}, {a, b});
    FAIL("expected ShapeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeMismatch);
  }
  CHECK_THROWS_AS(MultiplierData(KernelSpec::szego(), PointSet{0.1, 0.2}, {a}), Error);
  CHECK_THROWS_AS(MultiplierData(KernelSpec::szego(), PointSet{0.1},
                                 {Eigen::MatrixXcd(0, 0)}),
                  Error);
}

TEST_CASE("is_contractive_multiplier examples") {
  const auto single = MultiplierData::scalar(KernelSpec::szego(), PointSet{0.3}, {Complex(0.6, 0.8)});
  CHECK(is_contractive_multiplier(single).is_psd());
  CHECK(is_contractive_multiplier(identity_on_two_points()).is_psd());

  const auto r = is_contractive_multiplier(identity_on_two_points(0.9));
  CHECK_FALSE(r.is_psd());
  const auto d = defect_gram(identity_on_two_points(0.9), 1.0);
  const auto det = oracle::det2(testing_support::to_oracle(d.matrix()));
  CHECK(std::abs(det.real() - (19.0 / 75.0 - 1.0)) < 1e-12);
  CHECK(oracle_min_eig(d) < 0.0);
}

TEST_CASE("multiplier_norm examples") {
  const auto single = MultiplierData::scalar(KernelSpec::bergman(), PointSet{Complex(0.2, 0.1)},
                                             {Complex(0.3, -0.4)});
  CHECK(std::abs(multiplier_norm(single) - 0.5) <= 1e-8);

  // c^4 (4/3) - c^4 - c^2/3 >= 0  <=>  c^2 >= 1.
  CHECK(std::abs(multiplier_norm(identity_on_two_points(), 1e-8) - 1.0) <= 2e-8);

  const auto zero = MultiplierData::scalar(KernelSpec::szego(), PointSet{0.1, 0.2}, {0.0, 0.0});
  CHECK(multiplier_norm(zero) == 0.0);

  CHECK_THROWS_AS(multiplier_norm(single, 0.0), Error);
}

TEST_CASE("multiplier_norm fails to converge on a non-PSD Gram") {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, 2.0, 2.0, 1.0;
  const auto table = KernelSpec::gram_table(HermitianMatrix(m), PointSet{1.0, 2.0});
  const auto data = MultiplierData::scalar(table, PointSet{1.0, 2.0}, {0.5, -0.5});
  try {
    multiplier_norm(data);
    FAIL("expected NonConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConvergence);
  }
}

TEST_CASE("multiplier_norm homogeneity and consistency") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> size(1, 4);
  std::uniform_real_distribution<double> mag(0.2, 2.0), phase(0.0, 6.283185307179586);
  const double tol = 1e-8;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = size(rng);
    std::vector<Complex> w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(random_disk_value(rng, 1.0));
    const auto data = MultiplierData::scalar(KernelSpec::szego(), random_disk_points(rng, n, 0.8), w);
    const Complex lambda = std::polar(mag(rng), phase(rng));
    const double c = multiplier_norm(data, tol);
    const double cl = multiplier_norm(data.scaled(lambda), tol);
    CHECK(std::abs(cl - std::abs(lambda) * c) <= 2 * tol);

    CHECK(psd_check(defect_gram(data, c + 2 * tol)).is_psd());
    if (c > 0.0) {
      const auto below = psd_check(defect_gram(data, c * (1.0 - 1e-3)));
      CHECK(below.min_eigenvalue < -below.tolerance_used);
    }
  }
}

TEST_CASE("defect is monotone in c") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unit(0.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto data = testing_support::random_contractive(rng, KernelSpec::bergman(), 4, 2, 1);
    double c1 = unit(rng), c2 = unit(rng);
    if (c1 > c2) std::swap(c1, c2);
    const HermitianMatrix diff(defect_gram(data, c2).matrix() - defect_gram(data, c1).matrix());
    CHECK(psd_check(diff).is_psd());
  }
}

TEST_CASE("defect_invariance_check") {
  const auto zero = MultiplierData::scalar(KernelSpec::szego(), PointSet{0.1, 0.5}, {0.0, 0.0});
  const auto z0 = defect_invariance_check(zero, Point(0.2, 0.2));
  CHECK(z0.ambient.is_psd());
  CHECK(z0.restricted.is_psd());

  const auto ex = defect_invariance_check(identity_on_two_points(), Point(0.25, 0.0));
  CHECK(ex.ambient.is_psd());
  CHECK(ex.restricted.is_psd());

  try {
    defect_invariance_check(identity_on_two_points(0.9), Point(0.25, 0));
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }

  std::mt19937_64 rng(47);
  std::uniform_int_distribution<std::size_t> size(1, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto data = testing_support::random_contractive(rng, KernelSpec::szego(), size(rng), 1, 1);
    const auto r = defect_invariance_check(data, Point(random_disk_value(rng, 0.9)));
    CHECK(r.restricted.is_psd());
  }
}

TEST_CASE("pick_feasible examples") {
  const auto ok = pick_feasible(PointSet{0.0, 0.5}, {0.0, 0.5});
  CHECK(ok.feasible());
  CHECK(std::abs(ok.psd.min_eigenvalue) < 1e-9);
  REQUIRE(ok.quotient_matrix.has_value());
  const oracle::CMatrix ones{{1.0, 1.0}, {1.0, 1.0}};
  CHECK(testing_support::max_abs_diff(ok.quotient_matrix->matrix(), ones) < 1e-15);
  const auto ev = oracle::hermitian_eigenvalues(ones);
  CHECK(std::abs(ok.quotient_psd->eigenvalues(1) - ev[1]) < 1e-12);

  const auto bad = pick_feasible(PointSet{0.0, 0.5}, {0.0, 0.9});
  CHECK_FALSE(bad.feasible());
  const auto det = oracle::det2(testing_support::to_oracle(bad.quotient_matrix->matrix()));
  CHECK(std::abs(det.real() - (19.0 / 75.0 - 1.0)) < 1e-12);
  CHECK(bad.forms_agree());

  CHECK_FALSE(pick_feasible(PointSet{0.1, 0.2, -0.3}, {0.0, Complex(0.8, 0.7), 0.1}).feasible());

  try {
    pick_feasible(PointSet{0.0, Complex(0.0, 1.0)}, {0.0, 0.0});
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainError);
  }
  CHECK_THROWS_AS(pick_feasible(PointSet{0.0}, {0.0, 0.1}), Error);
}

TEST_CASE("pick quotient and product forms agree") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<std::size_t> size(1, 5);
  int feasible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = size(rng);
    const PointSet z = random_disk_points(rng, n, 0.9);
    std::vector<Complex> w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(random_disk_value(rng, 0.6));
    const auto r = pick_feasible(z, w);
    REQUIRE(r.quotient_psd.has_value());
    CHECK(r.forms_agree());
    std::vector<Complex> zv;
    for (const auto& p : z) zv.push_back(p.value());
    CHECK(r.feasible() == oracle_feasible(zv, w));
    feasible += r.feasible();
  }
  // Both verdicts occur in the sample.
  CHECK(feasible > 0);
  CHECK(feasible < 100);
}

TEST_CASE("one_point_extension_disk examples") {
  // Schwarz lemma: |f(1/2)| <= 1/2.
  const auto d = one_point_extension_disk(PointSet{0.0}, {0.0}, Point(0.5, 0));
  CHECK_FALSE(d.empty);
  CHECK(std::abs(d.center) < 1e-9);
  CHECK(std::abs(d.radius - 0.5) < 1e-9);
  CHECK(d.boundary_verified);

  const auto dup = one_point_extension_disk(PointSet{0.0}, {0.0}, Point(0, 0));
  CHECK_FALSE(dup.empty);
  CHECK(std::abs(dup.center) < 1e-9);
  CHECK(dup.radius < 1e-6);

  // Degenerate base: the identity is the unique interpolant.
  const auto id = one_point_extension_disk(PointSet{0.0, 0.5}, {0.0, 0.5}, Point(0.25, 0));
  CHECK_FALSE(id.empty);
  CHECK(std::abs(id.center - 0.25) < 1e-9);
  CHECK(id.radius < 1e-6);
  CHECK(id.boundary_verified);
  CHECK(oracle_feasible({0.0, 0.5, 0.25}, {0.0, 0.5, 0.25}));

  try {
    one_point_extension_disk(PointSet{0.0, 0.5}, {0.0, 0.9}, Point(0.25, 0));
    FAIL("expected InfeasibleBase");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleBase);
  }
}

TEST_CASE("extension disk agrees with a brute-force grid scan") {
  std::mt19937_64 rng(59);
  const double res = 1e-2;
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
    const PointSet z = random_disk_points(rng, n, 0.7);
    std::vector<Complex> w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(random_disk_value(rng, 0.4));
    if (!pick_feasible(z, w).feasible()) continue;
    const Point z_new(random_disk_value(rng, 0.7));
    const auto disk = one_point_extension_disk(z, w, z_new);
    REQUIRE_FALSE(disk.empty);

    std::vector<Complex> zv;
    for (const auto& p : z) zv.push_back(p.value());
    zv.push_back(z_new.value());
    double min_re = 2, max_re = -2, min_im = 2, max_im = -2;
    for (double y = -1.0; y <= 1.0 + 1e-12; y += res) {
      for (double x = -1.0; x <= 1.0 + 1e-12; x += res) {
        auto wv = w;
        wv.push_back({x, y});
        if (std::norm(wv.back()) > 1.0 || !oracle_feasible(zv, wv)) continue;
        min_re = std::min(min_re, x);
        max_re = std::max(max_re, x);
        min_im = std::min(min_im, y);
        max_im = std::max(max_im, y);
      }
    }
    REQUIRE(max_re >= min_re);
    const Complex center{0.5 * (min_re + max_re), 0.5 * (min_im + max_im)};
    const double radius = 0.25 * ((max_re - min_re) + (max_im - min_im));
    CHECK(std::abs(center - disk.center) <= 2 * res);
    CHECK(std::abs(radius - disk.radius) <= 2 * res);

    const auto scan = grid_scan_extension(z, w, z_new, KernelSpec::szego(), res);
    CHECK(std::abs(scan.center() - disk.center) <= 2 * res);
    CHECK(std::abs(scan.radius() - disk.radius) <= 2 * res);
  }
}
