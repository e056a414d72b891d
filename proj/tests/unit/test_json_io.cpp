#include <doctest.h>

#include <random>

#include "pkl/error.hpp"
#include "pkl/json_io.hpp"
#include "pkl/random.hpp"

using namespace pkl;
using nlohmann::json;

TEST_CASE("complex and point set encodings") {
  CHECK(pkl::io::encode(Complex(1.5, -2.0)) == json::parse("[1.5, -2.0]"));
  CHECK(pkl::io::decode_complex(json::parse("0.25")) == Complex(0.25, 0.0));
  CHECK_THROWS_AS(pkl::io::decode_complex(json::parse("[1]")), Error);

  const auto ps = pkl::io::decode_point_set(
      json::parse(R"({"points": [[0, 0], [0.5, 0.1]], "labels": ["a", "b"]})"));
  CHECK(ps.size() == 2);
  CHECK(ps.labels()[1] == "b");
  CHECK(pkl::io::decode_point_set(pkl::io::encode(ps)) == ps);
  CHECK(pkl::io::decode_point_set(json::parse("[0, 0.5]")) == PointSet{0.0, 0.5});
  CHECK_THROWS_AS(pkl::io::decode_point_set(json::parse("[]")), Error);
}

TEST_CASE("kernel spec encodings") {
  CHECK(pkl::io::decode_kernel(json::parse(R"({"type": "szego"})")) == KernelSpec::szego());
  CHECK(pkl::io::decode_kernel(json::parse(R"("bergman")")) == KernelSpec::bergman());
  CHECK(pkl::io::decode_kernel(json::parse(R"({"type": "power", "alpha": 0.5})")) ==
        KernelSpec::power(0.5));
  const auto table = pkl::io::decode_kernel(json::parse(
      R"({"type": "gram_table", "matrix": [[[2,0],[1,1]],[[1,-1],[3,0]]], "points": [5, 6]})"));
  CHECK(evaluate_kernel(table, Point(5, 0), Point(6, 0)) == Complex(1.0, 1.0));
  CHECK(pkl::io::decode_kernel(pkl::io::encode(table)) == table);

  CHECK_THROWS_AS(pkl::io::decode_kernel(json::parse(R"({"type": "gauss"})")), Error);
  CHECK_THROWS_AS(pkl::io::decode_kernel(json::parse(R"({"type": "power"})")), Error);
}

TEST_CASE("encode/decode round trip preserves random data") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const PointSet pts = random_disk_points(rng, 4, 0.9);
    const HermitianMatrix g = assemble_gram(KernelSpec::power(0.7), pts);
    CHECK(pkl::io::decode_point_set(json::parse(pkl::io::encode(pts).dump())) == pts);
    CHECK(pkl::io::decode_hermitian(json::parse(pkl::io::encode(g).dump())) == g);
    std::vector<Eigen::MatrixXcd> targets(4, Eigen::MatrixXcd::Constant(2, 3, Complex(0.1, trial)));
    const MultiplierData d(KernelSpec::bergman(), pts, targets);
    const auto back = pkl::io::decode_multiplier(json::parse(pkl::io::encode(d).dump()));
    CHECK(back.points() == pts);
    CHECK(back.targets()[3] == targets[3]);
    CHECK(back.spec() == KernelSpec::bergman());
  }
}

TEST_CASE("multiplier decoding accepts scalar shorthand") {
  const auto d = pkl::io::decode_multiplier(
      json::parse(R"({"points": [0, 0.5], "targets": [0, [0.5, 0]]})"));
  CHECK(d.rows() == 1);
  CHECK(d.targets()[1](0, 0) == Complex(0.5, 0.0));
  CHECK(d.spec() == KernelSpec::szego());
  CHECK_THROWS_AS(pkl::io::decode_multiplier(
                      json::parse(R"({"points": [0, 0.5], "targets": [0]})")),
                  Error);
}

TEST_CASE("report encodings carry the published fields") {
  const auto r = fz_gram(KernelSpec::bergman(), Point(0, 0), PointSet{0.5, -0.5});
  const json j = pkl::io::encode(r);
  for (const char* key : {"z", "verdict", "min_eigenvalue", "tolerance", "matrix", "witness"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["verdict"] == "not_psd");

  CHECK(pkl::io::encode(ExtensionDisk{true, {}, 0.0, false}) == json::parse(R"({"empty": true})"));
  const json disk = pkl::io::encode(ExtensionDisk{false, {0.1, 0.2}, 0.5, true});
  CHECK(disk["radius"] == 0.5);
  CHECK(disk["center"] == json::parse("[0.1, 0.2]"));
}
