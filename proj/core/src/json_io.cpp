#include "pkl/json_io.hpp"

#include <string>

#include "pkl/error.hpp"

namespace pkl::io {
namespace {

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorCode::InvalidInput, what);
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    fail(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

double as_number(const json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

const char* verdict_name(Verdict v) {
  return v == Verdict::psd ? "psd" : "not_psd";
}

}  // namespace

json encode(Complex z) { return json::array({z.real(), z.imag()}); }

json encode(const Point& p) { return json::array({p.re(), p.im()}); }

json encode(const PointSet& ps) {
  json pts = json::array();
  for (const auto& p : ps) pts.push_back(encode(p));
  json out{{"points", std::move(pts)}};
  if (ps.has_labels()) out["labels"] = ps.labels();
  return out;
}

json encode(const KernelSpec& spec) {
  return std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Szego>) {
          return {{"type", "szego"}};
        } else if constexpr (std::is_same_v<K, Bergman>) {
          return {{"type", "bergman"}};
        } else if constexpr (std::is_same_v<K, PowerKernel>) {
          return {{"type", "power"}, {"alpha", k.alpha}};
        } else {
          return {{"type", "gram_table"},
                  {"matrix", encode(k.matrix)},
                  {"points", encode(k.points)}};
        }
      },
      spec.variant());
}

json encode_matrix(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json encode(const HermitianMatrix& m) { return encode_matrix(m.matrix()); }

json encode_vector(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(encode(v(i)));
  return out;
}

json encode(const PSDReport& r) {
  json eig = json::array();
  for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) {
    eig.push_back(r.eigenvalues(i));
  }
  return {{"verdict", verdict_name(r.verdict)},
          {"min_eigenvalue", r.min_eigenvalue},
          {"tolerance", r.tolerance_used},
          {"numerical_rank", r.numerical_rank},
          {"eigenvalues", std::move(eig)},
          {"witness", encode_vector(r.witness)}};
}

json encode(const CriterionReport& r) {
  return {{"z", encode(r.base_point)},
          {"verdict", verdict_name(r.psd.verdict)},
          {"min_eigenvalue", r.psd.min_eigenvalue},
          {"tolerance", r.psd.tolerance_used},
          {"matrix", encode(r.gram_of_fz)},
          {"witness", encode_vector(r.psd.witness)}};
}

json encode(const IrreducibilityReport& r) {
  json pairs = json::array();
  for (const auto& [i, j] : r.offending_pairs) pairs.push_back({i, j});
  return {{"nonvanishing", r.nonvanishing},
          {"independent_pairs", r.independent_pairs},
          {"offending_pairs", std::move(pairs)}};
}

json encode(const MultiplierData& d) {
  json targets = json::array();
  for (const auto& w : d.targets()) targets.push_back(encode_matrix(w));
  return {{"kernel", encode(d.spec())},
          {"points", encode(d.points())},
          {"targets", std::move(targets)}};
}

json encode(const ExtensionDisk& d) {
  if (d.empty) return {{"empty", true}};
  return {{"center", encode(d.center)},
          {"radius", d.radius},
          {"boundary_verified", d.boundary_verified}};
}

json encode(const PickReport& r) {
  json out = encode(r.psd);
  out["matrix"] = encode(r.product_matrix);
  if (r.quotient_matrix) {
    out["quotient_matrix"] = encode(*r.quotient_matrix);
    out["quotient_verdict"] = verdict_name(r.quotient_psd->verdict);
    out["forms_agree"] = r.forms_agree();
  }
  return out;
}

json encode(const CheckRecord& c) {
  json out{{"name", c.name}, {"verdict", c.passed ? "pass" : "fail"}};
  out["min_eigenvalue"] = c.psd ? json(c.psd->min_eigenvalue) : json(nullptr);
  out["residual"] = c.residual ? json(*c.residual) : json(nullptr);
  return out;
}

json encode(const InductionStepRecord& s) {
  json checks = json::array();
  for (const auto& c : s.checks) checks.push_back(encode(c));
  return {{"n", s.n},
          {"checks", std::move(checks)},
          {"conclusion", encode(s.conclusion)}};
}

json encode(const ProofCertificate& c) {
  json base = json::array();
  for (const auto& b : c.base_case) {
    base.push_back({{"x", b.x}, {"z", b.z}, {"value", b.value},
                    {"verdict", b.passed ? "pass" : "fail"}});
  }
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back(encode(s));
  json out{{"kernel", encode(c.kernel)},
           {"ordering", encode(c.ordering)},
           {"base_case", std::move(base)},
           {"steps", std::move(steps)}};
  if (c.final_check) out["final_check"] = encode(*c.final_check);
  if (c.invalid_at) {
    out["overall"] = {{"invalid_at",
                       {{"step", c.invalid_at->step},
                        {"check", c.invalid_at->check}}}};
  } else {
    out["overall"] = "valid";
  }
  return out;
}

Complex decode_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    fail("complex value must be [re, im] or a number, got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Point decode_point(const json& j) {
  const Complex z = decode_complex(j);
  return Point(z.real(), z.imag());
}

std::vector<Complex> decode_complex_list(const json& j) {
  if (!j.is_array()) fail("expected an array of complex values");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(decode_complex(e));
  return out;
}

PointSet decode_point_set(const json& j) {
  const json& arr = j.is_object() ? require(j, "points") : j;
  if (!arr.is_array()) fail("points must be an array");
  std::vector<Point> pts;
  pts.reserve(arr.size());
  for (const auto& e : arr) pts.push_back(decode_point(e));
  std::vector<std::string> labels;
  if (j.is_object() && j.contains("labels")) {
    const auto& l = j.at("labels");
    if (!l.is_array()) fail("labels must be an array of strings");
    for (const auto& s : l) {
      if (!s.is_string()) fail("labels must be an array of strings");
      labels.push_back(s.get<std::string>());
    }
  }
  return PointSet(std::move(pts), std::move(labels));
}

Eigen::MatrixXcd decode_matrix(const json& j) {
  if (!j.is_array()) fail("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) fail("matrix must have at least one row");
  if (!j[0].is_array()) fail("matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      fail("matrix rows must all have length " + std::to_string(cols));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(i, c) = decode_complex(row[static_cast<std::size_t>(c)]);
    }
  }
  return m;
}

HermitianMatrix decode_hermitian(const json& j) {
  return HermitianMatrix(decode_matrix(j));
}

KernelSpec decode_kernel(const json& j) {
  if (j.is_string()) return decode_kernel(json{{"type", j}});
  const json& type = require(j, "type");
  if (!type.is_string()) fail("kernel type must be a string");
  const auto name = type.get<std::string>();
  if (name == "szego") return KernelSpec::szego();
  if (name == "bergman") return KernelSpec::bergman();
  if (name == "power") {
    return KernelSpec::power(as_number(require(j, "alpha"), "alpha"));
  }
  if (name == "gram_table") {
    return KernelSpec::gram_table(decode_hermitian(require(j, "matrix")),
                                  decode_point_set(require(j, "points")));
  }
  fail("unknown kernel type \"" + name + "\"");
}

MultiplierData decode_multiplier(const json& j) {
  KernelSpec spec = j.contains("kernel") ? decode_kernel(j.at("kernel"))
                                         : KernelSpec::szego();
  PointSet points = decode_point_set(require(j, "points"));
  const json& t = require(j, "targets");
  if (!t.is_array()) fail("targets must be an array");
  std::vector<Eigen::MatrixXcd> targets;
  targets.reserve(t.size());
  for (const auto& w : t) {
    // A bare complex value is shorthand for a 1x1 target.
    if (w.is_number() || (w.is_array() && w.size() == 2 && w[0].is_number())) {
      targets.push_back(Eigen::MatrixXcd::Constant(1, 1, decode_complex(w)));
    } else {
      targets.push_back(decode_matrix(w));
    }
  }
  return MultiplierData(std::move(spec), std::move(points), std::move(targets));
}

}  // namespace pkl::io
