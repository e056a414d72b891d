#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "pkl/error.hpp"
#include "pkl/json_io.hpp"
#include "pkl/multiplier.hpp"
#include "pkl/pick_analysis.hpp"
#include "pkl/proof_engine.hpp"
#include "pkl/random.hpp"

namespace pkl::cli {
namespace {

using nlohmann::json;


constexpr std::array<std::pair<std::string_view, Command>, 11> kCommands{{
    {"gram", Command::gram},
    {"psd", Command::psd},
    {"fz", Command::fz},
    {"kz", Command::kz},
    {"cpp", Command::cpp},
    {"irreducible", Command::irreducible},
    {"defect", Command::defect},
    {"multnorm", Command::multnorm},
    {"pick", Command::pick},
    {"extend", Command::extend},
    {"prove", Command::prove},
}};

struct Outcome {
  json doc;
  std::string text;
  int code = kAffirmative;
};

int verdict_code(bool affirmative) {
  return affirmative ? kAffirmative : kNegative;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string fmt(Complex z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ")
     << std::abs(z.imag()) << "i";
  return os.str();
}

std::string matrix_text(const Eigen::MatrixXcd& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "  [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << fmt(m(i, j));
    }
    os << "]\n";
  }
  return os.str();
}

std::string psd_text(const PSDReport& r) {
  return std::string(r.is_psd() ? "psd" : "not_psd") +
         " (min eigenvalue " + fmt(r.min_eigenvalue) + ", tolerance " +
         fmt(r.tolerance_used) + ", rank " + std::to_string(r.numerical_rank) +
         ")\n";
}

double psd_tol(const RunConfig& cfg) {
  return cfg.tolerance.value_or(kDefaultPsdTol);
}

KernelSpec kernel_of(const json& in) {
  return in.contains("kernel") ? io::decode_kernel(in.at("kernel"))
                               : KernelSpec::szego();
}

const json& field(const json& in, const char* key) {
  if (!in.contains(key)) {
    throw Error(ErrorCode::InvalidInput,
                std::string("missing field \"") + key + "\"");
  }
  return in.at(key);
}

std::size_t count_field(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) {
    throw Error(ErrorCode::InvalidInput,
                std::string(key) + " must be a positive integer");
  }
  return v.get<std::size_t>();
}

double radius_field(const json& j) {
  const double r = j.value("radius", 0.9);
  if (!(r > 0.0 && r < 1.0)) {
    throw Error(ErrorCode::InvalidInput, "random radius must be in (0, 1)");
  }
  return r;
}

void warn_duplicates(const PointSet& ps, std::string_view what,
                     std::ostream& err) {
  for (const auto& [i, j] : ps.duplicates()) {
    err << "warning: " << what << " points " << i << " and " << j
        << " coincide; Gram matrices will be singular\n";
  }
}

Outcome run_gram(const RunConfig&, const json& in, std::ostream& err) {
  const KernelSpec spec = kernel_of(in);
  const PointSet pts = io::decode_point_set(field(in, "points"));
  warn_duplicates(pts, "sample", err);
  const HermitianMatrix g = assemble_gram(spec, pts);
  return {{{"matrix", io::encode(g)}}, "Gram matrix:\n" + matrix_text(g.matrix()),
          kAffirmative};
}

Outcome run_psd(const RunConfig& cfg, const json& in, std::ostream&) {
  const HermitianMatrix a = io::decode_hermitian(field(in, "matrix"));
  const PSDReport r = psd_check(a, psd_tol(cfg));
  return {io::encode(r), psd_text(r), verdict_code(r.is_psd())};
}

Outcome run_fz(const RunConfig& cfg, const json& in, std::ostream& err) {
  const PointSet sample = io::decode_point_set(field(in, "sample"));
  warn_duplicates(sample, "sample", err);
  const CriterionReport r = fz_gram(kernel_of(in), io::decode_point(field(in, "z")),
                                    sample, psd_tol(cfg));
  return {io::encode(r),
          "F_z Gram at z = " + fmt(r.base_point.value()) + ":\n" +
              matrix_text(r.gram_of_fz.matrix()) + psd_text(r.psd),
          verdict_code(r.psd.is_psd())};
}

Outcome run_kz(const RunConfig& cfg, const json& in, std::ostream& err) {
  const PointSet sample = io::decode_point_set(field(in, "sample"));
  warn_duplicates(sample, "sample", err);
  const Point z = io::decode_point(field(in, "z"));
  const HermitianMatrix kz = schur_complement_gram(kernel_of(in), z, sample);
  const PSDReport r = psd_check(kz, psd_tol(cfg));
  json doc = io::encode(r);
  doc["z"] = io::encode(z);
  doc["matrix"] = io::encode(kz);
  return {doc, "k^z Gram:\n" + matrix_text(kz.matrix()) + psd_text(r),
          verdict_code(r.is_psd())};
}

Outcome run_cpp(const RunConfig& cfg, const json& in, std::ostream& err) {
  const KernelSpec spec = kernel_of(in);
  std::optional<PointSet> base, sample;
  if (in.contains("random")) {
    const json& rnd = in.at("random");
    std::mt19937_64 rng(cfg.seed);
    const double radius = radius_field(rnd);
    base = random_disk_points(rng, count_field(rnd, "base", 10), radius);
    sample = random_disk_points(rng, count_field(rnd, "sample", 15), radius);
  } else {
    base = io::decode_point_set(field(in, "base_points"));
    sample = io::decode_point_set(field(in, "sample"));
  }
  warn_duplicates(*sample, "sample", err);
  const auto reports = cpp_check(spec, *base, *sample, psd_tol(cfg));
  json arr = json::array();
  std::string text;
  for (const auto& r : reports) {
    arr.push_back(io::encode(r));
    text += "z = " + fmt(r.base_point.value()) + ": " + psd_text(r.psd);
  }
  const bool ok = all_psd(reports);
  text += std::string("overall: ") + (ok ? "psd" : "not_psd") + "\n";
  return {{{"verdict", ok ? "psd" : "not_psd"},
           {"base_points", io::encode(*base)},
           {"sample", io::encode(*sample)},
           {"reports", std::move(arr)}},
          text,
          verdict_code(ok)};
}

Outcome run_irreducible(const RunConfig& cfg, const json& in, std::ostream& err) {
  const PointSet sample = io::decode_point_set(field(in, "sample"));
  warn_duplicates(sample, "sample", err);
  const IrreducibilityReport r =
      irreducibility_check(kernel_of(in), sample, psd_tol(cfg));
  std::string text = std::string("nonvanishing: ") +
                     (r.nonvanishing ? "yes" : "no") + "\nindependent pairs: " +
                     (r.independent_pairs ? "yes" : "no") + "\n";
  for (const auto& [i, j] : r.offending_pairs) {
    text += "  offending pair (" + std::to_string(i) + ", " +
            std::to_string(j) + ")\n";
  }
  return {io::encode(r), text,
          verdict_code(r.nonvanishing && r.independent_pairs)};
}

Outcome run_defect(const RunConfig& cfg, const json& in, std::ostream& err) {
  const MultiplierData data = io::decode_multiplier(in);
  warn_duplicates(data.points(), "multiplier", err);
  const double c = in.value("c", 1.0);
  const HermitianMatrix d = defect_gram(data, c);
  const PSDReport r = psd_check(d, psd_tol(cfg));
  json doc = io::encode(r);
  doc["c"] = c;
  doc["matrix"] = io::encode(d);
  return {doc, "defect Gram at c = " + fmt(c) + ":\n" + matrix_text(d.matrix()) +
                   psd_text(r),
          verdict_code(r.is_psd())};
}

Outcome run_multnorm(const RunConfig& cfg, const json& in, std::ostream& err) {
  const MultiplierData data = io::decode_multiplier(in);
  warn_duplicates(data.points(), "multiplier", err);
  const double tol = cfg.tolerance.value_or(kDefaultNormTol);
  const double norm = multiplier_norm(data, tol);
  return {{{"norm", norm}, {"tolerance", tol}},
          "multiplier norm: " + fmt(norm) + " (+- " + fmt(tol) + ")\n",
          kAffirmative};
}

Outcome run_pick(const RunConfig& cfg, const json& in, std::ostream& err) {
  const PointSet z = io::decode_point_set(field(in, "z"));
  warn_duplicates(z, "interpolation", err);
  const auto w = io::decode_complex_list(field(in, "w"));
  const PickReport r = pick_feasible(z, w, kernel_of(in), psd_tol(cfg));
  std::string text = "Pick matrix:\n" + matrix_text(r.product_matrix.matrix()) +
                     psd_text(r.psd);
  if (!r.forms_agree()) {
    err << "warning: quotient and product Pick forms disagree on the verdict\n";
  }
  json doc = io::encode(r);
  doc["feasible"] = r.feasible();
  return {doc, text, verdict_code(r.feasible())};
}

Outcome run_extend(const RunConfig& cfg, const json& in, std::ostream& err) {
  const KernelSpec spec = kernel_of(in);
  const PointSet z = io::decode_point_set(field(in, "z"));
  warn_duplicates(z, "interpolation", err);
  const auto w = io::decode_complex_list(field(in, "w"));
  const Point z_new = io::decode_point(field(in, "z_new"));
  const ExtensionDisk disk =
      one_point_extension_disk(z, w, z_new, spec, psd_tol(cfg));
  json doc = io::encode(disk);
  std::string text = disk.empty ? std::string("extension set is empty\n")
                                : "extension disk: center " + fmt(disk.center) +
                                      ", radius " + fmt(disk.radius) + "\n";
  bool ok = !disk.empty;
  if (cfg.grid_check) {
    const double res = *cfg.grid_check;
    const GridScanResult g =
        grid_scan_extension(z, w, z_new, spec, res, psd_tol(cfg));
    bool agrees = false;
    json gj{{"resolution", res}, {"feasible_count", g.feasible_count}};
    if (g.feasible_count == 0) {
      agrees = disk.empty || disk.radius < res;
    } else {
      gj["center"] = io::encode(g.center());
      gj["radius"] = g.radius();
      agrees = !disk.empty && std::abs(g.center() - disk.center) <= 2.0 * res &&
               std::abs(g.radius() - disk.radius) <= 2.0 * res;
    }
    gj["agrees"] = agrees;
    doc["grid_check"] = std::move(gj);
    text += std::string("grid check at ") + fmt(res) + ": " +
            std::to_string(g.feasible_count) + " feasible cells, " +
            (agrees ? "agrees" : "DISAGREES") + "\n";
    ok = ok && agrees;
  }
  return {doc, text, verdict_code(ok)};
}

Outcome run_prove(const RunConfig& cfg, const json& in, std::ostream& err) {
  const KernelSpec spec = kernel_of(in);
  std::mt19937_64 rng(cfg.seed);
  std::optional<PointSet> ordering;
  if (in.contains("random")) {
    const json& rnd = in.at("random");
    ordering = random_disk_points(rng, count_field(rnd, "points", 6),
                                  radius_field(rnd));
  } else {
    ordering = io::decode_point_set(field(in, "ordering"));
  }
  warn_duplicates(*ordering, "ordering", err);

  std::vector<PointSet> orderings{*ordering};
  for (unsigned s = 0; s < cfg.shuffles; ++s) {
    auto pts = ordering->points();
    std::shuffle(pts.begin(), pts.end(), rng);
    orderings.emplace_back(std::move(pts));
  }

  json certs = json::array();
  std::string text;
  bool ok = true;
  for (std::size_t i = 0; i < orderings.size(); ++i) {
    const ProofCertificate cert =
        necessity_certificate(spec, orderings[i], psd_tol(cfg));
    certs.push_back(io::encode(cert));
    ok = ok && cert.valid();
    text += "ordering " + std::to_string(i) + ": ";
    if (cert.valid()) {
      text += "valid (" + std::to_string(cert.steps.size()) + " steps)\n";
    } else {
      text += "invalid at step " + std::to_string(cert.invalid_at->step) +
              ", check " + cert.invalid_at->check + "\n";
    }
  }
  if (cfg.shuffles == 0) return {certs.at(0), text, verdict_code(ok)};
  return {{{"overall", ok ? "valid" : "invalid"}, {"certificates", certs}},
          text,
          verdict_code(ok)};
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [n, c] : kCommands) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::string_view command_name(Command c) {
  for (const auto& [n, cmd] : kCommands) {
    if (cmd == c) return n;
  }
  return "unknown";
}

std::string error_line(std::string_view code, std::string_view detail) {
  return json{{"error", code}, {"detail", detail}}.dump();
}

int run(const RunConfig& config, std::string_view input, std::ostream& out,
        std::ostream& err) {
  if (config.tolerance && !(*config.tolerance > 0.0)) {
    err << error_line("InvalidInput", "tolerance must be > 0") << '\n';
    return kUsageError;
  }
  json in;
  try {
    in = json::parse(input);
  } catch (const json::parse_error& e) {
    err << error_line("InvalidInput", e.what()) << '\n';
    return kUsageError;
  }
  if (!in.is_object()) {
    err << error_line("InvalidInput", "input document must be a JSON object")
        << '\n';
    return kUsageError;
  }

  try {
    Outcome o;
    switch (config.command) {
      case Command::gram: o = run_gram(config, in, err); break;
      case Command::psd: o = run_psd(config, in, err); break;
      case Command::fz: o = run_fz(config, in, err); break;
      case Command::kz: o = run_kz(config, in, err); break;
      case Command::cpp: o = run_cpp(config, in, err); break;
      case Command::irreducible: o = run_irreducible(config, in, err); break;
      case Command::defect: o = run_defect(config, in, err); break;
      case Command::multnorm: o = run_multnorm(config, in, err); break;
      case Command::pick: o = run_pick(config, in, err); break;
      case Command::extend: o = run_extend(config, in, err); break;
      case Command::prove: o = run_prove(config, in, err); break;
    }
    if (config.output_format == Format::json) {
      out << o.doc.dump(2) << '\n';
    } else {
      out << o.text;
    }
    return o.code;
  } catch (const Error& e) {
    err << error_line(to_string(e.code()), e.what()) << '\n';
  } catch (const json::exception& e) {
    err << error_line("InvalidInput", e.what()) << '\n';
  }
  return kUsageError;
}

}  // namespace pkl::cli
