#pragma once

// JSON encodings shared by the CLI and any external consumer:
//   complex        [re, im]   (a bare number is accepted on input)
//   PointSet       {"points": [[re,im], ...], "labels": [...]}
//   KernelSpec     {"type": "szego"|"bergman"|"power"|"gram_table",
//                   "alpha": a, "matrix": M, "points": PointSet}
//   Hermitian      row-major nested arrays of [re, im]

#include <nlohmann/json.hpp>

#include <vector>

#include "pkl/hermitian.hpp"
#include "pkl/kernel.hpp"
#include "pkl/multiplier.hpp"
#include "pkl/pick_analysis.hpp"
#include "pkl/proof_engine.hpp"

namespace pkl::io {

using nlohmann::json;

json encode(Complex z);
json encode(const Point& p);
json encode(const PointSet& ps);
json encode(const KernelSpec& spec);
json encode(const HermitianMatrix& m);
json encode_matrix(const Eigen::MatrixXcd& m);
json encode_vector(const Eigen::VectorXcd& v);
json encode(const PSDReport& r);
json encode(const CriterionReport& r);
json encode(const IrreducibilityReport& r);
json encode(const MultiplierData& d);
json encode(const ExtensionDisk& d);
json encode(const PickReport& r);
json encode(const CheckRecord& c);
json encode(const InductionStepRecord& s);
json encode(const ProofCertificate& c);

// Decoders throw Error{InvalidInput} on schema violations.
Complex decode_complex(const json& j);
Point decode_point(const json& j);
/// Accepts the PointSet object or a bare array of complex values.
PointSet decode_point_set(const json& j);
std::vector<Complex> decode_complex_list(const json& j);
KernelSpec decode_kernel(const json& j);
Eigen::MatrixXcd decode_matrix(const json& j);
HermitianMatrix decode_hermitian(const json& j);
MultiplierData decode_multiplier(const json& j);

}  // namespace pkl::io
