#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "lt/axioms.hpp"
#include "lt/lambda.hpp"
#include "lt/order.hpp"
#include "lt/tensorspace.hpp"

namespace lt::io {

using json = nlohmann::json;

// Complex entries are [re, im]; matrices are row-major nested arrays.
json to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json to_json(const SpaceSpec& spec);
SpaceSpec space_from_json(const json& j);

json to_json(const TensorElement& el);
TensorElement element_from_json(const json& j);

json to_json(const Decomposition& dec);
Decomposition decomposition_from_json(const json& j);

json to_json(const ConeCertificate& cert);
ConeCertificate certificate_from_json(const json& j);

/// {"kind":"kronecker"|"schur"|"matprod","arity":m} or
/// {"kind":"mixed","groups":[{"slots":[..],"product":".."},..]}.
json to_json(const LambdaSequence& lambda);
LambdaSequence lambda_from_json(const json& j);

json to_json(const Counterexample& ce);
json to_json(const ConditionReport& rep);
json to_json(const AxiomReport& rep);

/// Parses a file; ParseError carries the byte offset on malformed input.
json load_json_file(const std::string& path);

/// Temp-file-plus-rename write.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace lt::io
