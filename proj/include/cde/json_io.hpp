#pragma once

#include <string>

#include <json.hpp>

#include "cde/codegen.hpp"
#include "cde/model.hpp"
#include "cde/oracle.hpp"
#include "cde/solver.hpp"

namespace cde::json_io {

using nlohmann::json;

// All parsers throw Error(Parse) on malformed input. Node and packet indices
// are 1-based on the wire.

Instance instance_from_json(const json& j);
json instance_to_json(const Instance& inst);
Instance read_instance(const std::string& path);
json read_json(const std::string& path);

/// Accepts integers, decimals (converted exactly) and "p/q" strings.
Weight weight_from_json(const json& j);
/// Integer when the denominator is 1, otherwise "p/q".
json weight_to_json(const Weight& w);

/// Lowercase hex without prefix; the parser also accepts "0x".
std::string element_to_hex(Element e);
Element element_from_hex(const std::string& s);

json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const json& j);

json rate_to_json(const RateVector& r);
json bits_to_json(const BitVector& v);
BitVector bits_from_json(const json& j);
json basis_to_json(const BasisSet& b);

json code_to_json(const CodeMatrix& code);
CodeMatrix code_from_json(const json& j);

json report_to_json(const RecoveryReport& r);

json solve_to_json(const SolveResult& res, std::size_t original_k);
json weighted_to_json(const WeightedResult& res);
json slo_to_json(const SloResult& res);
json oracle_to_json(const oracle::SumRateResult& sum, const oracle::WeightedResult* weighted);

}  // namespace cde::json_io
