#pragma once

// JSON state files and report payloads.
//
// State file:
//   {"dims": [2, 2], "amplitudes": [{"re": 0.7071067811865476, "im": 0.0}, ...]}
// with amplitudes row-major, last site fastest. Doubles are written in the
// shortest form that parses back to the identical value.

#include "borromean/classical.hpp"
#include "borromean/parity.hpp"
#include "borromean/product.hpp"
#include "borromean/schmidt.hpp"
#include "borromean/search.hpp"
#include "borromean/tensor.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>

namespace borromean {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Json to_json(const ComplexMatrix& m);
Json to_json(const PureState& psi);
Json to_json(const DensityMatrix& rho);
Json to_json(const JointDistribution& joint);
Json to_json(const ProductReport& report);
Json to_json(const BorromeanReport& report);
Json to_json(const ProductApproximation& approx);
Json to_json(const NormalForm& nf);
Json to_json(const PropertyViolationReport& report);
Json to_json(const std::vector<MixedEntry>& entries);
Json to_json(const ClassicalBorromeanReport& report);
Json to_json(const ParityComparison& comparison);
Json to_json(const CampaignReport& report);
Json to_json(const SearchReport& report);

/// Parses a state file document. Throws std::invalid_argument on any schema
/// or validity problem.
PureState state_from_json(const Json& document);
PureState read_state(std::istream& in);
void write_state(std::ostream& out, const PureState& psi);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& document);

}  // namespace borromean
