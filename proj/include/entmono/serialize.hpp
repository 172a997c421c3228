#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "entmono/ensemble.hpp"
#include "entmono/entropy.hpp"
#include "entmono/measures.hpp"
#include "entmono/monogamy.hpp"
#include "entmono/roof.hpp"
#include "entmono/structure.hpp"
#include "entmono/types.hpp"

namespace entmono {

using Json = nlohmann::json;

/// States persist as {"signature": [ints], "re": [floats], "im": [floats]},
/// amplitudes row-major over the signature; density matrices use the same
/// shape with the flattened (row-major) matrix. The two are told apart by
/// the array length.
Json state_to_json(const PureState& psi);
Json state_to_json(const DensityMatrix& rho);

using AnyState = std::variant<PureState, DensityMatrix>;
AnyState state_from_json(const Json& j);

/// File I/O; raises io_error with the path in the message.
Json read_json_file(const std::string& path);
void write_json_file(const Json& j, const std::string& path);
AnyState load_state(const std::string& path);

Json to_json(const OptimizerConfig& cfg);
OptimizerConfig optimizer_from_json(const Json& j);

Json to_json(const EnsembleSpec& spec);
EnsembleSpec ensemble_from_json(const Json& j);

Json to_json(const Decomposition& dec, const DimSignature& sig);
Json to_json(const RoofResult& result);
Json to_json(const ConcavityReport& report);
Json to_json(const AuditRecord& record);
Json to_json(const CkwResult& result);
Json to_json(const AlphaSearchResult& result);
Json to_json(const FactorizationResult& result);

}  // namespace entmono
