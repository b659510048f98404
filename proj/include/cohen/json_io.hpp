#pragma once

#include <json.hpp>

#include "cohen/blockchain.hpp"
#include "cohen/dense.hpp"
#include "cohen/exact_pair.hpp"
#include "cohen/poset.hpp"
#include "cohen/sentence.hpp"
#include "cohen/surgery.hpp"

// Canonical JSON encodings: bit strings as "0101" text, index sets as arrays
// of labels, matrices as {"index_set": [...], "columns": {label: bits}}.
// Output keys are sorted and no floats appear anywhere, so re-serialization
// is byte-stable. Numeric labels are accepted as JSON numbers on input and
// written back as strings.
namespace cohen::io {

using nlohmann::json;

json to_json(const BitString& bits);
BitString bitstring_from_json(const json& j);

json to_json(const IndexSet& set);
IndexSet index_set_from_json(const json& j);

json to_json(const MatrixCondition& cond);
MatrixCondition matrix_from_json(const json& j);

json to_json(const FiniteName& name);
FiniteName name_from_json(const json& j);

// The named-requirement table: MinLength, ContainsPattern, DecidesName,
// SplitsColumns, plus the registered MarkerChaff. Unknown kinds are a
// DomainError. This is the lookup behind schedule files and the CLI.
DenseRequirement requirement_from_json(const json& j);
json to_json(const DenseRequirement& d);  // requires a serializable requirement

json to_json(const ObstacleFamily& family);
ObstacleFamily family_from_json(const json& j);

json to_json(const RequirementSchedule& schedule);
RequirementSchedule schedule_from_json(const json& j);

json to_json(const BlockchainResult& result);
BlockchainResult blockchain_result_from_json(const json& j);

// A self-contained build record: family, payload, schedule, and the result.
struct SessionRecord {
  ObstacleFamily family;
  RequirementSchedule schedule;
  BitString payload;
  BlockchainResult result;
};
json to_json(const SessionRecord& record);
SessionRecord session_record_from_json(const json& j);

json to_json(const Tower& tower);
Tower tower_from_json(const json& j);

json to_json(const ExactPairResult& result);
ExactPairResult exact_pair_result_from_json(const json& j);

json to_json(const FinitePoset& poset);
FinitePoset poset_from_json(const json& j);

json to_json(const SatWitness& witness);

json to_json(const Report& report);

// Name pairs for the exact-pair commands: [[sigma, tau], ...].
json to_json(const std::vector<std::pair<FiniteName, FiniteName>>& pairs);
std::vector<std::pair<FiniteName, FiniteName>> name_pairs_from_json(const json& j);

std::vector<DenseRequirement> requirements_from_json(const json& j);

// Canonical text: 2-space indent, sorted keys, trailing newline.
std::string dump(const json& j);

}  // namespace cohen::io
