#pragma once

#include <string>

#include "json.hpp"

#include "seqspace/operators.hpp"
#include "seqspace/orlicz_function.hpp"
#include "seqspace/positivity.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/theorems.hpp"

namespace seqspace {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "seqspace/1";

json to_json(const OrliczFunction& phi);
OrliczFunction orlicz_function_from_json(const json& j);

json to_json(const SpaceSpec& s);
SpaceSpec space_from_json(const json& j);
SpaceSpec space_from_file(const std::string& path);

json to_json(const LinearOperator& T);
LinearOperator operator_from_json(const json& j);

json to_json(const ProjectionSpec& ps);
ProjectionSpec projection_from_json(const json& j);

const char* verdict_name(Verdict v);
json to_json(const PositivityReport& r);
json to_json(const OpNormResult& r);
json to_json(const PropACheck& r);
json to_json(const MinProjResult& r);
json to_json(const LorentzHyperplaneResult& r);
json to_json(const PhiClassification& r);
json to_json(const OrliczSubspaceResult& r);

/// FNV-1a over the canonical dump; embedded in every CLI report.
std::string config_hash(const json& config);

}  // namespace seqspace
