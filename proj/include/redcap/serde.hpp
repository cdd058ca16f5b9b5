#pragma once

#include <json.hpp>

#include "redcap/access.hpp"
#include "redcap/bwp.hpp"
#include "redcap/capacity.hpp"
#include "redcap/datarate.hpp"
#include "redcap/linkbudget.hpp"
#include "redcap/model.hpp"
#include "redcap/power.hpp"

namespace redcap {

// Insertion-ordered JSON keeps emitted files readable and byte-stable.
using Json = nlohmann::ordered_json;

// Enum <-> string conversions (throw ValidationError on unknown names).
Duplex duplex_from_string(const std::string& s);
FrequencyRange frequency_range_from_string(const std::string& s);
UseCase use_case_from_string(const std::string& s);
DeploymentPreset deployment_preset_from_string(const std::string& s);
RrcState rrc_state_from_string(const std::string& s);
ArrivalProcess arrival_process_from_string(const std::string& s);
Direction direction_from_string(const std::string& s);
IdMethod id_method_from_string(const std::string& s);
Scheduler scheduler_from_string(const std::string& s);
ProfileKind profile_kind_from_string(const std::string& s);
const char* to_string(ProfileKind k);

// model
void to_json(Json& j, const Interval& v);
void from_json(const Json& j, Interval& v);
void to_json(Json& j, const CapabilityProfile& v);
void from_json(const Json& j, CapabilityProfile& v);
void to_json(Json& j, const UseCaseRequirement& v);
void from_json(const Json& j, UseCaseRequirement& v);
void to_json(Json& j, const CarrierConfig& v);
void from_json(const Json& j, CarrierConfig& v);
void to_json(Json& j, const DeploymentScenario& v);
void from_json(const Json& j, DeploymentScenario& v);
void to_json(Json& j, const RequirementReport& v);

// datarate
void to_json(Json& j, const RateParams& v);
void from_json(const Json& j, RateParams& v);

// power
void to_json(Json& j, const PowerModel& v);
void from_json(const Json& j, PowerModel& v);
void to_json(Json& j, const DrxConfig& v);
void from_json(const Json& j, DrxConfig& v);
void to_json(Json& j, const TrafficPattern& v);
void from_json(const Json& j, TrafficPattern& v);

// bwp
void to_json(Json& j, const PrbRange& v);
void from_json(const Json& j, PrbRange& v);
void to_json(Json& j, const CarrierLayout& v);
void from_json(const Json& j, CarrierLayout& v);
void to_json(Json& j, const Release17Features& v);
void from_json(const Json& j, Release17Features& v);
void to_json(Json& j, const BwpConfig& v);
void to_json(Json& j, const FragReport& v);
void to_json(Json& j, const BwpPlan& v);

// access
void to_json(Json& j, const MsgCost& v);
void from_json(const Json& j, MsgCost& v);
void to_json(Json& j, const AccessConfig& v);
void from_json(const Json& j, AccessConfig& v);
void to_json(Json& j, const AccessOutcome& v);
void to_json(Json& j, const AccessStats& v);

// capacity
void to_json(Json& j, const TrafficModel& v);
void from_json(const Json& j, TrafficModel& v);
void to_json(Json& j, const ThroughputReport& v);

// linkbudget
void to_json(Json& j, const CoverageReport& v);

/// Rounds a double to six significant digits for report emission.
double round6(double x);

} // namespace redcap
