#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "redcap/access.hpp"
#include "redcap/bwp.hpp"
#include "redcap/capacity.hpp"
#include "redcap/errors.hpp"
#include "redcap/model.hpp"
#include "redcap/power.hpp"

namespace redcap {

struct NamedProfile {
    std::string name;
    CapabilityProfile profile;

    bool operator==(const NamedProfile&) const = default;
};

struct NamedCarrier {
    std::string name;
    CarrierConfig carrier;

    bool operator==(const NamedCarrier&) const = default;
};

/// Battery sweep settings: (cycle, IAT) grid on top of a power model.
/// Grid cycles above the 2.56 s baseline run with eDRX enabled.
struct PowerSection {
    PowerModel model;
    RrcState rrc_state = RrcState::Idle;
    std::vector<double> cycle_grid_s = {2.56, 61.44, 655.36};
    std::vector<double> iat_grid_s = {600.0, 3600.0, 86400.0};
    ArrivalProcess arrival_process = ArrivalProcess::Periodic;

    bool operator==(const PowerSection&) const = default;
};

struct BwpSection {
    CarrierLayout layout{273, 30, {130, 149}, {120, 167}, Duplex::Tdd};
    Release17Features features{true, true, true};
    std::string profile = "redcap"; // profile reference
    int pucch_block_prbs = 2;

    bool operator==(const BwpSection&) const = default;
};

struct AccessSection {
    AccessConfig config;
    // (profile reference, device count) pairs forming the population.
    std::vector<std::pair<std::string, int>> devices;
    std::uint64_t seed = 1;

    bool operator==(const AccessSection&) const = default;
};

struct CapacitySection {
    CapacityScenario scenario;
    std::string embb_profile = "reference"; // profile references
    std::string redcap_profile = "redcap";

    bool operator==(const CapacitySection&) const = default;
};

enum class OutputFormat { Csv, Json };

const char* to_string(OutputFormat f);
OutputFormat output_format_from_string(const std::string& s);

struct OutputSection {
    OutputFormat format = OutputFormat::Csv;
    std::string path = "reports";

    bool operator==(const OutputSection&) const = default;
};

/// One scenario file drives every subcommand.
struct ScenarioFile {
    std::vector<NamedProfile> profiles;
    std::vector<NamedCarrier> carriers;
    DeploymentScenario deployment;
    PowerSection power;
    BwpSection bwp;
    AccessSection access;
    CapacitySection capacity;
    OutputSection output;

    // Sections that were absent in the input and filled with defaults.
    std::vector<std::string> injected_defaults;

    bool operator==(const ScenarioFile&) const = default;

    /// Resolves a profile reference; throws ValidationError when undefined.
    const CapabilityProfile& profile(const std::string& name) const;
    const CarrierConfig& carrier(const std::string& name) const;
};

/// Parses and fully validates a scenario. Throws ScenarioError carrying one
/// ParseIssue per problem (syntax, unknown key, missing section, invariant,
/// unresolved reference).
ScenarioFile parse_scenario(const std::string& text);

/// Serializes with full numeric precision so parse(serialize(s)) == s.
std::string serialize_scenario(const ScenarioFile& s);

/// Shipped example scenarios (also provided as files under data/scenarios/).
ScenarioFile example_scenario_fr1_urban_micro();
ScenarioFile example_scenario_fr2_indoor();

} // namespace redcap
