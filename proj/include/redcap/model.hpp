#pragma once

#include <optional>
#include <string>
#include <vector>

#include "redcap/errors.hpp"

namespace redcap {

enum class Duplex { Tdd, FdFdd, HdFdd };
enum class FrequencyRange { Fr1, Fr2 };

const char* to_string(Duplex d);
const char* to_string(FrequencyRange fr);

/// Closed numeric interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool operator==(const Interval&) const = default;
};

// ---------------------------------------------------------------------------
// Device capabilities
// ---------------------------------------------------------------------------

/// Radio capabilities of one device class. RedCap baseline and reference NR
/// presets are available through builtin_profile().
struct CapabilityProfile {
    double max_bandwidth_mhz = 0.0;
    int rx_branches = 0;
    int dl_mimo_layers = 0;
    int max_dl_modulation_order = 0; // bits/symbol: 2 QPSK .. 8 256QAM
    int max_ul_modulation_order = 0;
    Duplex duplex_mode = Duplex::Tdd;
    FrequencyRange frequency_range = FrequencyRange::Fr1;
    int max_drbs = 16;
    int sn_length_bits = 18;
    bool supports_anr = true;
    bool is_redcap = false;
    // Display-only metadata on presets; never enters any computation.
    std::optional<double> cost_reduction_pct;

    bool operator==(const CapabilityProfile&) const = default;

    /// Throws CapabilityError/ValidationError if any profile invariant is
    /// broken (RedCap bandwidth/branch/layer caps, DRB/SN value sets, ...).
    void validate() const;
};

enum class ProfileKind { ReferenceNrFr1, ReferenceNrFr2, RedCapBaselineFr1, RedCapBaselineFr2 };

/// Returns the preset capability set for the given device column.
CapabilityProfile builtin_profile(ProfileKind kind);

// ---------------------------------------------------------------------------
// Use-case requirements
// ---------------------------------------------------------------------------

enum class UseCase { Wearables, IndustrialSensor, VideoSurveillance, Custom };

const char* to_string(UseCase u);

struct UseCaseRequirement {
    UseCase name = UseCase::Custom;
    std::optional<Interval> dl_rate_mbps;
    std::optional<Interval> ul_rate_mbps;
    std::optional<double> latency_ms;
    std::optional<double> reliability;        // probability in (0,1)
    std::optional<Interval> battery_lifetime_h;
    bool stationary = false;

    bool operator==(const UseCaseRequirement&) const = default;

    void validate() const;
};

// Shipped requirement presets. Video surveillance comes in two grades with
// distinct reference bit rates, hence two presets for the same use case.
UseCaseRequirement wearables_requirement();
UseCaseRequirement industrial_sensor_requirement();
UseCaseRequirement video_surveillance_economic_requirement();
UseCaseRequirement video_surveillance_high_end_requirement();

/// All shipped presets, in a fixed order (used by the report subcommand).
std::vector<std::pair<std::string, UseCaseRequirement>> builtin_requirements();

// ---------------------------------------------------------------------------
// Carrier configuration
// ---------------------------------------------------------------------------

struct CarrierConfig {
    int scs_khz = 15;             // one of 15, 30, 60, 120
    double bandwidth_mhz = 0.0;
    Duplex duplex_mode = Duplex::FdFdd;
    double tdd_dl_fraction = 0.5; // fraction of time-domain resources for DL
    int n_prb = 0;

    bool operator==(const CarrierConfig&) const = default;

    void validate() const;
};

/// Transmission-bandwidth table lookup: PRB count for an (SCS, bandwidth)
/// pair, or nullopt if the pair is not in the shipped table.
std::optional<int> prb_table_lookup(int scs_khz, double bandwidth_mhz);

/// Same, but throws ValidationError naming the pair when unknown.
int prb_count_for(int scs_khz, double bandwidth_mhz);

/// Builds a carrier with n_prb filled in from the transmission-bandwidth table.
CarrierConfig make_carrier(int scs_khz, double bandwidth_mhz, Duplex duplex,
                           double tdd_dl_fraction = 0.5);

/// OFDM symbols per second for the given numerology (14 symbols/slot).
double ofdm_symbols_per_second(int scs_khz);

// ---------------------------------------------------------------------------
// Deployment scenarios
// ---------------------------------------------------------------------------

enum class DeploymentPreset { RuralFr1, UrbanMacroFr1, UrbanMicroFr1, IndoorFr2, Custom };

const char* to_string(DeploymentPreset p);

struct DeploymentScenario {
    DeploymentPreset name = DeploymentPreset::Custom;
    double carrier_freq_ghz = 0.0;
    double dl_psd_dbm_per_mhz = 0.0;
    double ue_trp_dbm = 23.0; // total radiated power

    bool operator==(const DeploymentScenario&) const = default;
};

DeploymentScenario deployment_preset(DeploymentPreset preset);

FrequencyRange frequency_range_of(const DeploymentScenario& s);

// ---------------------------------------------------------------------------
// Requirement checking
// ---------------------------------------------------------------------------

enum class ReqDimension { DlRate, UlRate, Latency, BatteryLifetime, Reliability };
enum class ReqStatus { Pass, Fail, Unevaluated };

const char* to_string(ReqDimension d);
const char* to_string(ReqStatus s);

struct DimensionVerdict {
    ReqDimension dimension;
    ReqStatus status;
    double margin = 0.0; // in the requirement's units; meaningful when evaluated
};

struct RequirementReport {
    UseCase use_case = UseCase::Custom;
    std::vector<DimensionVerdict> dimensions; // one per dimension the requirement specifies
    int evaluated_count = 0;
    bool overall_pass = true; // no evaluated dimension failed
};

/// Checks achieved figures against a use-case requirement. Rates and lifetime
/// pass against the requirement's lower bound; latency passes when at or
/// below the required value. A specified dimension with no achieved value is
/// reported Unevaluated, never failed.
RequirementReport check_requirements(const UseCaseRequirement& req,
                                     double achieved_dl_mbps,
                                     double achieved_ul_mbps,
                                     std::optional<double> achieved_lifetime_h = std::nullopt,
                                     std::optional<double> achieved_latency_ms = std::nullopt,
                                     std::optional<double> achieved_reliability = std::nullopt);

} // namespace redcap
