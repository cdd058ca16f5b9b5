#include "redcap/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace redcap {

const char* to_string(Duplex d) {
    switch (d) {
        case Duplex::Tdd: return "TDD";
        case Duplex::FdFdd: return "FD-FDD";
        case Duplex::HdFdd: return "HD-FDD";
    }
    return "?";
}

const char* to_string(FrequencyRange fr) {
    return fr == FrequencyRange::Fr1 ? "FR1" : "FR2";
}

const char* to_string(UseCase u) {
    switch (u) {
        case UseCase::Wearables: return "Wearables";
        case UseCase::IndustrialSensor: return "IndustrialSensor";
        case UseCase::VideoSurveillance: return "VideoSurveillance";
        case UseCase::Custom: return "Custom";
    }
    return "?";
}

const char* to_string(DeploymentPreset p) {
    switch (p) {
        case DeploymentPreset::RuralFr1: return "RuralFR1";
        case DeploymentPreset::UrbanMacroFr1: return "UrbanMacroFR1";
        case DeploymentPreset::UrbanMicroFr1: return "UrbanMicroFR1";
        case DeploymentPreset::IndoorFr2: return "IndoorFR2";
        case DeploymentPreset::Custom: return "Custom";
    }
    return "?";
}

const char* to_string(ReqDimension d) {
    switch (d) {
        case ReqDimension::DlRate: return "dl_rate";
        case ReqDimension::UlRate: return "ul_rate";
        case ReqDimension::Latency: return "latency";
        case ReqDimension::BatteryLifetime: return "battery_lifetime";
        case ReqDimension::Reliability: return "reliability";
    }
    return "?";
}

const char* to_string(ReqStatus s) {
    switch (s) {
        case ReqStatus::Pass: return "pass";
        case ReqStatus::Fail: return "fail";
        case ReqStatus::Unevaluated: return "unevaluated";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// CapabilityProfile
// ---------------------------------------------------------------------------

namespace {

bool valid_modulation_order(int q) { return q == 2 || q == 4 || q == 6 || q == 8; }

} // namespace

void CapabilityProfile::validate() const {
    if (max_bandwidth_mhz <= 0.0)
        throw ValidationError("capability profile: max_bandwidth_mhz must be positive");
    if (rx_branches < 1)
        throw ValidationError("capability profile: rx_branches must be >= 1");
    if (dl_mimo_layers < 1)
        throw ValidationError("capability profile: dl_mimo_layers must be >= 1");
    if (dl_mimo_layers > rx_branches)
        throw ValidationError("capability profile: dl_mimo_layers must not exceed rx_branches");
    if (!valid_modulation_order(max_dl_modulation_order) ||
        !valid_modulation_order(max_ul_modulation_order))
        throw ValidationError("capability profile: modulation order must be one of 2/4/6/8 bits per symbol");
    if (max_drbs != 8 && max_drbs != 16)
        throw ValidationError("capability profile: max_drbs must be 8 or 16");
    if (sn_length_bits != 12 && sn_length_bits != 18)
        throw ValidationError("capability profile: sn_length_bits must be 12 or 18");
    if (is_redcap) {
        const double bw_cap = frequency_range == FrequencyRange::Fr1 ? 20.0 : 100.0;
        if (max_bandwidth_mhz > bw_cap) {
            std::ostringstream os;
            os << "RedCap profile exceeds the " << bw_cap << " MHz "
               << to_string(frequency_range) << " bandwidth limit ("
               << max_bandwidth_mhz << " MHz requested)";
            throw CapabilityError(os.str());
        }
        if (rx_branches > 2)
            throw CapabilityError("RedCap profile exceeds the 2 receiver branch limit");
        if (dl_mimo_layers > 2)
            throw CapabilityError("RedCap profile exceeds the 2 DL MIMO layer limit");
    }
    if (frequency_range == FrequencyRange::Fr2 && duplex_mode != Duplex::Tdd)
        throw ValidationError("capability profile: FR2 devices operate in TDD only");
}

CapabilityProfile builtin_profile(ProfileKind kind) {
    CapabilityProfile p;
    switch (kind) {
        case ProfileKind::ReferenceNrFr1:
            p.max_bandwidth_mhz = 100.0;
            p.rx_branches = 2;
            p.dl_mimo_layers = 2;
            p.max_dl_modulation_order = 8; // 256QAM
            p.max_ul_modulation_order = 6;
            p.duplex_mode = Duplex::FdFdd;
            p.frequency_range = FrequencyRange::Fr1;
            p.max_drbs = 16;
            p.sn_length_bits = 18;
            p.supports_anr = true;
            p.is_redcap = false;
            p.cost_reduction_pct = 0.0;
            break;
        case ProfileKind::ReferenceNrFr2:
            p.max_bandwidth_mhz = 200.0;
            p.rx_branches = 2;
            p.dl_mimo_layers = 2;
            p.max_dl_modulation_order = 6; // 64QAM
            p.max_ul_modulation_order = 6;
            p.duplex_mode = Duplex::Tdd;
            p.frequency_range = FrequencyRange::Fr2;
            p.max_drbs = 16;
            p.sn_length_bits = 18;
            p.supports_anr = true;
            p.is_redcap = false;
            p.cost_reduction_pct = 0.0;
            break;
        case ProfileKind::RedCapBaselineFr1:
            p.max_bandwidth_mhz = 20.0;
            p.rx_branches = 1;
            p.dl_mimo_layers = 1;
            p.max_dl_modulation_order = 6; // 64QAM
            p.max_ul_modulation_order = 6;
            p.duplex_mode = Duplex::HdFdd;
            p.frequency_range = FrequencyRange::Fr1;
            p.max_drbs = 8;
            p.sn_length_bits = 12;
            p.supports_anr = false;
            p.is_redcap = true;
            p.cost_reduction_pct = 65.0;
            break;
        case ProfileKind::RedCapBaselineFr2:
            p.max_bandwidth_mhz = 100.0;
            p.rx_branches = 2; // same minimum receiver branch count as the FR2 reference
            p.dl_mimo_layers = 1;
            p.max_dl_modulation_order = 6;
            p.max_ul_modulation_order = 6;
            p.duplex_mode = Duplex::Tdd;
            p.frequency_range = FrequencyRange::Fr2;
            p.max_drbs = 8;
            p.sn_length_bits = 12;
            p.supports_anr = false;
            p.is_redcap = true;
            p.cost_reduction_pct = 50.0;
            break;
    }
    p.validate();
    return p;
}

// ---------------------------------------------------------------------------
// UseCaseRequirement
// ---------------------------------------------------------------------------

namespace {

void check_interval(const std::optional<Interval>& iv, const char* field) {
    if (iv && iv->lo > iv->hi)
        throw ValidationError(std::string("requirement ") + field + ": interval lower bound exceeds upper bound");
}

} // namespace

void UseCaseRequirement::validate() const {
    check_interval(dl_rate_mbps, "dl_rate_mbps");
    check_interval(ul_rate_mbps, "ul_rate_mbps");
    check_interval(battery_lifetime_h, "battery_lifetime_h");
    if (latency_ms && *latency_ms <= 0.0)
        throw ValidationError("requirement latency_ms must be positive");
    if (reliability && (*reliability <= 0.0 || *reliability >= 1.0))
        throw ValidationError("requirement reliability must lie in (0,1)");
}

UseCaseRequirement wearables_requirement() {
    UseCaseRequirement r;
    r.name = UseCase::Wearables;
    r.dl_rate_mbps = Interval{5.0, 50.0};
    r.ul_rate_mbps = Interval{2.0, 5.0};
    // Latency and reliability are left unspecified for wearables.
    r.battery_lifetime_h = Interval{72.0, 336.0}; // a few days up to two weeks
    r.stationary = false;
    return r;
}

UseCaseRequirement industrial_sensor_requirement() {
    UseCaseRequirement r;
    r.name = UseCase::IndustrialSensor;
    r.dl_rate_mbps = Interval{2.0, 2.0};
    r.ul_rate_mbps = Interval{2.0, 2.0};
    r.latency_ms = 100.0;
    r.reliability = 0.9999;
    r.battery_lifetime_h = Interval{17520.0, 87600.0}; // at least a few years
    r.stationary = true;
    return r;
}

UseCaseRequirement video_surveillance_economic_requirement() {
    UseCaseRequirement r;
    r.name = UseCase::VideoSurveillance;
    r.dl_rate_mbps = Interval{2.0, 4.0};
    r.ul_rate_mbps = Interval{2.0, 4.0};
    r.latency_ms = 500.0;
    r.reliability = 0.99;
    r.stationary = true;
    return r;
}

UseCaseRequirement video_surveillance_high_end_requirement() {
    UseCaseRequirement r = video_surveillance_economic_requirement();
    r.dl_rate_mbps = Interval{7.5, 25.0};
    r.ul_rate_mbps = Interval{7.5, 25.0};
    return r;
}

std::vector<std::pair<std::string, UseCaseRequirement>> builtin_requirements() {
    return {
        {"wearables", wearables_requirement()},
        {"industrial_sensor", industrial_sensor_requirement()},
        {"video_surveillance_economic", video_surveillance_economic_requirement()},
        {"video_surveillance_high_end", video_surveillance_high_end_requirement()},
    };
}

// ---------------------------------------------------------------------------
// CarrierConfig and the transmission-bandwidth table
// ---------------------------------------------------------------------------

namespace {

struct PrbEntry {
    int scs_khz;
    double bandwidth_mhz;
    int n_prb;
};

// Static transmission-bandwidth configuration data for the (SCS, bandwidth)
// pairs this toolkit needs.
constexpr std::array<PrbEntry, 27> kPrbTable{{
    {15, 5.0, 25},   {15, 10.0, 52},  {15, 15.0, 79},  {15, 20.0, 106},
    {15, 25.0, 133}, {15, 30.0, 160}, {15, 40.0, 216}, {15, 50.0, 270},
    {30, 5.0, 11},   {30, 10.0, 24},  {30, 15.0, 38},  {30, 20.0, 51},
    {30, 25.0, 65},  {30, 30.0, 78},  {30, 40.0, 106}, {30, 50.0, 133},
    {30, 60.0, 162}, {30, 80.0, 217}, {30, 100.0, 273},
    {60, 10.0, 11},  {60, 20.0, 24},  {60, 40.0, 51},  {60, 50.0, 65},
    {60, 100.0, 135},
    {120, 50.0, 32}, {120, 100.0, 66}, {120, 200.0, 132},
}};

bool valid_scs(int scs) { return scs == 15 || scs == 30 || scs == 60 || scs == 120; }

} // namespace

std::optional<int> prb_table_lookup(int scs_khz, double bandwidth_mhz) {
    for (const auto& e : kPrbTable) {
        if (e.scs_khz == scs_khz && std::abs(e.bandwidth_mhz - bandwidth_mhz) < 1e-9)
            return e.n_prb;
    }
    return std::nullopt;
}

int prb_count_for(int scs_khz, double bandwidth_mhz) {
    if (auto n = prb_table_lookup(scs_khz, bandwidth_mhz))
        return *n;
    std::ostringstream os;
    os << "no transmission-bandwidth entry for " << bandwidth_mhz << " MHz at "
       << scs_khz << " kHz SCS";
    throw ValidationError(os.str());
}

CarrierConfig make_carrier(int scs_khz, double bandwidth_mhz, Duplex duplex,
                           double tdd_dl_fraction) {
    CarrierConfig c;
    c.scs_khz = scs_khz;
    c.bandwidth_mhz = bandwidth_mhz;
    c.duplex_mode = duplex;
    c.tdd_dl_fraction = tdd_dl_fraction;
    c.n_prb = prb_count_for(scs_khz, bandwidth_mhz);
    c.validate();
    return c;
}

void CarrierConfig::validate() const {
    if (!valid_scs(scs_khz))
        throw ValidationError("carrier: scs_khz must be one of 15/30/60/120");
    if (bandwidth_mhz <= 0.0)
        throw ValidationError("carrier: bandwidth_mhz must be positive");
    if (tdd_dl_fraction < 0.0 || tdd_dl_fraction > 1.0)
        throw ValidationError("carrier: tdd_dl_fraction must lie in [0,1]");
    const int expected = prb_count_for(scs_khz, bandwidth_mhz);
    if (n_prb != expected) {
        std::ostringstream os;
        os << "carrier: n_prb " << n_prb << " inconsistent with the transmission-bandwidth "
           << "table (" << bandwidth_mhz << " MHz @ " << scs_khz << " kHz -> " << expected << " PRB)";
        throw ValidationError(os.str());
    }
}

double ofdm_symbols_per_second(int scs_khz) {
    if (!valid_scs(scs_khz))
        throw ValidationError("scs_khz must be one of 15/30/60/120");
    const double slots_per_second = 1000.0 * (scs_khz / 15.0);
    return 14.0 * slots_per_second;
}

// ---------------------------------------------------------------------------
// DeploymentScenario
// ---------------------------------------------------------------------------

DeploymentScenario deployment_preset(DeploymentPreset preset) {
    DeploymentScenario s;
    s.name = preset;
    switch (preset) {
        case DeploymentPreset::RuralFr1:
            s.carrier_freq_ghz = 0.7;
            s.dl_psd_dbm_per_mhz = 33.0;
            s.ue_trp_dbm = 23.0;
            break;
        case DeploymentPreset::UrbanMacroFr1:
            s.carrier_freq_ghz = 2.6;
            s.dl_psd_dbm_per_mhz = 33.0;
            s.ue_trp_dbm = 23.0;
            break;
        case DeploymentPreset::UrbanMicroFr1:
            s.carrier_freq_ghz = 2.6;
            s.dl_psd_dbm_per_mhz = 24.0;
            s.ue_trp_dbm = 23.0;
            break;
        case DeploymentPreset::IndoorFr2:
            s.carrier_freq_ghz = 28.0;
            s.dl_psd_dbm_per_mhz = 23.0;
            s.ue_trp_dbm = 23.0;
            break;
        case DeploymentPreset::Custom:
            break;
    }
    return s;
}

FrequencyRange frequency_range_of(const DeploymentScenario& s) {
    if (s.name == DeploymentPreset::IndoorFr2)
        return FrequencyRange::Fr2;
    if (s.name == DeploymentPreset::Custom)
        return s.carrier_freq_ghz >= 24.0 ? FrequencyRange::Fr2 : FrequencyRange::Fr1;
    return FrequencyRange::Fr1;
}

// ---------------------------------------------------------------------------
// Requirement checking
// ---------------------------------------------------------------------------

namespace {

void add_lower_bound_check(RequirementReport& report, ReqDimension dim,
                           const std::optional<Interval>& required,
                           std::optional<double> achieved) {
    if (!required)
        return;
    DimensionVerdict v{dim, ReqStatus::Unevaluated, 0.0};
    if (achieved) {
        v.margin = *achieved - required->lo;
        v.status = *achieved >= required->lo ? ReqStatus::Pass : ReqStatus::Fail;
        ++report.evaluated_count;
        if (v.status == ReqStatus::Fail)
            report.overall_pass = false;
    }
    report.dimensions.push_back(v);
}

void add_upper_bound_check(RequirementReport& report, ReqDimension dim,
                           std::optional<double> required,
                           std::optional<double> achieved) {
    if (!required)
        return;
    DimensionVerdict v{dim, ReqStatus::Unevaluated, 0.0};
    if (achieved) {
        v.margin = *required - *achieved;
        v.status = *achieved <= *required ? ReqStatus::Pass : ReqStatus::Fail;
        ++report.evaluated_count;
        if (v.status == ReqStatus::Fail)
            report.overall_pass = false;
    }
    report.dimensions.push_back(v);
}

} // namespace

RequirementReport check_requirements(const UseCaseRequirement& req,
                                     double achieved_dl_mbps,
                                     double achieved_ul_mbps,
                                     std::optional<double> achieved_lifetime_h,
                                     std::optional<double> achieved_latency_ms,
                                     std::optional<double> achieved_reliability) {
    req.validate();
    if (achieved_dl_mbps < 0.0 || achieved_ul_mbps < 0.0 ||
        (achieved_lifetime_h && *achieved_lifetime_h < 0.0) ||
        (achieved_latency_ms && *achieved_latency_ms < 0.0))
        throw ValidationError("check_requirements: achieved values must be non-negative");

    RequirementReport report;
    report.use_case = req.name;

    add_lower_bound_check(report, ReqDimension::DlRate, req.dl_rate_mbps, achieved_dl_mbps);
    add_lower_bound_check(report, ReqDimension::UlRate, req.ul_rate_mbps, achieved_ul_mbps);
    add_upper_bound_check(report, ReqDimension::Latency, req.latency_ms, achieved_latency_ms);
    add_lower_bound_check(report, ReqDimension::BatteryLifetime, req.battery_lifetime_h,
                          achieved_lifetime_h);

    if (req.reliability) {
        DimensionVerdict v{ReqDimension::Reliability, ReqStatus::Unevaluated, 0.0};
        if (achieved_reliability) {
            v.margin = *achieved_reliability - *req.reliability;
            v.status = *achieved_reliability >= *req.reliability ? ReqStatus::Pass : ReqStatus::Fail;
            ++report.evaluated_count;
            if (v.status == ReqStatus::Fail)
                report.overall_pass = false;
        }
        report.dimensions.push_back(v);
    }

    return report;
}

} // namespace redcap
