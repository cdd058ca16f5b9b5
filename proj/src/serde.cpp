#include "redcap/serde.hpp"

#include <charconv>
#include <cstdlib>

namespace redcap {

namespace {

template <typename Enum, std::size_t N>
Enum enum_from(const std::string& s, const std::array<Enum, N>& values, const char* what) {
    for (Enum v : values)
        if (s == to_string(v))
            return v;
    throw ValidationError(std::string("unknown ") + what + ": '" + s + "'");
}

} // namespace

Duplex duplex_from_string(const std::string& s) {
    return enum_from(s, std::array{Duplex::Tdd, Duplex::FdFdd, Duplex::HdFdd}, "duplex mode");
}

FrequencyRange frequency_range_from_string(const std::string& s) {
    return enum_from(s, std::array{FrequencyRange::Fr1, FrequencyRange::Fr2}, "frequency range");
}

UseCase use_case_from_string(const std::string& s) {
    return enum_from(s,
                     std::array{UseCase::Wearables, UseCase::IndustrialSensor,
                                UseCase::VideoSurveillance, UseCase::Custom},
                     "use case");
}

DeploymentPreset deployment_preset_from_string(const std::string& s) {
    return enum_from(s,
                     std::array{DeploymentPreset::RuralFr1, DeploymentPreset::UrbanMacroFr1,
                                DeploymentPreset::UrbanMicroFr1, DeploymentPreset::IndoorFr2,
                                DeploymentPreset::Custom},
                     "deployment preset");
}

RrcState rrc_state_from_string(const std::string& s) {
    return enum_from(s, std::array{RrcState::Idle, RrcState::Inactive}, "rrc state");
}

ArrivalProcess arrival_process_from_string(const std::string& s) {
    return enum_from(s, std::array{ArrivalProcess::Periodic, ArrivalProcess::Poisson},
                     "arrival process");
}

Direction direction_from_string(const std::string& s) {
    return enum_from(s, std::array{Direction::Dl, Direction::Ul}, "direction");
}

IdMethod id_method_from_string(const std::string& s) {
    return enum_from(s,
                     std::array{IdMethod::Msg1SeparatePrach, IdMethod::Msg3Lcid,
                                IdMethod::PostMsg4Capability},
                     "identification method");
}

Scheduler scheduler_from_string(const std::string& s) {
    return enum_from(s, std::array{Scheduler::RoundRobin, Scheduler::ProportionalFair},
                     "scheduler");
}

const char* to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::ReferenceNrFr1: return "ReferenceNrFr1";
        case ProfileKind::ReferenceNrFr2: return "ReferenceNrFr2";
        case ProfileKind::RedCapBaselineFr1: return "RedCapBaselineFr1";
        case ProfileKind::RedCapBaselineFr2: return "RedCapBaselineFr2";
    }
    return "?";
}

ProfileKind profile_kind_from_string(const std::string& s) {
    return enum_from(s,
                     std::array{ProfileKind::ReferenceNrFr1, ProfileKind::ReferenceNrFr2,
                                ProfileKind::RedCapBaselineFr1, ProfileKind::RedCapBaselineFr2},
                     "profile preset");
}

double round6(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 6);
    *res.ptr = '\0';
    return std::strtod(buf, nullptr);
}

// ---------------------------------------------------------------------------
// model
// ---------------------------------------------------------------------------

void to_json(Json& j, const Interval& v) { j = Json{{"lo", v.lo}, {"hi", v.hi}}; }

void from_json(const Json& j, Interval& v) {
    v.lo = j.at("lo").get<double>();
    v.hi = j.at("hi").get<double>();
}

void to_json(Json& j, const CapabilityProfile& v) {
    j = Json{
        {"max_bandwidth_mhz", v.max_bandwidth_mhz},
        {"rx_branches", v.rx_branches},
        {"dl_mimo_layers", v.dl_mimo_layers},
        {"max_dl_modulation_order", v.max_dl_modulation_order},
        {"max_ul_modulation_order", v.max_ul_modulation_order},
        {"duplex_mode", to_string(v.duplex_mode)},
        {"frequency_range", to_string(v.frequency_range)},
        {"max_drbs", v.max_drbs},
        {"sn_length_bits", v.sn_length_bits},
        {"supports_anr", v.supports_anr},
        {"is_redcap", v.is_redcap},
    };
    if (v.cost_reduction_pct)
        j["cost_reduction_pct"] = *v.cost_reduction_pct;
}

void from_json(const Json& j, CapabilityProfile& v) {
    v.max_bandwidth_mhz = j.at("max_bandwidth_mhz").get<double>();
    v.rx_branches = j.at("rx_branches").get<int>();
    v.dl_mimo_layers = j.at("dl_mimo_layers").get<int>();
    v.max_dl_modulation_order = j.at("max_dl_modulation_order").get<int>();
    v.max_ul_modulation_order = j.at("max_ul_modulation_order").get<int>();
    v.duplex_mode = duplex_from_string(j.at("duplex_mode").get<std::string>());
    v.frequency_range = frequency_range_from_string(j.at("frequency_range").get<std::string>());
    v.max_drbs = j.at("max_drbs").get<int>();
    v.sn_length_bits = j.at("sn_length_bits").get<int>();
    v.supports_anr = j.at("supports_anr").get<bool>();
    v.is_redcap = j.at("is_redcap").get<bool>();
    if (j.contains("cost_reduction_pct"))
        v.cost_reduction_pct = j.at("cost_reduction_pct").get<double>();
    v.validate();
}

void to_json(Json& j, const UseCaseRequirement& v) {
    j = Json{{"name", to_string(v.name)}, {"stationary", v.stationary}};
    if (v.dl_rate_mbps)
        j["dl_rate_mbps"] = *v.dl_rate_mbps;
    if (v.ul_rate_mbps)
        j["ul_rate_mbps"] = *v.ul_rate_mbps;
    if (v.latency_ms)
        j["latency_ms"] = *v.latency_ms;
    if (v.reliability)
        j["reliability"] = *v.reliability;
    if (v.battery_lifetime_h)
        j["battery_lifetime_h"] = *v.battery_lifetime_h;
}

void from_json(const Json& j, UseCaseRequirement& v) {
    v.name = use_case_from_string(j.at("name").get<std::string>());
    v.stationary = j.value("stationary", false);
    if (j.contains("dl_rate_mbps"))
        v.dl_rate_mbps = j.at("dl_rate_mbps").get<Interval>();
    if (j.contains("ul_rate_mbps"))
        v.ul_rate_mbps = j.at("ul_rate_mbps").get<Interval>();
    if (j.contains("latency_ms"))
        v.latency_ms = j.at("latency_ms").get<double>();
    if (j.contains("reliability"))
        v.reliability = j.at("reliability").get<double>();
    if (j.contains("battery_lifetime_h"))
        v.battery_lifetime_h = j.at("battery_lifetime_h").get<Interval>();
    v.validate();
}

void to_json(Json& j, const CarrierConfig& v) {
    j = Json{
        {"scs_khz", v.scs_khz},
        {"bandwidth_mhz", v.bandwidth_mhz},
        {"duplex_mode", to_string(v.duplex_mode)},
        {"tdd_dl_fraction", v.tdd_dl_fraction},
        {"n_prb", v.n_prb},
    };
}

void from_json(const Json& j, CarrierConfig& v) {
    v.scs_khz = j.at("scs_khz").get<int>();
    v.bandwidth_mhz = j.at("bandwidth_mhz").get<double>();
    v.duplex_mode = duplex_from_string(j.at("duplex_mode").get<std::string>());
    v.tdd_dl_fraction = j.value("tdd_dl_fraction", 0.5);
    v.n_prb = j.contains("n_prb") ? j.at("n_prb").get<int>()
                                  : prb_count_for(v.scs_khz, v.bandwidth_mhz);
    v.validate();
}

void to_json(Json& j, const DeploymentScenario& v) {
    j = Json{
        {"name", to_string(v.name)},
        {"carrier_freq_ghz", v.carrier_freq_ghz},
        {"dl_psd_dbm_per_mhz", v.dl_psd_dbm_per_mhz},
        {"ue_trp_dbm", v.ue_trp_dbm},
    };
}

void from_json(const Json& j, DeploymentScenario& v) {
    v = deployment_preset(deployment_preset_from_string(j.at("name").get<std::string>()));
    if (j.contains("carrier_freq_ghz"))
        v.carrier_freq_ghz = j.at("carrier_freq_ghz").get<double>();
    if (j.contains("dl_psd_dbm_per_mhz"))
        v.dl_psd_dbm_per_mhz = j.at("dl_psd_dbm_per_mhz").get<double>();
    if (j.contains("ue_trp_dbm"))
        v.ue_trp_dbm = j.at("ue_trp_dbm").get<double>();
}

void to_json(Json& j, const RequirementReport& v) {
    Json dims = Json::array();
    for (const auto& d : v.dimensions) {
        Json e{{"dimension", to_string(d.dimension)}, {"status", to_string(d.status)}};
        if (d.status != ReqStatus::Unevaluated)
            e["margin"] = round6(d.margin);
        dims.push_back(e);
    }
    j = Json{
        {"use_case", to_string(v.use_case)},
        {"overall_pass", v.overall_pass},
        {"evaluated_count", v.evaluated_count},
        {"dimensions", dims},
    };
}

// ---------------------------------------------------------------------------
// datarate
// ---------------------------------------------------------------------------

void to_json(Json& j, const RateParams& v) {
    j = Json{
        {"layers", v.layers},
        {"modulation_order", v.modulation_order},
        {"code_rate_max", v.code_rate_max},
        {"overhead_fraction", v.overhead_fraction},
        {"scaling_factor", v.scaling_factor},
    };
}

void from_json(const Json& j, RateParams& v) {
    v.layers = j.value("layers", 1);
    v.modulation_order = j.value("modulation_order", 6);
    v.code_rate_max = j.value("code_rate_max", 948.0 / 1024.0);
    v.overhead_fraction = j.value("overhead_fraction", 0.14);
    v.scaling_factor = j.value("scaling_factor", 1.0);
    v.validate();
}

// ---------------------------------------------------------------------------
// power
// ---------------------------------------------------------------------------

void to_json(Json& j, const PowerModel& v) {
    j = Json{
        {"p_deep_sleep", v.p_deep_sleep},
        {"p_light_sleep", v.p_light_sleep},
        {"p_paging_monitor", v.p_paging_monitor},
        {"p_data_session", v.p_data_session},
        {"t_paging_monitor_s", v.t_paging_monitor_s},
        {"t_data_session_s", v.t_data_session_s},
        {"e_transition", v.e_transition},
        {"battery_capacity_unit_s", v.battery_capacity_unit_s},
    };
}

void from_json(const Json& j, PowerModel& v) {
    const PowerModel d;
    v.p_deep_sleep = j.value("p_deep_sleep", d.p_deep_sleep);
    v.p_light_sleep = j.value("p_light_sleep", d.p_light_sleep);
    v.p_paging_monitor = j.value("p_paging_monitor", d.p_paging_monitor);
    v.p_data_session = j.value("p_data_session", d.p_data_session);
    v.t_paging_monitor_s = j.value("t_paging_monitor_s", d.t_paging_monitor_s);
    v.t_data_session_s = j.value("t_data_session_s", d.t_data_session_s);
    v.e_transition = j.value("e_transition", d.e_transition);
    v.battery_capacity_unit_s = j.value("battery_capacity_unit_s", d.battery_capacity_unit_s);
    v.validate();
}

void to_json(Json& j, const DrxConfig& v) {
    j = Json{
        {"rrc_state", to_string(v.rrc_state)},
        {"cycle_s", v.cycle_s},
        {"edrx_enabled", v.edrx_enabled},
    };
}

void from_json(const Json& j, DrxConfig& v) {
    v.rrc_state = rrc_state_from_string(j.at("rrc_state").get<std::string>());
    v.cycle_s = j.at("cycle_s").get<double>();
    v.edrx_enabled = j.value("edrx_enabled", false);
    v.validate();
}

void to_json(Json& j, const TrafficPattern& v) {
    j = Json{
        {"iat_s", v.iat_s},
        {"arrival_process", to_string(v.arrival_process)},
    };
}

void from_json(const Json& j, TrafficPattern& v) {
    v.iat_s = j.at("iat_s").get<double>();
    v.arrival_process =
        arrival_process_from_string(j.value("arrival_process", std::string("Periodic")));
    v.validate();
}

// ---------------------------------------------------------------------------
// bwp
// ---------------------------------------------------------------------------

void to_json(Json& j, const PrbRange& v) { j = Json{{"first", v.first}, {"last", v.last}}; }

void from_json(const Json& j, PrbRange& v) {
    v.first = j.at("first").get<int>();
    v.last = j.at("last").get<int>();
}

void to_json(Json& j, const CarrierLayout& v) {
    j = Json{
        {"n_prb", v.n_prb},
        {"scs_khz", v.scs_khz},
        {"ssb_prb_range", v.ssb_prb_range},
        {"coreset0_prb_range", v.coreset0_prb_range},
        {"duplex_mode", to_string(v.duplex_mode)},
    };
}

void from_json(const Json& j, CarrierLayout& v) {
    v.n_prb = j.at("n_prb").get<int>();
    v.scs_khz = j.value("scs_khz", 30);
    v.ssb_prb_range = j.at("ssb_prb_range").get<PrbRange>();
    v.coreset0_prb_range = j.at("coreset0_prb_range").get<PrbRange>();
    v.duplex_mode = duplex_from_string(j.at("duplex_mode").get<std::string>());
    v.validate();
}

void to_json(Json& j, const Release17Features& v) {
    j = Json{
        {"separate_initial_bwp", v.separate_initial_bwp},
        {"hopping_disable_allowed", v.hopping_disable_allowed},
        {"dl_bwp_without_ssb_allowed", v.dl_bwp_without_ssb_allowed},
    };
}

void from_json(const Json& j, Release17Features& v) {
    v.separate_initial_bwp = j.value("separate_initial_bwp", false);
    v.hopping_disable_allowed = j.value("hopping_disable_allowed", false);
    v.dl_bwp_without_ssb_allowed = j.value("dl_bwp_without_ssb_allowed", false);
}

void to_json(Json& j, const BwpConfig& v) {
    j = Json{
        {"owner", to_string(v.owner)},
        {"direction", to_string(v.direction)},
        {"prb_range", v.prb_range},
        {"pucch_hopping", to_string(v.pucch_hopping)},
        {"contains_ssb_coreset0", v.contains_ssb_coreset0},
        {"release17_features", v.release17_features},
    };
}

void to_json(Json& j, const FragReport& v) {
    j = Json{
        {"largest_contiguous_prbs", v.largest_contiguous_prbs},
        {"free_prbs_total", v.free_prbs_total},
        {"fragmentation_ratio", round6(v.fragmentation_ratio)},
    };
}

void to_json(Json& j, const BwpPlan& v) {
    j = Json{
        {"ul", v.ul},
        {"dl", v.dl},
        {"fragmentation", v.frag},
        {"pucch_blocks", v.pucch_blocks},
    };
}

// ---------------------------------------------------------------------------
// access
// ---------------------------------------------------------------------------

void to_json(Json& j, const MsgCost& v) { j = Json{{"narrow", v.narrow}, {"wide", v.wide}}; }

void from_json(const Json& j, MsgCost& v) {
    v.narrow = j.at("narrow").get<int>();
    v.wide = j.at("wide").get<int>();
}

void to_json(Json& j, const AccessConfig& v) {
    j = Json{
        {"id_method", to_string(v.id_method)},
        {"redcap_barred", v.redcap_barred},
        {"prach_periodicity_ms", v.prach_periodicity_ms},
        {"msg_prb_costs", Json{{"msg2", v.msg2_cost}, {"msg3", v.msg3_cost}, {"msg4", v.msg4_cost}}},
    };
}

void from_json(const Json& j, AccessConfig& v) {
    const AccessConfig d;
    v.id_method = id_method_from_string(j.value("id_method", std::string("Msg3Lcid")));
    v.redcap_barred = j.value("redcap_barred", false);
    v.prach_periodicity_ms = j.value("prach_periodicity_ms", d.prach_periodicity_ms);
    if (j.contains("msg_prb_costs")) {
        const auto& c = j.at("msg_prb_costs");
        v.msg2_cost = c.value("msg2", d.msg2_cost);
        v.msg3_cost = c.value("msg3", d.msg3_cost);
        v.msg4_cost = c.value("msg4", d.msg4_cost);
    }
    v.validate();
}

void to_json(Json& j, const AccessOutcome& v) {
    j = Json{
        {"device_id", v.device_id},
        {"is_redcap", v.is_redcap},
        {"identified_at", to_string(v.identified_at)},
        {"barred", v.barred},
        {"total_prbs_scheduled", v.total_prbs_scheduled},
    };
    if (v.time_to_connected_ms)
        j["time_to_connected_ms"] = round6(*v.time_to_connected_ms);
    else
        j["time_to_connected_ms"] = nullptr;
}

void to_json(Json& j, const AccessStats& v) {
    j = Json{
        {"n_devices", v.n_devices},
        {"n_barred", v.n_barred},
        {"total_prbs_scheduled", v.total_prbs_scheduled},
        {"mean_time_to_connected_ms", round6(v.mean_time_to_connected_ms)},
    };
}

// ---------------------------------------------------------------------------
// capacity
// ---------------------------------------------------------------------------

void to_json(Json& j, const TrafficModel& v) {
    j = Json{{"payload_bytes", v.payload_bytes},
             {"period_s", v.period_s},
             {"offered_bps", v.offered_bps()}};
}

void from_json(const Json& j, TrafficModel& v) {
    v.payload_bytes = j.at("payload_bytes").get<long long>();
    v.period_s = j.at("period_s").get<double>();
    v.validate();
    if (j.contains("offered_bps")) {
        const double stated = j.at("offered_bps").get<double>();
        if (std::abs(stated - v.offered_bps()) > 1e-6 * std::max(1.0, v.offered_bps()))
            throw ValidationError("traffic model: offered_bps inconsistent with payload and period");
    }
}

void to_json(Json& j, const ThroughputReport& v) {
    j = Json{
        {"served_load_bps_per_cell", round6(v.served_load_bps_per_cell)},
        {"p5_mbps", round6(v.p5_mbps)},
        {"p50_mbps", round6(v.p50_mbps)},
        {"p95_mbps", round6(v.p95_mbps)},
        {"resource_utilization", round6(v.resource_utilization)},
        {"embb_users_per_cell", v.embb_users_per_cell},
        {"redcap_users_per_cell", v.redcap_users_per_cell},
    };
}

// ---------------------------------------------------------------------------
// linkbudget
// ---------------------------------------------------------------------------

void to_json(Json& j, const CoverageReport& v) {
    Json entries = Json::array();
    for (const auto& e : v.entries) {
        entries.push_back(Json{
            {"channel", to_string(e.channel)},
            {"direction", to_string(e.direction)},
            {"mil_db", round6(e.mil_db)},
            {"recovery_db", round6(e.recovery_db)},
        });
    }
    j = Json{
        {"scenario", v.scenario},
        {"reference_bottleneck_channel", to_string(v.reference_bottleneck_channel)},
        {"reference_bottleneck_mil_db", round6(v.reference_bottleneck_mil_db)},
        {"channels", entries},
    };
}

} // namespace redcap
