#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "redcap/model.hpp"

namespace redcap {

/// Periodic payload traffic: payload_bytes delivered every period_s.
struct TrafficModel {
    long long payload_bytes = 0;
    double period_s = 0.0;

    double offered_bps() const { return static_cast<double>(payload_bytes) * 8.0 / period_s; }

    bool operator==(const TrafficModel&) const = default;

    void validate() const;
};

TrafficModel embb_traffic();   // 0.5 MB every 200 ms
TrafficModel redcap_traffic(); // 0.1 MB every 2 s

enum class Scheduler { RoundRobin, ProportionalFair };

const char* to_string(Scheduler s);

/// Attenuated-Shannon spectral-efficiency map with a per-profile cap of
/// modulation_order * layers b/s/Hz.
struct SeMap {
    double attenuation = 0.6;

    bool operator==(const SeMap&) const = default;

    double cap_for(const CapabilityProfile& p) const {
        return static_cast<double>(p.max_dl_modulation_order) * p.dl_mimo_layers;
    }
    double spectral_efficiency(double sinr_db, double cap) const;
};

struct CapacityScenario {
    int n_cells = 7;
    // eMBB users per cell at the top load point. The RedCap population is
    // added on top so that redcap_fraction is the RedCap share of all users:
    // n_redcap = round(n_embb * f / (1 - f)). Keeping the eMBB population
    // fixed per load point makes the fraction curves comparable at matched
    // eMBB offered load.
    int users_per_cell = 30;
    double redcap_fraction = 0.0;
    double carrier_freq_ghz = 2.6;
    double bandwidth_mhz = 100.0;
    Scheduler scheduler = Scheduler::RoundRobin;
    double redcap_rx_penalty_db = 3.0;
    SeMap sinr_to_se;
    std::uint64_t seed = 1;
    int drops = 10;
    std::vector<double> load_fractions = {0.1, 0.25, 0.5, 0.75, 1.0};
    CapabilityProfile embb_profile;   // defaults to the FR1 reference device
    CapabilityProfile redcap_profile; // defaults to the FR1 RedCap baseline
    TrafficModel embb_traffic_model = embb_traffic();
    TrafficModel redcap_traffic_model = redcap_traffic();

    CapacityScenario();

    bool operator==(const CapacityScenario&) const = default;

    void validate() const;
};

struct ThroughputReport {
    double served_load_bps_per_cell = 0.0;
    double p5_mbps = 0.0;  // eMBB user throughput percentiles
    double p50_mbps = 0.0;
    double p95_mbps = 0.0;
    double resource_utilization = 0.0;
    int embb_users_per_cell = 0;
    int redcap_users_per_cell = 0;
};

/// Sum of per-user offered loads, in bps.
double offered_load(const std::vector<std::pair<CapabilityProfile, TrafficModel>>& users);

/// Multi-cell DL capacity simulation. One report per load point, in sweep
/// order; deterministic for a given seed.
std::vector<ThroughputReport> run_capacity_sim(const CapacityScenario& scn);

} // namespace redcap
