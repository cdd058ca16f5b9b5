#pragma once

#include <cstdint>
#include <optional>

#include "redcap/model.hpp"

namespace redcap {

// ---------------------------------------------------------------------------
// Model inputs
// ---------------------------------------------------------------------------

/// Relative-unit power model for the (e)DRX lifetime estimator. The shipped
/// defaults use deep sleep = 1 as the reference unit; see default_power_model().
struct PowerModel {
    double p_deep_sleep = 1.0;
    double p_light_sleep = 20.0;
    double p_paging_monitor = 100.0;   // PDCCH monitoring + sync per paging occasion
    double p_data_session = 300.0;     // average power during an active data exchange
    double t_paging_monitor_s = 0.012; // awake time per occasion incl. ramp-up
    double t_data_session_s = 0.1;     // active time per data event
    double e_transition = 0.45;        // unit*s per sleep/wake transition (2 per episode)
    double battery_capacity_unit_s = 3.6e7;

    bool operator==(const PowerModel&) const = default;

    void validate() const;
};

PowerModel default_power_model();

enum class RrcState { Idle, Inactive };

const char* to_string(RrcState s);

/// DRX configuration. Cycle caps: 2.56 s without eDRX, 10.24 s with eDRX in
/// inactive, 10485.76 s with eDRX in idle.
struct DrxConfig {
    RrcState rrc_state = RrcState::Idle;
    double cycle_s = 2.56;
    bool edrx_enabled = false;

    bool operator==(const DrxConfig&) const = default;

    void validate() const;
};

DrxConfig make_drx(RrcState state, double cycle_s, bool edrx_enabled);

enum class ArrivalProcess { Periodic, Poisson };

const char* to_string(ArrivalProcess p);

struct TrafficPattern {
    double iat_s = 3600.0; // mean inter-arrival time of data events
    ArrivalProcess arrival_process = ArrivalProcess::Periodic;

    bool operator==(const TrafficPattern&) const = default;

    void validate() const;
};

// ---------------------------------------------------------------------------
// Closed-form average power and lifetime
// ---------------------------------------------------------------------------

/// Additive components of the time-averaged power, in model units.
struct PowerBreakdown {
    double sleep_floor = 0.0; // resting-state power
    double paging = 0.0;      // paging monitoring + transitions, averaged per second
    double data = 0.0;        // data sessions + transitions, averaged per second
    double rrm = 0.0;         // neighbor-measurement add-on (zero unless requested)

    double total() const { return sleep_floor + paging + data + rrm; }
};

/// Extra per-paging-occasion energy for neighbor-cell RRM measurements,
/// scaled by the measurement duty cycle from rrm_duty_cycle().
struct RrmOverhead {
    double e_measurement_unit_s = 0.5;
    double duty = 1.0;
};

/// Resting-state power for a DRX configuration. Deep sleep is reachable only
/// with eDRX in the idle state; short-cycle baseline DRX keeps the receiver
/// in light sleep, and the inactive state retains context at light sleep.
double sleep_floor_power(const PowerModel& model, const DrxConfig& drx);

PowerBreakdown avg_power_breakdown(const PowerModel& model, const DrxConfig& drx,
                                   const TrafficPattern& traffic,
                                   const std::optional<RrmOverhead>& rrm = std::nullopt);

/// Time-averaged power in model units. Throws AnalysisError when the paging
/// wake time does not fit in the cycle.
double avg_power(const PowerModel& model, const DrxConfig& drx, const TrafficPattern& traffic);

/// battery_capacity_unit_s / avg_power, in hours.
double battery_lifetime_h(const PowerModel& model, const DrxConfig& drx,
                          const TrafficPattern& traffic,
                          const std::optional<RrmOverhead>& rrm = std::nullopt);

/// Expected DL reachability delay: half a paging cycle.
double expected_paging_delay_s(const DrxConfig& drx);

// ---------------------------------------------------------------------------
// Event-driven oracle
// ---------------------------------------------------------------------------

/// Event-by-event energy accumulation over a horizon, in unit*s. Serves as an
/// independent check of the closed form; deterministic for a given seed.
/// The horizon must cover at least 100 DRX cycles.
double simulate_energy(const PowerModel& model, const DrxConfig& drx,
                       const TrafficPattern& traffic, double horizon_s,
                       std::uint64_t seed);

// ---------------------------------------------------------------------------
// RRM measurement relaxation
// ---------------------------------------------------------------------------

enum class Release { R15, R16, R17 };

const char* to_string(Release r);

/// Serving-cell thresholds gating measurement relaxation. The low-mobility
/// RSRP threshold must not exceed the not-at-cell-edge threshold: a device
/// can be in low mobility while still at the cell edge, but "not at cell
/// edge" always demands the stronger serving level.
struct RrmThresholds {
    double serving_rsrp_dbm = -100.0;
    double serving_rsrq_db = -15.0;
    double low_mobility_rsrp_dbm = -110.0;
    double not_at_cell_edge_rsrp_dbm = -95.0;

    void validate() const;
};

/// Relaxed measurement rates (fraction of paging occasions measured) for the
/// four relaxation tiers. Must satisfy r4 <= r3 <= r2 <= r1 <= 1.
struct RrmRelaxedRates {
    double r1 = 1.0 / 4.0;  // R15 serving-cell-above-threshold relaxation
    double r2 = 1.0 / 8.0;  // R16 low-mobility
    double r3 = 1.0 / 16.0; // R16 low-mobility + not-at-cell-edge
    double r4 = 1.0 / 32.0; // R17 stationary long relaxation

    void validate() const;
};

/// Fraction of paging occasions that require neighbor-cell measurement under
/// the given release's relaxation rules. Inputs outside every relaxation
/// condition yield 1.0 (measure every occasion).
double rrm_duty_cycle(bool stationary, double serving_rsrp_dbm, double serving_rsrq_db,
                      const RrmThresholds& thresholds, Release release,
                      const RrmRelaxedRates& rates = {});

} // namespace redcap
