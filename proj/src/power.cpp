#include "redcap/power.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

namespace redcap {

const char* to_string(RrcState s) { return s == RrcState::Idle ? "Idle" : "Inactive"; }

const char* to_string(ArrivalProcess p) {
    return p == ArrivalProcess::Periodic ? "Periodic" : "Poisson";
}

const char* to_string(Release r) {
    switch (r) {
        case Release::R15: return "R15";
        case Release::R16: return "R16";
        case Release::R17: return "R17";
    }
    return "?";
}

void PowerModel::validate() const {
    if (p_deep_sleep <= 0.0)
        throw ValidationError("power model: p_deep_sleep must be positive");
    if (!(p_deep_sleep < p_light_sleep && p_light_sleep < p_paging_monitor &&
          p_paging_monitor <= p_data_session))
        throw ValidationError(
            "power model: powers must satisfy deep < light < paging <= data");
    if (t_paging_monitor_s < 0.0 || t_data_session_s < 0.0)
        throw ValidationError("power model: state durations must be non-negative");
    if (e_transition < 0.0)
        throw ValidationError("power model: e_transition must be non-negative");
    if (battery_capacity_unit_s <= 0.0)
        throw ValidationError("power model: battery_capacity_unit_s must be positive");
}

PowerModel default_power_model() { return PowerModel{}; }

namespace {

constexpr double kDrxCycleCap = 2.56;
constexpr double kEdrxInactiveCap = 10.24;
constexpr double kEdrxIdleCap = 10485.76;

} // namespace

void DrxConfig::validate() const {
    if (cycle_s <= 0.0)
        throw ValidationError("drx: cycle_s must be positive");
    if (!edrx_enabled) {
        if (cycle_s > kDrxCycleCap)
            throw ValidationError("drx: cycle_s above 2.56 s requires eDRX");
    } else if (rrc_state == RrcState::Inactive) {
        if (cycle_s > kEdrxInactiveCap)
            throw ValidationError("drx: eDRX cycle in inactive state is capped at 10.24 s");
    } else {
        if (cycle_s > kEdrxIdleCap)
            throw ValidationError("drx: eDRX cycle in idle state is capped at 10485.76 s");
    }
}

DrxConfig make_drx(RrcState state, double cycle_s, bool edrx_enabled) {
    DrxConfig d{state, cycle_s, edrx_enabled};
    d.validate();
    return d;
}

void TrafficPattern::validate() const {
    if (!(iat_s > 0.0))
        throw ValidationError("traffic: iat_s must be positive");
}

// ---------------------------------------------------------------------------
// Closed form
// ---------------------------------------------------------------------------

double sleep_floor_power(const PowerModel& model, const DrxConfig& drx) {
    if (drx.rrc_state == RrcState::Idle && drx.edrx_enabled)
        return model.p_deep_sleep;
    return model.p_light_sleep;
}

PowerBreakdown avg_power_breakdown(const PowerModel& model, const DrxConfig& drx,
                                   const TrafficPattern& traffic,
                                   const std::optional<RrmOverhead>& rrm) {
    model.validate();
    drx.validate();
    traffic.validate();
    if (model.t_paging_monitor_s >= drx.cycle_s) {
        std::ostringstream os;
        os << "paging wake time " << model.t_paging_monitor_s
           << " s does not fit in the DRX cycle of " << drx.cycle_s << " s";
        throw AnalysisError(os.str());
    }

    const double floor = sleep_floor_power(model, drx);
    PowerBreakdown b;
    b.sleep_floor = floor;
    // Each paging occasion: monitoring above the floor plus two transitions.
    b.paging = (model.t_paging_monitor_s * (model.p_paging_monitor - floor) +
                2.0 * model.e_transition) /
               drx.cycle_s;
    // Each data event: session above the floor plus two transitions.
    if (std::isfinite(traffic.iat_s))
        b.data = (model.t_data_session_s * (model.p_data_session - floor) +
                  2.0 * model.e_transition) /
                 traffic.iat_s;
    if (rrm)
        b.rrm = rrm->duty * rrm->e_measurement_unit_s / drx.cycle_s;
    return b;
}

double avg_power(const PowerModel& model, const DrxConfig& drx, const TrafficPattern& traffic) {
    return avg_power_breakdown(model, drx, traffic).total();
}

double battery_lifetime_h(const PowerModel& model, const DrxConfig& drx,
                          const TrafficPattern& traffic,
                          const std::optional<RrmOverhead>& rrm) {
    const double p = avg_power_breakdown(model, drx, traffic, rrm).total();
    return model.battery_capacity_unit_s / p / 3600.0;
}

double expected_paging_delay_s(const DrxConfig& drx) { return drx.cycle_s / 2.0; }

// ---------------------------------------------------------------------------
// Event-driven oracle
// ---------------------------------------------------------------------------

namespace {

struct WakeInterval {
    double start;
    double end;
    double power;
};

} // namespace

double simulate_energy(const PowerModel& model, const DrxConfig& drx,
                       const TrafficPattern& traffic, double horizon_s,
                       std::uint64_t seed) {
    model.validate();
    drx.validate();
    traffic.validate();
    if (model.t_paging_monitor_s >= drx.cycle_s)
        throw AnalysisError("simulate_energy: paging wake time does not fit in the DRX cycle");
    if (horizon_s < 100.0 * drx.cycle_s)
        throw AnalysisError("simulate_energy: horizon must cover at least 100 DRX cycles");

    std::vector<WakeInterval> intervals;

    // Paging occasions at every cycle boundary.
    for (double t = 0.0; t < horizon_s; t += drx.cycle_s) {
        if (model.t_paging_monitor_s > 0.0 || model.e_transition > 0.0)
            intervals.push_back(
                {t, std::min(t + model.t_paging_monitor_s, horizon_s), model.p_paging_monitor});
    }

    // Data events.
    if (std::isfinite(traffic.iat_s)) {
        if (traffic.arrival_process == ArrivalProcess::Periodic) {
            for (double t = traffic.iat_s; t < horizon_s; t += traffic.iat_s)
                intervals.push_back(
                    {t, std::min(t + model.t_data_session_s, horizon_s), model.p_data_session});
        } else {
            std::mt19937_64 rng(seed);
            std::exponential_distribution<double> gap(1.0 / traffic.iat_s);
            for (double t = gap(rng); t < horizon_s; t += gap(rng))
                intervals.push_back(
                    {t, std::min(t + model.t_data_session_s, horizon_s), model.p_data_session});
        }
    }

    std::sort(intervals.begin(), intervals.end(),
              [](const WakeInterval& a, const WakeInterval& b) { return a.start < b.start; });

    // Sweep chronologically. Overlapping intervals form one wake episode; the
    // higher power wins during the overlap, and each episode costs two
    // transitions regardless of how many intervals it absorbed.
    const double floor = sleep_floor_power(model, drx);
    double energy = 0.0;
    double awake_time = 0.0;
    std::size_t i = 0;
    while (i < intervals.size()) {
        double ep_start = intervals[i].start;
        double ep_end = intervals[i].end;
        double cursor = ep_start;
        // Segments of the episode at the locally strongest power.
        std::vector<WakeInterval> members;
        members.push_back(intervals[i]);
        std::size_t j = i + 1;
        while (j < intervals.size() && intervals[j].start <= ep_end) {
            ep_end = std::max(ep_end, intervals[j].end);
            members.push_back(intervals[j]);
            ++j;
        }
        // Integrate max power across the episode.
        std::vector<double> cuts;
        for (const auto& m : members) {
            cuts.push_back(m.start);
            cuts.push_back(m.end);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double a = cuts[k], b = cuts[k + 1];
            double p = 0.0;
            for (const auto& m : members)
                if (m.start <= a && b <= m.end)
                    p = std::max(p, m.power);
            energy += (b - a) * p;
        }
        (void)cursor;
        energy += 2.0 * model.e_transition;
        awake_time += ep_end - ep_start;
        i = j;
    }

    energy += (horizon_s - awake_time) * floor;
    return energy;
}

// ---------------------------------------------------------------------------
// RRM relaxation rule table
// ---------------------------------------------------------------------------

void RrmThresholds::validate() const {
    if (low_mobility_rsrp_dbm > not_at_cell_edge_rsrp_dbm)
        throw ValidationError(
            "rrm thresholds: low-mobility RSRP threshold must not exceed the "
            "not-at-cell-edge threshold");
}

void RrmRelaxedRates::validate() const {
    if (!(r4 <= r3 && r3 <= r2 && r2 <= r1 && r1 <= 1.0 && r4 > 0.0))
        throw ValidationError("rrm rates: must satisfy 0 < r4 <= r3 <= r2 <= r1 <= 1");
}

double rrm_duty_cycle(bool stationary, double serving_rsrp_dbm, double serving_rsrq_db,
                      const RrmThresholds& thresholds, Release release,
                      const RrmRelaxedRates& rates) {
    thresholds.validate();
    rates.validate();

    const bool above_serving = serving_rsrp_dbm > thresholds.serving_rsrp_dbm &&
                               serving_rsrq_db > thresholds.serving_rsrq_db;
    const bool low_mobility = stationary && serving_rsrp_dbm > thresholds.low_mobility_rsrp_dbm;
    const bool not_at_edge = serving_rsrp_dbm > thresholds.not_at_cell_edge_rsrp_dbm;

    const double r15 = above_serving ? rates.r1 : 1.0;
    if (release == Release::R15)
        return r15;

    const double r16 = low_mobility ? (not_at_edge ? rates.r3 : rates.r2) : r15;
    if (release == Release::R16)
        return r16;

    // R17: longer relaxation for stationary devices meeting both conditions.
    if (low_mobility && not_at_edge)
        return rates.r4;
    return r16;
}

} // namespace redcap
