#include "redcap/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "redcap/datarate.hpp"
#include "redcap/linkbudget.hpp"
#include "redcap/power.hpp"

namespace redcap {

std::string fmt_g6(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// datarate
// ---------------------------------------------------------------------------

namespace {

RateParams params_for(const CapabilityProfile& profile, Direction dir) {
    RateParams p = RateParams::defaults(dir, profile.frequency_range);
    p.layers = dir == Direction::Dl ? profile.dl_mimo_layers : 1;
    p.modulation_order = dir == Direction::Dl ? profile.max_dl_modulation_order
                                              : profile.max_ul_modulation_order;
    return p;
}

const NamedProfile* first_redcap_profile(const ScenarioFile& s) {
    for (const auto& p : s.profiles)
        if (p.profile.is_redcap)
            return &p;
    return s.profiles.empty() ? nullptr : &s.profiles.front();
}

} // namespace

std::vector<DatarateRow> run_datarate(const ScenarioFile& s) {
    std::vector<DatarateRow> rows;
    for (const auto& np : s.profiles) {
        for (const auto& nc : s.carriers) {
            for (Direction dir : {Direction::Dl, Direction::Ul}) {
                try {
                    const double mbps =
                        peak_rate(np.profile, nc.carrier, dir, params_for(np.profile, dir));
                    rows.push_back({np.name, nc.name, dir, mbps});
                } catch (const Error&) {
                    // Infeasible (profile, carrier) pairs emit no row.
                }
            }
        }
    }
    return rows;
}

std::string datarate_csv(const std::vector<DatarateRow>& rows) {
    std::ostringstream os;
    os << "profile,carrier,direction,rate_mbps\n";
    for (const auto& r : rows)
        os << r.profile << ',' << r.carrier << ',' << to_string(r.direction) << ','
           << fmt_g6(r.rate_mbps) << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// battery
// ---------------------------------------------------------------------------

std::vector<BatteryRow> run_battery(const ScenarioFile& s) {
    const PowerSection& ps = s.power;
    std::vector<BatteryRow> rows;
    for (double cycle : ps.cycle_grid_s) {
        const DrxConfig drx = make_drx(ps.rrc_state, cycle, cycle > 2.56);
        const DrxConfig baseline = make_drx(ps.rrc_state, 2.56, false);
        for (double iat : ps.iat_grid_s) {
            const TrafficPattern traffic{iat, ps.arrival_process};
            BatteryRow row;
            row.cycle_s = cycle;
            row.iat_s = iat;
            row.lifetime_h = battery_lifetime_h(ps.model, drx, traffic);
            row.lifetime_ratio_vs_baseline =
                row.lifetime_h / battery_lifetime_h(ps.model, baseline, traffic);
            row.dl_latency_s = expected_paging_delay_s(drx);
            rows.push_back(row);
        }
    }
    return rows;
}

std::string battery_csv(const std::vector<BatteryRow>& rows) {
    std::ostringstream os;
    os << "cycle_s,iat_s,lifetime_h,lifetime_ratio_vs_baseline,dl_latency_s\n";
    for (const auto& r : rows)
        os << fmt_g6(r.cycle_s) << ',' << fmt_g6(r.iat_s) << ',' << fmt_g6(r.lifetime_h) << ','
           << fmt_g6(r.lifetime_ratio_vs_baseline) << ',' << fmt_g6(r.dl_latency_s) << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// linkbudget
// ---------------------------------------------------------------------------

CoverageReport run_linkbudget(const ScenarioFile& s, const LinkbudgetOptions& opts) {
    const CapabilityProfile* profile = nullptr;
    if (opts.profile_ref) {
        profile = &s.profile(*opts.profile_ref);
    } else {
        const NamedProfile* np = first_redcap_profile(s);
        if (!np)
            throw AnalysisError("linkbudget: scenario defines no profiles");
        profile = &np->profile;
    }
    const FrequencyRange fr = frequency_range_of(s.deployment);
    const CapabilityProfile reference = builtin_profile(
        fr == FrequencyRange::Fr1 ? ProfileKind::ReferenceNrFr1 : ProfileKind::ReferenceNrFr2);

    LinkBudgetOptions lb_redcap;
    lb_redcap.trp_override_dbm = opts.trp_dbm;
    lb_redcap.antenna_efficiency_penalty_db = opts.antenna_efficiency_penalty_db;
    LinkBudgetOptions lb_ref;
    lb_ref.trp_override_dbm = opts.trp_dbm; // the penalty never applies to the reference

    const LinkBudget redcap = build_link_budget(s.deployment, *profile, default_snr_table(),
                                                nullptr, lb_redcap);
    const LinkBudget reference_budget = build_link_budget(s.deployment, reference,
                                                          default_snr_table(), nullptr, lb_ref);
    return coverage_recovery(redcap, reference_budget);
}

std::string linkbudget_csv(const CoverageReport& report) {
    // The bottleneck flag marks the evaluated device's own weakest channel.
    double min_mil = report.entries.empty() ? 0.0 : report.entries.front().mil_db;
    Channel min_channel = report.entries.empty() ? Channel::Pusch : report.entries.front().channel;
    for (const auto& e : report.entries) {
        if (e.mil_db < min_mil) {
            min_mil = e.mil_db;
            min_channel = e.channel;
        }
    }
    std::ostringstream os;
    os << "channel,direction,mil_db,recovery_db,bottleneck\n";
    for (const auto& e : report.entries)
        os << to_string(e.channel) << ',' << to_string(e.direction) << ',' << fmt_g6(e.mil_db)
           << ',' << fmt_g6(e.recovery_db) << ',' << (e.channel == min_channel ? 1 : 0) << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// bwp
// ---------------------------------------------------------------------------

PlanResult run_bwp(const ScenarioFile& s) {
    return plan_redcap_bwp(s.bwp.layout, s.profile(s.bwp.profile), s.bwp.features,
                           s.bwp.pucch_block_prbs);
}

Json bwp_report_json(const ScenarioFile& s, const PlanResult& result) {
    Json j;
    j["carrier_layout"] = s.bwp.layout;
    j["features"] = s.bwp.features;
    j["feasible"] = result.feasible();
    if (result.feasible()) {
        j["plan"] = *result.plan;
        j["grid"] = render_prb_grid(s.bwp.layout, *result.plan);
    } else {
        j["binding_constraints"] = result.binding_constraints;
    }
    return j;
}

// ---------------------------------------------------------------------------
// access
// ---------------------------------------------------------------------------

AccessResult run_access(const ScenarioFile& s, const AccessRunOptions& opts) {
    AccessConfig cfg = s.access.config;
    if (opts.id_method)
        cfg.id_method = *opts.id_method;
    if (opts.barred)
        cfg.redcap_barred = *opts.barred;

    std::vector<CapabilityProfile> devices;
    if (opts.devices) {
        // Flag override: alternate through the scenario's device classes.
        std::vector<const CapabilityProfile*> classes;
        for (const auto& [ref, count] : s.access.devices) {
            (void)count;
            classes.push_back(&s.profile(ref));
        }
        if (classes.empty())
            throw AnalysisError("access: scenario defines no device population");
        for (int i = 0; i < *opts.devices; ++i)
            devices.push_back(*classes[static_cast<std::size_t>(i) % classes.size()]);
    } else {
        for (const auto& [ref, count] : s.access.devices) {
            const CapabilityProfile& p = s.profile(ref);
            for (int i = 0; i < count; ++i)
                devices.push_back(p);
        }
    }
    return simulate_access(devices, cfg, opts.seed.value_or(s.access.seed));
}

Json access_report_json(const AccessResult& result) {
    Json j;
    j["outcomes"] = Json::array();
    for (const auto& o : result.outcomes)
        j["outcomes"].push_back(o);
    j["stats"] = result.stats;
    return j;
}

std::string access_csv(const ScenarioFile& s, const AccessRunOptions& opts,
                       const AccessResult& result) {
    AccessConfig cfg = s.access.config;
    if (opts.id_method)
        cfg.id_method = *opts.id_method;
    if (opts.barred)
        cfg.redcap_barred = *opts.barred;
    std::ostringstream os;
    os << "id_method,redcap_barred,n_devices,n_barred,total_prbs_scheduled,"
          "mean_time_to_connected_ms\n";
    os << to_string(cfg.id_method) << ',' << (cfg.redcap_barred ? 1 : 0) << ','
       << result.stats.n_devices << ',' << result.stats.n_barred << ','
       << result.stats.total_prbs_scheduled << ','
       << fmt_g6(result.stats.mean_time_to_connected_ms) << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// capacity
// ---------------------------------------------------------------------------

std::vector<ThroughputReport> run_capacity(const ScenarioFile& s) {
    return run_capacity_sim(s.capacity.scenario);
}

std::string capacity_csv(const std::vector<ThroughputReport>& reports) {
    std::ostringstream os;
    os << "load_bps,p5,p50,p95,utilization\n";
    for (const auto& r : reports)
        os << fmt_g6(r.served_load_bps_per_cell) << ',' << fmt_g6(r.p5_mbps) << ','
           << fmt_g6(r.p50_mbps) << ',' << fmt_g6(r.p95_mbps) << ','
           << fmt_g6(r.resource_utilization) << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// combined report
// ---------------------------------------------------------------------------

namespace {

/// Peak rates achieved by the scenario's RedCap baseline, used as the
/// achieved figures for the requirement gate. Prefers a TDD carrier matching
/// the profile's frequency range.
std::pair<double, double> achieved_rates(const ScenarioFile& s,
                                         const CapabilityProfile& profile) {
    const NamedCarrier* chosen = nullptr;
    for (const auto& nc : s.carriers) {
        if (nc.carrier.bandwidth_mhz > profile.max_bandwidth_mhz)
            continue;
        if (!chosen || (nc.carrier.duplex_mode == Duplex::Tdd &&
                        chosen->carrier.duplex_mode != Duplex::Tdd))
            chosen = &nc;
    }
    if (!chosen)
        throw AnalysisError("report: no carrier fits the RedCap profile");
    const double dl =
        peak_rate(profile, chosen->carrier, Direction::Dl, params_for(profile, Direction::Dl));
    const double ul =
        peak_rate(profile, chosen->carrier, Direction::Ul, params_for(profile, Direction::Ul));
    return {dl, ul};
}

} // namespace

Json run_report(const ScenarioFile& s) {
    Json j;

    const auto rate_rows = run_datarate(s);
    Json rates = Json::array();
    for (const auto& r : rate_rows)
        rates.push_back(Json{{"profile", r.profile},
                             {"carrier", r.carrier},
                             {"direction", to_string(r.direction)},
                             {"rate_mbps", round6(r.rate_mbps)}});
    j["datarate"] = rates;

    const auto battery_rows = run_battery(s);
    Json battery = Json::array();
    for (const auto& r : battery_rows)
        battery.push_back(Json{{"cycle_s", r.cycle_s},
                               {"iat_s", r.iat_s},
                               {"lifetime_h", round6(r.lifetime_h)},
                               {"lifetime_ratio_vs_baseline", round6(r.lifetime_ratio_vs_baseline)},
                               {"dl_latency_s", round6(r.dl_latency_s)}});
    j["battery"] = battery;

    j["linkbudget"] = run_linkbudget(s);
    j["bwp"] = bwp_report_json(s, run_bwp(s));

    // Requirement gate: Table-style use cases against the RedCap baseline's
    // achieved rates and the best lifetime over the sweep grid. Latency and
    // reliability have no modeled achieved value and stay unevaluated.
    const NamedProfile* redcap = first_redcap_profile(s);
    if (redcap) {
        const auto [dl, ul] = achieved_rates(s, redcap->profile);
        double best_lifetime = 0.0;
        for (const auto& r : battery_rows)
            best_lifetime = std::max(best_lifetime, r.lifetime_h);
        Json reqs = Json::array();
        for (const auto& [name, req] : builtin_requirements()) {
            const RequirementReport rep =
                check_requirements(req, dl, ul, best_lifetime, std::nullopt, std::nullopt);
            Json e = rep;
            e["requirement"] = name;
            reqs.push_back(e);
        }
        j["requirements"] = Json{{"achieved_dl_mbps", round6(dl)},
                                 {"achieved_ul_mbps", round6(ul)},
                                 {"achieved_lifetime_h", round6(best_lifetime)},
                                 {"profile", redcap->name},
                                 {"verdicts", reqs}};
    }

    return j;
}

} // namespace redcap
