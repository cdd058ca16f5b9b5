#pragma once

#include <optional>
#include <string>
#include <vector>

#include "redcap/scenario.hpp"
#include "redcap/serde.hpp"

namespace redcap {

/// Locale-independent "%.6g"-style formatting ('.' decimal separator).
std::string fmt_g6(double x);

// ---------------------------------------------------------------------------
// Per-subcommand runners. These take a parsed scenario and return the data
// the CLI writes out, so the same paths are exercised by tests.
// ---------------------------------------------------------------------------

struct DatarateRow {
    std::string profile;
    std::string carrier;
    Direction direction;
    double rate_mbps;
};

std::vector<DatarateRow> run_datarate(const ScenarioFile& s);
std::string datarate_csv(const std::vector<DatarateRow>& rows);

struct BatteryRow {
    double cycle_s;
    double iat_s;
    double lifetime_h;
    double lifetime_ratio_vs_baseline;
    double dl_latency_s; // expected paging delay of the cycle
};

std::vector<BatteryRow> run_battery(const ScenarioFile& s);
std::string battery_csv(const std::vector<BatteryRow>& rows);

struct LinkbudgetOptions {
    std::optional<std::string> profile_ref; // default: first RedCap profile
    std::optional<double> trp_dbm;
    double antenna_efficiency_penalty_db = 0.0;
};

CoverageReport run_linkbudget(const ScenarioFile& s, const LinkbudgetOptions& opts = {});
std::string linkbudget_csv(const CoverageReport& report);

PlanResult run_bwp(const ScenarioFile& s);
Json bwp_report_json(const ScenarioFile& s, const PlanResult& result);

struct AccessRunOptions {
    std::optional<IdMethod> id_method;
    std::optional<bool> barred;
    std::optional<int> devices; // overrides the population size, alternating profiles
    std::optional<std::uint64_t> seed;
};

AccessResult run_access(const ScenarioFile& s, const AccessRunOptions& opts = {});
Json access_report_json(const AccessResult& result);
std::string access_csv(const ScenarioFile& s, const AccessRunOptions& opts,
                       const AccessResult& result);

std::vector<ThroughputReport> run_capacity(const ScenarioFile& s);
std::string capacity_csv(const std::vector<ThroughputReport>& reports);

/// Combined summary: data rates, battery sweep, link budget, BWP plan, and
/// Table-style requirement verdicts for the shipped use cases.
Json run_report(const ScenarioFile& s);

} // namespace redcap
