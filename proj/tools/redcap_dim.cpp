#include <CLI11.hpp>

#include <clocale>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "redcap/report.hpp"
#include "redcap/scenario.hpp"
#include "redcap/serde.hpp"

namespace fs = std::filesystem;
using namespace redcap;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw AnalysisError("cannot open scenario file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw AnalysisError("cannot write output file: " + path.string());
    out << content;
    std::cout << path.string() << "\n";
}

[[noreturn]] void emit_error(const std::string& cls, const std::string& message,
                             const std::vector<ParseIssue>* issues, int code) {
    Json err;
    err["error"] = Json{{"class", cls}, {"message", message}};
    if (issues) {
        Json list = Json::array();
        for (const auto& i : *issues)
            list.push_back(Json{{"path", i.path}, {"message", i.message}});
        err["error"]["issues"] = list;
    }
    std::cerr << err.dump(2) << "\n";
    std::exit(code);
}

struct CommonArgs {
    std::string scenario_path;
    std::string out_dir; // empty: use the scenario's output.path
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--scenario", args.scenario_path, "scenario file (JSON)")->required();
    cmd->add_option("--out", args.out_dir, "output directory (default: scenario output.path)");
}

ScenarioFile load(const CommonArgs& args) {
    ScenarioFile s = parse_scenario(read_file(args.scenario_path));
    if (!args.out_dir.empty())
        s.output.path = args.out_dir;
    return s;
}

fs::path out_path(const ScenarioFile& s, const std::string& filename) {
    return fs::path(s.output.path) / filename;
}

std::uint64_t env_seed_or(std::uint64_t fallback) {
    if (const char* env = std::getenv("REDCAP_DIM_SEED"))
        return std::strtoull(env, nullptr, 10);
    return fallback;
}

Json rows_to_json(const std::vector<DatarateRow>& rows) {
    Json arr = Json::array();
    for (const auto& r : rows)
        arr.push_back(Json{{"profile", r.profile},
                           {"carrier", r.carrier},
                           {"direction", to_string(r.direction)},
                           {"rate_mbps", round6(r.rate_mbps)}});
    return arr;
}

Json rows_to_json(const std::vector<BatteryRow>& rows) {
    Json arr = Json::array();
    for (const auto& r : rows)
        arr.push_back(Json{{"cycle_s", r.cycle_s},
                           {"iat_s", r.iat_s},
                           {"lifetime_h", round6(r.lifetime_h)},
                           {"lifetime_ratio_vs_baseline", round6(r.lifetime_ratio_vs_baseline)},
                           {"dl_latency_s", round6(r.dl_latency_s)}});
    return arr;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");

    CLI::App app{"RedCap dimensioning and coexistence analysis toolkit"};
    app.require_subcommand(1);

    CommonArgs common;

    auto* datarate_cmd = app.add_subcommand("datarate", "peak data rates per profile/carrier");
    add_common(datarate_cmd, common);

    auto* battery_cmd = app.add_subcommand("battery", "battery lifetime over the (cycle, IAT) grid");
    add_common(battery_cmd, common);

    auto* linkbudget_cmd = app.add_subcommand("linkbudget", "per-channel MIL and coverage recovery");
    add_common(linkbudget_cmd, common);
    std::string lb_profile;
    double lb_trp = 0.0;
    double lb_penalty = 0.0;
    linkbudget_cmd->add_option("--profile", lb_profile, "profile name to evaluate");
    auto* lb_trp_opt = linkbudget_cmd->add_option("--trp", lb_trp, "UE TRP override (dBm)");
    linkbudget_cmd->add_option("--efficiency-penalty", lb_penalty,
                               "RedCap antenna efficiency penalty (dB, default 0)");

    auto* bwp_cmd = app.add_subcommand("bwp", "RedCap BWP placement recommendation");
    add_common(bwp_cmd, common);

    auto* access_cmd = app.add_subcommand("access-sim", "random-access identification simulation");
    add_common(access_cmd, common);
    std::string ac_method;
    bool ac_barred = false;
    int ac_devices = 0;
    std::uint64_t ac_seed = 0;
    access_cmd->add_option("--id-method", ac_method,
                           "Msg1SeparatePrach | Msg3Lcid | PostMsg4Capability");
    auto* ac_barred_opt = access_cmd->add_flag("--barred", ac_barred, "bar RedCap devices");
    auto* ac_devices_opt = access_cmd->add_option("--devices", ac_devices, "population size");
    auto* ac_seed_opt = access_cmd->add_option("--seed", ac_seed, "simulation seed");

    auto* capacity_cmd = app.add_subcommand("capacity-sim", "mixed eMBB/RedCap DL capacity sweep");
    add_common(capacity_cmd, common);
    std::vector<double> cap_fractions;
    capacity_cmd->add_option("--fractions", cap_fractions,
                             "redcap_fraction values (one CSV each; default: scenario value)");

    auto* report_cmd = app.add_subcommand("report", "run all analyses and emit a combined summary");
    add_common(report_cmd, common);

    CLI11_PARSE(app, argc, argv);

    try {
        ScenarioFile s = load(common);
        const bool json_format = s.output.format == OutputFormat::Json;

        if (datarate_cmd->parsed()) {
            const auto rows = run_datarate(s);
            if (json_format)
                write_file(out_path(s, "datarate.json"), rows_to_json(rows).dump(2) + "\n");
            else
                write_file(out_path(s, "datarate.csv"), datarate_csv(rows));
        } else if (battery_cmd->parsed()) {
            const auto rows = run_battery(s);
            if (json_format)
                write_file(out_path(s, "battery.json"), rows_to_json(rows).dump(2) + "\n");
            else
                write_file(out_path(s, "battery.csv"), battery_csv(rows));
        } else if (linkbudget_cmd->parsed()) {
            LinkbudgetOptions opts;
            if (!lb_profile.empty())
                opts.profile_ref = lb_profile;
            if (lb_trp_opt->count() > 0)
                opts.trp_dbm = lb_trp;
            opts.antenna_efficiency_penalty_db = lb_penalty;
            const CoverageReport report = run_linkbudget(s, opts);
            if (json_format) {
                Json j = report;
                write_file(out_path(s, "linkbudget.json"), j.dump(2) + "\n");
            } else {
                write_file(out_path(s, "linkbudget.csv"), linkbudget_csv(report));
            }
        } else if (bwp_cmd->parsed()) {
            const PlanResult result = run_bwp(s);
            const Json j = bwp_report_json(s, result);
            write_file(out_path(s, "bwp.json"), j.dump(2) + "\n");
            if (result.feasible())
                write_file(out_path(s, "bwp_grid.txt"), render_prb_grid(s.bwp.layout, *result.plan));
        } else if (access_cmd->parsed()) {
            AccessRunOptions opts;
            if (!ac_method.empty())
                opts.id_method = id_method_from_string(ac_method);
            if (ac_barred_opt->count() > 0)
                opts.barred = ac_barred;
            if (ac_devices_opt->count() > 0)
                opts.devices = ac_devices;
            opts.seed = ac_seed_opt->count() > 0 ? ac_seed : env_seed_or(s.access.seed);
            const AccessResult result = run_access(s, opts);
            write_file(out_path(s, "access_sim.json"),
                       access_report_json(result).dump(2) + "\n");
            write_file(out_path(s, "access_sim.csv"), access_csv(s, opts, result));
        } else if (capacity_cmd->parsed()) {
            std::vector<double> fractions = cap_fractions;
            if (fractions.empty())
                fractions = {s.capacity.scenario.redcap_fraction};
            s.capacity.scenario.seed = env_seed_or(s.capacity.scenario.seed);
            for (double f : fractions) {
                CapacityScenario scn = s.capacity.scenario;
                scn.redcap_fraction = f;
                const auto reports = run_capacity_sim(scn);
                std::ostringstream name;
                name << "capacity_sim_f" << fmt_g6(f) << ".csv";
                write_file(out_path(s, name.str()), capacity_csv(reports));
            }
        } else if (report_cmd->parsed()) {
            const Json j = run_report(s);
            write_file(out_path(s, "report.json"), j.dump(2) + "\n");
        }
    } catch (const ScenarioError& e) {
        auto issues = e.issues();
        emit_error("scenario", e.what(), &issues, 2);
    } catch (const ValidationError& e) {
        emit_error("validation", e.what(), nullptr, 2);
    } catch (const CapabilityError& e) {
        emit_error("capability", e.what(), nullptr, 2);
    } catch (const AnalysisError& e) {
        emit_error("analysis", e.what(), nullptr, 3);
    } catch (const std::exception& e) {
        emit_error("internal", e.what(), nullptr, 4);
    }
    return 0;
}
