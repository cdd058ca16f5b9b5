#include "redcap/scenario.hpp"

#include <algorithm>
#include <sstream>

#include "redcap/serde.hpp"

namespace redcap {

const char* to_string(OutputFormat f) { return f == OutputFormat::Csv ? "CSV" : "JSON"; }

OutputFormat output_format_from_string(const std::string& s) {
    if (s == "CSV")
        return OutputFormat::Csv;
    if (s == "JSON")
        return OutputFormat::Json;
    throw ValidationError("unknown output format: '" + s + "'");
}

const CapabilityProfile& ScenarioFile::profile(const std::string& name) const {
    for (const auto& p : profiles)
        if (p.name == name)
            return p.profile;
    throw ValidationError("scenario defines no profile named '" + name + "'");
}

const CarrierConfig& ScenarioFile::carrier(const std::string& name) const {
    for (const auto& c : carriers)
        if (c.name == name)
            return c.carrier;
    throw ValidationError("scenario defines no carrier named '" + name + "'");
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

struct Ctx {
    const std::string* text = nullptr;
    std::vector<ParseIssue> issues;

    void add(ParseIssue::Kind kind, std::string path, std::string message) {
        issues.push_back({kind, std::move(path), std::move(message)});
    }

    void check_keys(const Json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
        if (!j.is_object()) {
            add(ParseIssue::Kind::Invariant, path, "expected a JSON object");
            return;
        }
        for (const auto& [key, value] : j.items()) {
            (void)value;
            if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
                    return key == a;
                }) == allowed.end())
                add(ParseIssue::Kind::UnknownKey, path + "/" + key, "unknown key '" + key + "'");
        }
    }

    // Runs a parse step, converting validation failures into located issues.
    template <typename F>
    void guard(const std::string& path, F&& f) {
        try {
            f();
        } catch (const ScenarioError&) {
            throw;
        } catch (const Error& e) {
            add(ParseIssue::Kind::Invariant, path, e.what());
        } catch (const Json::exception& e) {
            add(ParseIssue::Kind::Invariant, path, e.what());
        }
    }
};

int line_of_offset(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n')
            ++line;
    return line;
}

constexpr std::initializer_list<const char*> kProfileKeys = {
    "name",     "max_bandwidth_mhz", "rx_branches",   "dl_mimo_layers",
    "max_dl_modulation_order", "max_ul_modulation_order", "duplex_mode",
    "frequency_range", "max_drbs", "sn_length_bits", "supports_anr",
    "is_redcap", "cost_reduction_pct"};

void parse_profiles(Ctx& ctx, const Json& root, ScenarioFile& out) {
    if (!root.contains("profiles")) {
        ctx.add(ParseIssue::Kind::MissingSection, "/profiles",
                "missing required section: profiles");
        return;
    }
    const Json& arr = root.at("profiles");
    if (!arr.is_array() || arr.empty()) {
        ctx.add(ParseIssue::Kind::Invariant, "/profiles",
                "profiles must be a non-empty array");
        return;
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "/profiles/" + std::to_string(i);
        const Json& e = arr[i];
        ctx.guard(path, [&] {
            NamedProfile np;
            np.name = e.at("name").get<std::string>();
            if (np.name.empty())
                throw ValidationError("profile name must be non-empty");
            for (const auto& existing : out.profiles)
                if (existing.name == np.name)
                    throw ValidationError("duplicate profile name '" + np.name + "'");
            if (e.contains("preset")) {
                ctx.check_keys(e, path, {"name", "preset"});
                np.profile = builtin_profile(profile_kind_from_string(
                    e.at("preset").get<std::string>()));
            } else {
                ctx.check_keys(e, path, kProfileKeys);
                np.profile = e.get<CapabilityProfile>();
            }
            out.profiles.push_back(std::move(np));
        });
    }
}

void parse_carriers(Ctx& ctx, const Json& root, ScenarioFile& out) {
    if (!root.contains("carriers")) {
        out.carriers = {
            {"fr1_fdd_15khz_20mhz", make_carrier(15, 20.0, Duplex::FdFdd)},
            {"fr1_tdd_30khz_20mhz", make_carrier(30, 20.0, Duplex::Tdd, 0.75)},
            {"fr2_tdd_120khz_100mhz", make_carrier(120, 100.0, Duplex::Tdd, 0.75)},
        };
        out.injected_defaults.push_back("carriers");
        return;
    }
    const Json& arr = root.at("carriers");
    if (!arr.is_array() || arr.empty()) {
        ctx.add(ParseIssue::Kind::Invariant, "/carriers", "carriers must be a non-empty array");
        return;
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "/carriers/" + std::to_string(i);
        const Json& e = arr[i];
        ctx.check_keys(e, path,
                       {"name", "scs_khz", "bandwidth_mhz", "duplex_mode", "tdd_dl_fraction",
                        "n_prb"});
        ctx.guard(path, [&] {
            NamedCarrier nc;
            nc.name = e.at("name").get<std::string>();
            for (const auto& existing : out.carriers)
                if (existing.name == nc.name)
                    throw ValidationError("duplicate carrier name '" + nc.name + "'");
            nc.carrier = e.get<CarrierConfig>();
            out.carriers.push_back(std::move(nc));
        });
    }
}

void parse_power(Ctx& ctx, const Json& root, ScenarioFile& out) {
    if (!root.contains("power")) {
        out.injected_defaults.push_back("power");
        return;
    }
    const Json& p = root.at("power");
    const std::string path = "/power";
    ctx.check_keys(p, path,
                   {"model", "rrc_state", "cycle_grid_s", "iat_grid_s", "arrival_process"});
    ctx.guard(path, [&] {
        if (p.contains("model")) {
            ctx.check_keys(p.at("model"), path + "/model",
                           {"p_deep_sleep", "p_light_sleep", "p_paging_monitor",
                            "p_data_session", "t_paging_monitor_s", "t_data_session_s",
                            "e_transition", "battery_capacity_unit_s"});
            out.power.model = p.at("model").get<PowerModel>();
        }
        if (p.contains("rrc_state"))
            out.power.rrc_state = rrc_state_from_string(p.at("rrc_state").get<std::string>());
        if (p.contains("cycle_grid_s"))
            out.power.cycle_grid_s = p.at("cycle_grid_s").get<std::vector<double>>();
        if (p.contains("iat_grid_s"))
            out.power.iat_grid_s = p.at("iat_grid_s").get<std::vector<double>>();
        if (p.contains("arrival_process"))
            out.power.arrival_process =
                arrival_process_from_string(p.at("arrival_process").get<std::string>());
        if (out.power.cycle_grid_s.empty() || out.power.iat_grid_s.empty())
            throw ValidationError("power sweep grids must be non-empty");
        for (double c : out.power.cycle_grid_s)
            make_drx(out.power.rrc_state, c, c > 2.56); // validates the cycle caps
        for (double iat : out.power.iat_grid_s)
            if (iat <= 0.0)
                throw ValidationError("iat_grid_s entries must be positive");
    });
}

void parse_bwp(Ctx& ctx, const Json& root, ScenarioFile& out) {
    if (!root.contains("bwp")) {
        out.injected_defaults.push_back("bwp");
        return;
    }
    const Json& b = root.at("bwp");
    const std::string path = "/bwp";
    ctx.check_keys(b, path, {"carrier_layout", "features", "profile", "pucch_block_prbs"});
    ctx.guard(path, [&] {
        if (b.contains("carrier_layout")) {
            ctx.check_keys(b.at("carrier_layout"), path + "/carrier_layout",
                           {"n_prb", "scs_khz", "ssb_prb_range", "coreset0_prb_range",
                            "duplex_mode"});
            out.bwp.layout = b.at("carrier_layout").get<CarrierLayout>();
        }
        if (b.contains("features")) {
            ctx.check_keys(b.at("features"), path + "/features",
                           {"separate_initial_bwp", "hopping_disable_allowed",
                            "dl_bwp_without_ssb_allowed"});
            out.bwp.features = b.at("features").get<Release17Features>();
        }
        if (b.contains("profile"))
            out.bwp.profile = b.at("profile").get<std::string>();
        if (b.contains("pucch_block_prbs"))
            out.bwp.pucch_block_prbs = b.at("pucch_block_prbs").get<int>();
        if (out.bwp.pucch_block_prbs < 1)
            throw ValidationError("pucch_block_prbs must be >= 1");
    });
}

void parse_access(Ctx& ctx, const Json& root, ScenarioFile& out) {
    if (!root.contains("access")) {
        out.injected_defaults.push_back("access");
        return;
    }
    out.access.devices = {{"redcap", 8}, {"reference", 8}};
    const Json& a = root.at("access");
    const std::string path = "/access";
    ctx.check_keys(a, path, {"config", "devices", "seed"});
    ctx.guard(path, [&] {
        if (a.contains("config")) {
            ctx.check_keys(a.at("config"), path + "/config",
                           {"id_method", "redcap_barred", "prach_periodicity_ms",
                            "msg_prb_costs"});
            if (a.at("config").contains("msg_prb_costs"))
                ctx.check_keys(a.at("config").at("msg_prb_costs"),
                               path + "/config/msg_prb_costs", {"msg2", "msg3", "msg4"});
            out.access.config = a.at("config").get<AccessConfig>();
        }
        if (a.contains("seed"))
            out.access.seed = a.at("seed").get<std::uint64_t>();
        if (a.contains("devices")) {
            out.access.devices.clear();
            const Json& devs = a.at("devices");
            if (!devs.is_array() || devs.empty())
                throw ValidationError("access.devices must be a non-empty array");
            for (std::size_t i = 0; i < devs.size(); ++i) {
                ctx.check_keys(devs[i], path + "/devices/" + std::to_string(i),
                               {"profile", "count"});
                const std::string ref = devs[i].at("profile").get<std::string>();
                const int count = devs[i].at("count").get<int>();
                if (count < 1)
                    throw ValidationError("device count must be >= 1");
                out.access.devices.emplace_back(ref, count);
            }
        }
    });
}

void parse_capacity(Ctx& ctx, const Json& root, ScenarioFile& out) {
    if (!root.contains("capacity")) {
        out.injected_defaults.push_back("capacity");
        return;
    }
    const Json& c = root.at("capacity");
    const std::string path = "/capacity";
    ctx.check_keys(c, path,
                   {"n_cells", "users_per_cell", "redcap_fraction", "carrier_freq_ghz",
                    "bandwidth_mhz", "scheduler", "redcap_rx_penalty_db", "se_attenuation",
                    "seed", "drops", "load_fractions", "embb_profile", "redcap_profile",
                    "embb_traffic", "redcap_traffic"});
    ctx.guard(path, [&] {
        CapacityScenario& s = out.capacity.scenario;
        s.n_cells = c.value("n_cells", s.n_cells);
        s.users_per_cell = c.value("users_per_cell", s.users_per_cell);
        s.redcap_fraction = c.value("redcap_fraction", s.redcap_fraction);
        s.carrier_freq_ghz = c.value("carrier_freq_ghz", s.carrier_freq_ghz);
        s.bandwidth_mhz = c.value("bandwidth_mhz", s.bandwidth_mhz);
        if (c.contains("scheduler"))
            s.scheduler = scheduler_from_string(c.at("scheduler").get<std::string>());
        s.redcap_rx_penalty_db = c.value("redcap_rx_penalty_db", s.redcap_rx_penalty_db);
        s.sinr_to_se.attenuation = c.value("se_attenuation", s.sinr_to_se.attenuation);
        s.seed = c.value("seed", s.seed);
        s.drops = c.value("drops", s.drops);
        if (c.contains("load_fractions"))
            s.load_fractions = c.at("load_fractions").get<std::vector<double>>();
        if (c.contains("embb_profile"))
            out.capacity.embb_profile = c.at("embb_profile").get<std::string>();
        if (c.contains("redcap_profile"))
            out.capacity.redcap_profile = c.at("redcap_profile").get<std::string>();
        if (c.contains("embb_traffic")) {
            ctx.check_keys(c.at("embb_traffic"), path + "/embb_traffic",
                           {"payload_bytes", "period_s", "offered_bps"});
            s.embb_traffic_model = c.at("embb_traffic").get<TrafficModel>();
        }
        if (c.contains("redcap_traffic")) {
            ctx.check_keys(c.at("redcap_traffic"), path + "/redcap_traffic",
                           {"payload_bytes", "period_s", "offered_bps"});
            s.redcap_traffic_model = c.at("redcap_traffic").get<TrafficModel>();
        }
        s.validate();
    });
}

void parse_output(Ctx& ctx, const Json& root, ScenarioFile& out) {
    if (!root.contains("output")) {
        out.injected_defaults.push_back("output");
        return;
    }
    const Json& o = root.at("output");
    ctx.check_keys(o, "/output", {"format", "path"});
    ctx.guard("/output", [&] {
        if (o.contains("format"))
            out.output.format = output_format_from_string(o.at("format").get<std::string>());
        if (o.contains("path"))
            out.output.path = o.at("path").get<std::string>();
        if (out.output.path.empty())
            throw ValidationError("output.path must be non-empty");
    });
}

void resolve_references(Ctx& ctx, ScenarioFile& out) {
    const auto has_profile = [&](const std::string& name) {
        return std::any_of(out.profiles.begin(), out.profiles.end(),
                           [&](const NamedProfile& p) { return p.name == name; });
    };
    const auto injected = [&](const char* section) {
        return std::find(out.injected_defaults.begin(), out.injected_defaults.end(), section) !=
               out.injected_defaults.end();
    };
    // Sections filled with defaults reference whatever profiles the scenario
    // actually defines; only explicit references must resolve as written.
    if (!out.profiles.empty()) {
        std::string first_redcap = out.profiles.front().name;
        std::string first_regular = out.profiles.front().name;
        for (const auto& p : out.profiles)
            if (p.profile.is_redcap) {
                first_redcap = p.name;
                break;
            }
        for (const auto& p : out.profiles)
            if (!p.profile.is_redcap) {
                first_regular = p.name;
                break;
            }
        if (injected("bwp"))
            out.bwp.profile = first_redcap;
        if (injected("access"))
            out.access.devices = {{first_redcap, 8}, {first_regular, 8}};
        if (injected("capacity")) {
            out.capacity.embb_profile = first_regular;
            out.capacity.redcap_profile = first_redcap;
        }
    }
    if (!has_profile(out.bwp.profile))
        ctx.add(ParseIssue::Kind::BadReference, "/bwp/profile",
                "undefined profile reference '" + out.bwp.profile + "'");
    for (std::size_t i = 0; i < out.access.devices.size(); ++i)
        if (!has_profile(out.access.devices[i].first))
            ctx.add(ParseIssue::Kind::BadReference,
                    "/access/devices/" + std::to_string(i),
                    "undefined profile reference '" + out.access.devices[i].first + "'");
    if (!has_profile(out.capacity.embb_profile))
        ctx.add(ParseIssue::Kind::BadReference, "/capacity/embb_profile",
                "undefined profile reference '" + out.capacity.embb_profile + "'");
    if (!has_profile(out.capacity.redcap_profile))
        ctx.add(ParseIssue::Kind::BadReference, "/capacity/redcap_profile",
                "undefined profile reference '" + out.capacity.redcap_profile + "'");
    if (ctx.issues.empty()) {
        out.capacity.scenario.embb_profile = out.profile(out.capacity.embb_profile);
        out.capacity.scenario.redcap_profile = out.profile(out.capacity.redcap_profile);
    }
}

[[noreturn]] void fail(Ctx& ctx) {
    std::ostringstream os;
    os << "scenario validation failed with " << ctx.issues.size() << " issue"
       << (ctx.issues.size() == 1 ? "" : "s");
    for (const auto& i : ctx.issues)
        os << "; " << i.path << ": " << i.message;
    throw ScenarioError(os.str(), std::move(ctx.issues));
}

} // namespace

ScenarioFile parse_scenario(const std::string& text) {
    Ctx ctx;
    ctx.text = &text;

    const bool blank =
        std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
    if (blank) {
        ctx.add(ParseIssue::Kind::MissingSection, "/profiles",
                "missing required section: profiles");
        fail(ctx);
    }

    Json root;
    try {
        root = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::ostringstream os;
        os << "syntax error at line " << line_of_offset(text, e.byte) << ": " << e.what();
        ctx.add(ParseIssue::Kind::Syntax, "/", os.str());
        fail(ctx);
    }
    if (!root.is_object()) {
        ctx.add(ParseIssue::Kind::Syntax, "/", "scenario must be a JSON object");
        fail(ctx);
    }

    ScenarioFile out;
    ctx.check_keys(root, "",
                   {"profiles", "carriers", "deployment", "power", "bwp", "access", "capacity",
                    "output"});
    parse_profiles(ctx, root, out);
    parse_carriers(ctx, root, out);
    if (root.contains("deployment")) {
        ctx.check_keys(root.at("deployment"), "/deployment",
                       {"name", "carrier_freq_ghz", "dl_psd_dbm_per_mhz", "ue_trp_dbm"});
        ctx.guard("/deployment",
                  [&] { out.deployment = root.at("deployment").get<DeploymentScenario>(); });
    } else {
        out.deployment = deployment_preset(DeploymentPreset::UrbanMicroFr1);
        out.injected_defaults.push_back("deployment");
    }
    parse_power(ctx, root, out);
    parse_bwp(ctx, root, out);
    parse_access(ctx, root, out);
    parse_capacity(ctx, root, out);
    parse_output(ctx, root, out);

    if (!ctx.issues.empty())
        fail(ctx);
    resolve_references(ctx, out);
    if (!ctx.issues.empty())
        fail(ctx);
    return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string serialize_scenario(const ScenarioFile& s) {
    Json root;

    Json profiles = Json::array();
    for (const auto& p : s.profiles) {
        Json e = p.profile;
        Json named{{"name", p.name}};
        for (auto& [k, v] : e.items())
            named[k] = v;
        profiles.push_back(named);
    }
    root["profiles"] = profiles;

    Json carriers = Json::array();
    for (const auto& c : s.carriers) {
        Json e = c.carrier;
        Json named{{"name", c.name}};
        for (auto& [k, v] : e.items())
            named[k] = v;
        carriers.push_back(named);
    }
    root["carriers"] = carriers;

    root["deployment"] = s.deployment;

    root["power"] = Json{
        {"model", s.power.model},
        {"rrc_state", to_string(s.power.rrc_state)},
        {"cycle_grid_s", s.power.cycle_grid_s},
        {"iat_grid_s", s.power.iat_grid_s},
        {"arrival_process", to_string(s.power.arrival_process)},
    };

    root["bwp"] = Json{
        {"carrier_layout", s.bwp.layout},
        {"features", s.bwp.features},
        {"profile", s.bwp.profile},
        {"pucch_block_prbs", s.bwp.pucch_block_prbs},
    };

    Json devices = Json::array();
    for (const auto& [ref, count] : s.access.devices)
        devices.push_back(Json{{"profile", ref}, {"count", count}});
    root["access"] = Json{
        {"config", s.access.config},
        {"devices", devices},
        {"seed", s.access.seed},
    };

    const CapacityScenario& cs = s.capacity.scenario;
    Json embb_traffic = cs.embb_traffic_model;
    Json redcap_traffic = cs.redcap_traffic_model;
    root["capacity"] = Json{
        {"n_cells", cs.n_cells},
        {"users_per_cell", cs.users_per_cell},
        {"redcap_fraction", cs.redcap_fraction},
        {"carrier_freq_ghz", cs.carrier_freq_ghz},
        {"bandwidth_mhz", cs.bandwidth_mhz},
        {"scheduler", to_string(cs.scheduler)},
        {"redcap_rx_penalty_db", cs.redcap_rx_penalty_db},
        {"se_attenuation", cs.sinr_to_se.attenuation},
        {"seed", cs.seed},
        {"drops", cs.drops},
        {"load_fractions", cs.load_fractions},
        {"embb_profile", s.capacity.embb_profile},
        {"redcap_profile", s.capacity.redcap_profile},
        {"embb_traffic", embb_traffic},
        {"redcap_traffic", redcap_traffic},
    };

    root["output"] = Json{
        {"format", to_string(s.output.format)},
        {"path", s.output.path},
    };

    return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Shipped examples
// ---------------------------------------------------------------------------

ScenarioFile example_scenario_fr1_urban_micro() {
    ScenarioFile s;
    s.profiles = {
        {"redcap", builtin_profile(ProfileKind::RedCapBaselineFr1)},
        {"redcap_2rx",
         [] {
             CapabilityProfile p = builtin_profile(ProfileKind::RedCapBaselineFr1);
             p.rx_branches = 2;
             p.dl_mimo_layers = 2;
             p.cost_reduction_pct.reset();
             return p;
         }()},
        {"reference", builtin_profile(ProfileKind::ReferenceNrFr1)},
    };
    s.carriers = {
        {"fr1_fdd_15khz_20mhz", make_carrier(15, 20.0, Duplex::FdFdd)},
        {"fr1_tdd_30khz_20mhz", make_carrier(30, 20.0, Duplex::Tdd, 0.75)},
    };
    s.deployment = deployment_preset(DeploymentPreset::UrbanMicroFr1);
    s.power = PowerSection{};
    s.bwp = BwpSection{};
    s.access = AccessSection{};
    s.access.devices = {{"redcap", 8}, {"reference", 8}};
    s.capacity = CapacitySection{};
    s.capacity.scenario.embb_profile = s.profile("reference");
    s.capacity.scenario.redcap_profile = s.profile("redcap");
    s.output = OutputSection{};
    return s;
}

ScenarioFile example_scenario_fr2_indoor() {
    ScenarioFile s = example_scenario_fr1_urban_micro();
    s.profiles = {
        {"redcap", builtin_profile(ProfileKind::RedCapBaselineFr2)},
        {"reference", builtin_profile(ProfileKind::ReferenceNrFr2)},
    };
    s.carriers = {
        {"fr2_tdd_120khz_100mhz", make_carrier(120, 100.0, Duplex::Tdd, 0.75)},
    };
    s.deployment = deployment_preset(DeploymentPreset::IndoorFr2);
    // 100 MHz FR2 carrier at 120 kHz SCS: 66 PRBs, SSB around the middle.
    s.bwp.layout = CarrierLayout{66, 120, {30, 35}, {28, 39}, Duplex::Tdd};
    s.bwp.profile = "redcap";
    s.access.devices = {{"redcap", 8}, {"reference", 8}};
    s.capacity.scenario.embb_profile = s.profile("reference");
    s.capacity.scenario.redcap_profile = s.profile("redcap");
    return s;
}

} // namespace redcap
