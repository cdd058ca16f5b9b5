#include "redcap/linkbudget.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace redcap {

const char* to_string(Channel c) {
    switch (c) {
        case Channel::Msg1Prach: return "Msg1_PRACH";
        case Channel::Msg2Pdsch: return "Msg2_PDSCH";
        case Channel::Msg3Pusch: return "Msg3_PUSCH";
        case Channel::Msg4Pdsch: return "Msg4_PDSCH";
        case Channel::Pucch: return "PUCCH";
        case Channel::PdcchCss: return "PDCCH_CSS";
        case Channel::Pdsch: return "PDSCH";
        case Channel::Pusch: return "PUSCH";
    }
    return "?";
}

Direction channel_direction(Channel c) {
    switch (c) {
        case Channel::Msg1Prach:
        case Channel::Msg3Pusch:
        case Channel::Pucch:
        case Channel::Pusch:
            return Direction::Ul;
        default:
            return Direction::Dl;
    }
}

void ChannelLinkParams::validate() const {
    if (occupied_bandwidth_hz <= 0.0)
        throw ValidationError("channel link params: occupied_bandwidth_hz must be positive");
    if (!std::isfinite(required_snr_db))
        throw ValidationError("channel link params: required_snr_db must be finite");
}

double thermal_noise_dbm(double bandwidth_hz) {
    return -174.0 + 10.0 * std::log10(bandwidth_hz);
}

double mil(const ChannelLinkParams& p) {
    p.validate();
    const double noise_floor =
        thermal_noise_dbm(p.occupied_bandwidth_hz) + p.noise_figure_db + p.required_snr_db;
    return p.tx_power_dbm + p.tx_bf_gain_db + p.rx_bf_gain_db -
           p.antenna_efficiency_penalty_db - noise_floor;
}

double dl_tx_power_from_psd(double psd_dbm_per_mhz, double bandwidth_mhz) {
    if (bandwidth_mhz <= 0.0)
        throw ValidationError("dl_tx_power_from_psd: bandwidth_mhz must be positive");
    return psd_dbm_per_mhz + 10.0 * std::log10(bandwidth_mhz);
}

BottleneckResult bottleneck(const std::vector<ChannelMil>& entries) {
    if (entries.empty())
        throw AnalysisError("bottleneck: empty channel list");
    const ChannelMil* best = &entries.front();
    for (const auto& e : entries) {
        if (e.mil_db < best->mil_db ||
            (e.mil_db == best->mil_db &&
             static_cast<int>(e.params.channel) < static_cast<int>(best->params.channel)))
            best = &e;
    }
    return {best->params.channel, best->mil_db};
}

CoverageReport coverage_recovery(const LinkBudget& redcap, const LinkBudget& reference) {
    if (!(redcap.scenario == reference.scenario))
        throw AnalysisError(
            "coverage_recovery: RedCap and reference sets were evaluated under different "
            "deployment scenarios");
    const BottleneckResult ref = bottleneck(reference.entries);

    CoverageReport report;
    report.scenario = redcap.scenario;
    report.reference_bottleneck_channel = ref.channel;
    report.reference_bottleneck_mil_db = ref.mil_db;
    report.entries.reserve(redcap.entries.size());
    for (const auto& e : redcap.entries) {
        ChannelRecovery r;
        r.channel = e.params.channel;
        r.direction = e.params.direction;
        r.mil_db = e.mil_db;
        r.recovery_db = std::max(0.0, ref.mil_db - e.mil_db);
        report.entries.push_back(r);
    }
    return report;
}

std::vector<Channel> flagged_channels(const CoverageReport& report) {
    std::vector<Channel> out;
    for (Channel c : kAllChannels)
        for (const auto& e : report.entries)
            if (e.channel == c && e.recovery_db > 0.0)
                out.push_back(c);
    return out;
}

// ---------------------------------------------------------------------------
// Shipped data
// ---------------------------------------------------------------------------

const SnrTableRow& SnrTable::lookup(DeploymentPreset scenario, Channel channel,
                                    int rx_branches) const {
    const int want_rx = channel_direction(channel) == Direction::Ul ? 0 : rx_branches;
    for (const auto& r : rows)
        if (r.scenario == scenario && r.channel == channel && r.rx_branches == want_rx)
            return r;
    std::ostringstream os;
    os << "SNR table has no row for scenario " << to_string(scenario) << ", channel "
       << to_string(channel) << ", rx_branches " << want_rx;
    throw ValidationError(os.str());
}

namespace {

void append_fr1_rows(std::vector<SnrTableRow>& rows, DeploymentPreset scenario) {
    // UL rows (rx_branches = 0: device independent). Occupied bandwidths use
    // 30 kHz SCS PRB widths.
    rows.push_back({scenario, Channel::Msg1Prach, 0, -10.0, 2.16e6});
    rows.push_back({scenario, Channel::Msg3Pusch, 0, -5.0, 0.72e6});
    rows.push_back({scenario, Channel::Pucch, 0, -5.0, 0.36e6});
    rows.push_back({scenario, Channel::Pusch, 0, -2.0, 1.44e6});
    // DL rows, 2-Rx baseline.
    rows.push_back({scenario, Channel::Msg2Pdsch, 2, -3.0, 4.32e6});
    rows.push_back({scenario, Channel::Msg4Pdsch, 2, -6.0, 4.32e6});
    rows.push_back({scenario, Channel::PdcchCss, 2, -8.0, 8.64e6});
    rows.push_back({scenario, Channel::Pdsch, 2, -6.0, 7.2e6});
    // DL rows, 1-Rx: +3 dB required SNR without the second receive branch.
    rows.push_back({scenario, Channel::Msg2Pdsch, 1, 0.0, 4.32e6});
    rows.push_back({scenario, Channel::Msg4Pdsch, 1, -3.0, 4.32e6});
    rows.push_back({scenario, Channel::PdcchCss, 1, -5.0, 8.64e6});
    rows.push_back({scenario, Channel::Pdsch, 1, -3.0, 7.2e6});
}

void append_fr2_rows(std::vector<SnrTableRow>& rows) {
    const auto scenario = DeploymentPreset::IndoorFr2;
    // 120 kHz SCS PRB widths.
    rows.push_back({scenario, Channel::Msg1Prach, 0, -8.0, 16.68e6});
    rows.push_back({scenario, Channel::Msg3Pusch, 0, -5.0, 2.88e6});
    rows.push_back({scenario, Channel::Pucch, 0, -3.0, 1.44e6});
    rows.push_back({scenario, Channel::Pusch, 0, -2.0, 5.76e6});
    // FR2 devices all have 2 receiver branches; the RedCap difference enters
    // through the panel gain delta, not the SNR rows.
    rows.push_back({scenario, Channel::Msg2Pdsch, 2, 5.0, 17.28e6});
    rows.push_back({scenario, Channel::Msg4Pdsch, 2, 4.1, 17.28e6});
    rows.push_back({scenario, Channel::PdcchCss, 2, 1.0, 34.56e6});
    rows.push_back({scenario, Channel::Pdsch, 2, 3.6, 28.8e6});
}

SnrTable build_default_table() {
    SnrTable t;
    append_fr1_rows(t.rows, DeploymentPreset::RuralFr1);
    append_fr1_rows(t.rows, DeploymentPreset::UrbanMacroFr1);
    append_fr1_rows(t.rows, DeploymentPreset::UrbanMicroFr1);
    append_fr2_rows(t.rows);
    return t;
}

DeploymentPreset preset_from_string(const std::string& s) {
    static const std::map<std::string, DeploymentPreset> names = {
        {"RuralFR1", DeploymentPreset::RuralFr1},
        {"UrbanMacroFR1", DeploymentPreset::UrbanMacroFr1},
        {"UrbanMicroFR1", DeploymentPreset::UrbanMicroFr1},
        {"IndoorFR2", DeploymentPreset::IndoorFr2},
        {"Custom", DeploymentPreset::Custom},
    };
    auto it = names.find(s);
    if (it == names.end())
        throw ValidationError("unknown deployment scenario name: " + s);
    return it->second;
}

Channel channel_from_string(const std::string& s) {
    for (Channel c : kAllChannels)
        if (s == to_string(c))
            return c;
    throw ValidationError("unknown channel name: " + s);
}

} // namespace

const SnrTable& default_snr_table() {
    static const SnrTable table = build_default_table();
    return table;
}

SnrTable parse_snr_table_csv(const std::string& text) {
    SnrTable t;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen) {
            header_seen = true; // first non-comment line is the header
            continue;
        }
        std::istringstream ls(line);
        std::string scenario, channel, direction, rx, snr, bw;
        if (!std::getline(ls, scenario, ',') || !std::getline(ls, channel, ',') ||
            !std::getline(ls, direction, ',') || !std::getline(ls, rx, ',') ||
            !std::getline(ls, snr, ',') || !std::getline(ls, bw))
            throw ValidationError("SNR table CSV: malformed line: " + line);
        SnrTableRow row;
        row.scenario = preset_from_string(scenario);
        row.channel = channel_from_string(channel);
        row.rx_branches = std::stoi(rx);
        row.required_snr_db = std::stod(snr);
        row.occupied_bandwidth_hz = std::stod(bw);
        const char* expect_dir = channel_direction(row.channel) == Direction::Ul ? "UL" : "DL";
        if (direction != expect_dir)
            throw ValidationError("SNR table CSV: direction mismatch for " + channel);
        t.rows.push_back(row);
    }
    if (t.rows.empty())
        throw ValidationError("SNR table CSV: no data rows");
    return t;
}

std::string snr_table_to_csv(const SnrTable& table) {
    std::ostringstream os;
    os << "scenario,channel,direction,rx_branches,required_snr_db,occupied_bandwidth_hz\n";
    for (const auto& r : table.rows) {
        os << to_string(r.scenario) << ',' << to_string(r.channel) << ','
           << to_string(channel_direction(r.channel)) << ',' << r.rx_branches << ','
           << r.required_snr_db << ',' << r.occupied_bandwidth_hz << '\n';
    }
    return os.str();
}

RfAssumptions default_rf(DeploymentPreset preset) {
    RfAssumptions rf;
    if (preset == DeploymentPreset::IndoorFr2) {
        rf.bs_tx_bf_gain_db = 23.0;
        rf.bs_rx_bf_gain_db = 23.0;
        rf.ue_tx_bf_gain_db = 6.0;
        rf.ue_rx_bf_gain_db = 9.0;
        rf.redcap_rx_panel_delta_db = 3.0; // 2 vs 4 elements per panel, an assumption
        rf.ue_noise_figure_db = 10.0;
        rf.bs_noise_figure_db = 7.0;
    }
    return rf;
}

LinkBudget build_link_budget(const DeploymentScenario& scenario,
                             const CapabilityProfile& profile, const SnrTable& table,
                             const RfAssumptions* rf_in, const LinkBudgetOptions& opts) {
    profile.validate();
    const RfAssumptions rf = rf_in ? *rf_in : default_rf(scenario.name);
    const bool fr2 = frequency_range_of(scenario) == FrequencyRange::Fr2;

    LinkBudget budget;
    budget.scenario = scenario;
    for (Channel c : kAllChannels) {
        const auto& row = table.lookup(scenario.name, c, profile.rx_branches);
        ChannelLinkParams p;
        p.channel = c;
        p.direction = channel_direction(c);
        p.required_snr_db = row.required_snr_db;
        p.occupied_bandwidth_hz = row.occupied_bandwidth_hz;
        p.antenna_efficiency_penalty_db = opts.antenna_efficiency_penalty_db;
        if (p.direction == Direction::Dl) {
            p.tx_power_dbm = dl_tx_power_from_psd(scenario.dl_psd_dbm_per_mhz,
                                                  row.occupied_bandwidth_hz / 1e6);
            p.tx_bf_gain_db = rf.bs_tx_bf_gain_db;
            p.rx_bf_gain_db = rf.ue_rx_bf_gain_db -
                              ((fr2 && profile.is_redcap) ? rf.redcap_rx_panel_delta_db : 0.0);
            p.noise_figure_db = rf.ue_noise_figure_db;
        } else {
            p.tx_power_dbm = opts.trp_override_dbm.value_or(scenario.ue_trp_dbm);
            p.tx_bf_gain_db = rf.ue_tx_bf_gain_db;
            p.rx_bf_gain_db = rf.bs_rx_bf_gain_db;
            p.noise_figure_db = rf.bs_noise_figure_db;
        }
        budget.entries.push_back({p, mil(p)});
    }
    return budget;
}

CoverageReport fr2_trp_sensitivity(const DeploymentScenario& scenario, double trp_dbm,
                                   const SnrTable& table) {
    if (frequency_range_of(scenario) != FrequencyRange::Fr2)
        throw AnalysisError("fr2_trp_sensitivity requires an FR2 deployment scenario");
    LinkBudgetOptions opts;
    opts.trp_override_dbm = trp_dbm;
    const LinkBudget redcap =
        build_link_budget(scenario, builtin_profile(ProfileKind::RedCapBaselineFr2), table,
                          nullptr, opts);
    const LinkBudget reference =
        build_link_budget(scenario, builtin_profile(ProfileKind::ReferenceNrFr2), table,
                          nullptr, opts);
    return coverage_recovery(redcap, reference);
}

} // namespace redcap
