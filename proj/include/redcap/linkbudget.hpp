#pragma once

#include <optional>
#include <string>
#include <vector>

#include "redcap/datarate.hpp"
#include "redcap/model.hpp"

namespace redcap {

/// Physical channels included in the link budget. The enum order is the
/// documented tie-break order for bottleneck selection.
enum class Channel {
    Msg1Prach,
    Msg2Pdsch,
    Msg3Pusch,
    Msg4Pdsch,
    Pucch,
    PdcchCss,
    Pdsch,
    Pusch,
};

inline constexpr Channel kAllChannels[] = {
    Channel::Msg1Prach, Channel::Msg2Pdsch, Channel::Msg3Pusch, Channel::Msg4Pdsch,
    Channel::Pucch,     Channel::PdcchCss,  Channel::Pdsch,     Channel::Pusch,
};

const char* to_string(Channel c);
Direction channel_direction(Channel c);

/// Per-channel transmit/receive parameters feeding the MIL computation.
struct ChannelLinkParams {
    Channel channel = Channel::Pusch;
    Direction direction = Direction::Ul;
    double tx_power_dbm = 0.0; // PSD x bandwidth for DL, TRP for UL
    double tx_bf_gain_db = 0.0;
    double rx_bf_gain_db = 0.0;
    double required_snr_db = 0.0;
    double noise_figure_db = 0.0;
    double occupied_bandwidth_hz = 0.0;
    double antenna_efficiency_penalty_db = 0.0;

    void validate() const;
};

/// Thermal noise power over a bandwidth: -174 dBm/Hz + 10*log10(B).
double thermal_noise_dbm(double bandwidth_hz);

/// Maximum isotropic loss of one channel, in dB.
double mil(const ChannelLinkParams& p);

/// DL transmit power from a power spectral density over a bandwidth.
double dl_tx_power_from_psd(double psd_dbm_per_mhz, double bandwidth_mhz);

struct ChannelMil {
    ChannelLinkParams params;
    double mil_db = 0.0;
};

/// An evaluated channel set for one device under one deployment scenario.
struct LinkBudget {
    DeploymentScenario scenario;
    std::vector<ChannelMil> entries;
};

struct BottleneckResult {
    Channel channel;
    double mil_db;
};

/// Minimum-MIL entry; ties break by channel enum order. Throws on empty input.
BottleneckResult bottleneck(const std::vector<ChannelMil>& entries);

struct ChannelRecovery {
    Channel channel;
    Direction direction;
    double mil_db = 0.0;
    double recovery_db = 0.0; // max(0, reference bottleneck - this channel's MIL)
};

struct CoverageReport {
    DeploymentScenario scenario;
    Channel reference_bottleneck_channel = Channel::Pusch;
    double reference_bottleneck_mil_db = 0.0;
    std::vector<ChannelRecovery> entries;
};

/// Per-channel coverage recovery of a RedCap channel set against the
/// bottleneck of a reference set. Both sets must have been evaluated under
/// the same deployment scenario.
CoverageReport coverage_recovery(const LinkBudget& redcap, const LinkBudget& reference);

/// Channels with recovery_db > 0, in enum order.
std::vector<Channel> flagged_channels(const CoverageReport& report);

// ---------------------------------------------------------------------------
// Shipped per-channel data
// ---------------------------------------------------------------------------

/// One row of the required-SNR table. DL rows are keyed by receiver branch
/// count (1 or 2); UL rows use rx_branches = 0 and apply to any device.
struct SnrTableRow {
    DeploymentPreset scenario;
    Channel channel;
    int rx_branches;
    double required_snr_db;
    double occupied_bandwidth_hz;
};

struct SnrTable {
    std::vector<SnrTableRow> rows;

    const SnrTableRow& lookup(DeploymentPreset scenario, Channel channel,
                              int rx_branches) const;
};

/// Shipped default table calibrated to the study-item conclusions.
const SnrTable& default_snr_table();

/// CSV round-trip for the table (columns: scenario,channel,direction,
/// rx_branches,required_snr_db,occupied_bandwidth_hz).
SnrTable parse_snr_table_csv(const std::string& text);
std::string snr_table_to_csv(const SnrTable& table);

/// Beamforming-gain and noise-figure assumptions per deployment scenario.
struct RfAssumptions {
    double bs_tx_bf_gain_db = 17.0;
    double bs_rx_bf_gain_db = 17.0;
    double ue_tx_bf_gain_db = 0.0;
    double ue_rx_bf_gain_db = 0.0;
    // FR2 only: RedCap panels carry half the antenna elements of the
    // reference device; applied to the receive side.
    double redcap_rx_panel_delta_db = 0.0;
    double ue_noise_figure_db = 7.0;
    double bs_noise_figure_db = 5.0;
};

RfAssumptions default_rf(DeploymentPreset preset);

struct LinkBudgetOptions {
    double antenna_efficiency_penalty_db = 0.0; // optional RedCap size penalty
    std::optional<double> trp_override_dbm;     // overrides the scenario's UE TRP
};

/// Evaluates all channels for a profile under a scenario, using the SNR table
/// and RF assumptions.
LinkBudget build_link_budget(const DeploymentScenario& scenario,
                             const CapabilityProfile& profile,
                             const SnrTable& table = default_snr_table(),
                             const RfAssumptions* rf = nullptr,
                             const LinkBudgetOptions& opts = {});

/// FR2 TRP sensitivity: evaluates the baseline RedCap FR2 device against the
/// FR2 reference device with both UE transmit powers set to trp_dbm.
/// Throws AnalysisError for FR1 scenarios.
CoverageReport fr2_trp_sensitivity(const DeploymentScenario& scenario, double trp_dbm,
                                   const SnrTable& table = default_snr_table());

} // namespace redcap
