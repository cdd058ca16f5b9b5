#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "redcap/model.hpp"

namespace redcap {

enum class IdMethod { Msg1SeparatePrach, Msg3Lcid, PostMsg4Capability };

/// Where in the access procedure the network learns a device's capability
/// class. Msg A (2-step access) identification behaves as Msg3.
enum class IdPoint { Msg1, Msg3, PostMsg4, Never };

const char* to_string(IdMethod m);
const char* to_string(IdPoint p);

/// PRB accounting weights for one scheduled message. Narrow mode is the
/// conservative worst-case scheduling used while the device class is still
/// unknown, so it costs at least as much as wide mode.
struct MsgCost {
    int narrow = 0;
    int wide = 0;

    bool operator==(const MsgCost&) const = default;
};

struct AccessConfig {
    IdMethod id_method = IdMethod::Msg3Lcid;
    bool redcap_barred = false;
    double prach_periodicity_ms = 10.0;
    MsgCost msg2_cost{12, 6};
    MsgCost msg3_cost{8, 4};
    MsgCost msg4_cost{24, 12};

    bool operator==(const AccessConfig&) const = default;

    void validate() const;
};

struct AccessOutcome {
    int device_id = 0;
    bool is_redcap = false;
    IdPoint identified_at = IdPoint::Never;
    bool barred = false;
    int total_prbs_scheduled = 0;
    std::optional<double> time_to_connected_ms; // absent for barred devices
};

struct AccessStats {
    int n_devices = 0;
    int n_barred = 0;
    long long total_prbs_scheduled = 0;
    double mean_time_to_connected_ms = 0.0; // over devices that connected
};

struct AccessResult {
    std::vector<AccessOutcome> outcomes;
    AccessStats stats;
};

/// Identification point for one device under a configuration. Barred RedCap
/// devices are Never identified; in a cell with RedCap-specific PRACH
/// resources, non-RedCap devices are implicitly identified at Msg1 by their
/// absence from those resources.
IdPoint identification_point(const AccessConfig& cfg, const CapabilityProfile& device);

/// Walks every device through the four-step random-access exchange and
/// accounts the scheduled PRBs per message. Until identification, allocations
/// use the narrow-mode worst-case costs; once the network knows the device is
/// not RedCap, subsequent messages use wide-mode costs. Deterministic for a
/// given seed.
AccessResult simulate_access(const std::vector<CapabilityProfile>& devices,
                             const AccessConfig& cfg, std::uint64_t seed);

} // namespace redcap
