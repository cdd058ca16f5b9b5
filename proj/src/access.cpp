#include "redcap/access.hpp"

#include <cmath>
#include <random>

namespace redcap {

const char* to_string(IdMethod m) {
    switch (m) {
        case IdMethod::Msg1SeparatePrach: return "Msg1SeparatePrach";
        case IdMethod::Msg3Lcid: return "Msg3Lcid";
        case IdMethod::PostMsg4Capability: return "PostMsg4Capability";
    }
    return "?";
}

const char* to_string(IdPoint p) {
    switch (p) {
        case IdPoint::Msg1: return "Msg1";
        case IdPoint::Msg3: return "Msg3";
        case IdPoint::PostMsg4: return "PostMsg4";
        case IdPoint::Never: return "Never";
    }
    return "?";
}

namespace {

void check_cost(const MsgCost& c, const char* what) {
    if (c.narrow <= 0 || c.wide <= 0)
        throw ValidationError(std::string("access config: ") + what + " PRB costs must be positive");
    if (c.wide > c.narrow)
        throw ValidationError(std::string("access config: ") + what +
                              " wide-mode cost must not exceed the narrow-mode worst case");
}

// Fixed message processing delays, in ms.
constexpr double kMsg2DelayMs = 3.0;
constexpr double kMsg3DelayMs = 5.0;
constexpr double kMsg4DelayMs = 5.0;
constexpr double kConnectDelayMs = 3.0;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t idx) {
    // splitmix64 step so each device draws independently of the others.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (idx + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

void AccessConfig::validate() const {
    if (prach_periodicity_ms <= 0.0)
        throw ValidationError("access config: prach_periodicity_ms must be positive");
    check_cost(msg2_cost, "msg2");
    check_cost(msg3_cost, "msg3");
    check_cost(msg4_cost, "msg4");
}

IdPoint identification_point(const AccessConfig& cfg, const CapabilityProfile& device) {
    if (device.is_redcap && cfg.redcap_barred)
        return IdPoint::Never;
    if (!device.is_redcap && cfg.id_method == IdMethod::Msg1SeparatePrach)
        return IdPoint::Msg1; // identified by absence from the RedCap PRACH resources
    switch (cfg.id_method) {
        case IdMethod::Msg1SeparatePrach: return IdPoint::Msg1;
        case IdMethod::Msg3Lcid: return IdPoint::Msg3;
        case IdMethod::PostMsg4Capability: return IdPoint::PostMsg4;
    }
    return IdPoint::Never;
}

AccessResult simulate_access(const std::vector<CapabilityProfile>& devices,
                             const AccessConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    if (devices.empty())
        throw ValidationError("simulate_access: device list must be non-empty");

    AccessResult result;
    result.outcomes.reserve(devices.size());

    double time_sum = 0.0;
    int connected = 0;

    for (std::size_t i = 0; i < devices.size(); ++i) {
        const auto& dev = devices[i];
        dev.validate();

        AccessOutcome out;
        out.device_id = static_cast<int>(i);
        out.is_redcap = dev.is_redcap;
        out.identified_at = identification_point(cfg, dev);

        if (dev.is_redcap && cfg.redcap_barred) {
            out.barred = true;
            result.outcomes.push_back(out);
            ++result.stats.n_barred;
            continue;
        }

        // The device decides to access at a random point in the PRACH period
        // and transmits Msg1 at the next occasion.
        std::mt19937_64 rng(mix_seed(seed, i));
        std::uniform_real_distribution<double> u(0.0, cfg.prach_periodicity_ms);
        const double decide = u(rng);
        const double msg1_t = cfg.prach_periodicity_ms; // next occasion after deciding

        // A RedCap device always needs the conservative allocation; a
        // non-RedCap device is scheduled wide once identified.
        const bool known_at_msg2 = !dev.is_redcap && out.identified_at == IdPoint::Msg1;
        const bool known_at_msg4 =
            !dev.is_redcap &&
            (out.identified_at == IdPoint::Msg1 || out.identified_at == IdPoint::Msg3);

        int prbs = 0;
        prbs += known_at_msg2 ? cfg.msg2_cost.wide : cfg.msg2_cost.narrow;
        prbs += known_at_msg2 ? cfg.msg3_cost.wide : cfg.msg3_cost.narrow;
        prbs += known_at_msg4 ? cfg.msg4_cost.wide : cfg.msg4_cost.narrow;
        out.total_prbs_scheduled = prbs;

        const double connected_t =
            msg1_t + kMsg2DelayMs + kMsg3DelayMs + kMsg4DelayMs + kConnectDelayMs;
        out.time_to_connected_ms = connected_t - decide;

        time_sum += *out.time_to_connected_ms;
        ++connected;
        result.outcomes.push_back(out);
    }

    result.stats.n_devices = static_cast<int>(devices.size());
    for (const auto& o : result.outcomes)
        result.stats.total_prbs_scheduled += o.total_prbs_scheduled;
    result.stats.mean_time_to_connected_ms = connected > 0 ? time_sum / connected : 0.0;
    return result;
}

} // namespace redcap
