#pragma once

#include <utility>

#include "redcap/model.hpp"

namespace redcap {

enum class Direction { Dl, Ul };

const char* to_string(Direction d);

/// Parameters of the approximate peak physical-layer rate formula.
/// Defaults reproduce the baseline RedCap figures; overheads differ per
/// direction and frequency range and are exposed for recalibration.
struct RateParams {
    int layers = 1;
    int modulation_order = 6;          // bits/symbol
    double code_rate_max = 948.0 / 1024.0;
    double overhead_fraction = 0.14;   // in [0,1)
    double scaling_factor = 1.0;       // in (0,1]

    bool operator==(const RateParams&) const = default;

    void validate() const;

    /// Shipped default overheads: 0.14/0.08 for FR1 DL/UL, 0.18/0.10 for FR2.
    static RateParams defaults(Direction dir, FrequencyRange fr);
};

/// Core rate formula on raw numerology inputs, in Mbps:
///   layers * Qm * code_rate * scaling * (n_prb*12) * symbols_per_s * (1-OH) * share
double peak_rate_from_parts(int layers, int modulation_order, double code_rate,
                            double scaling_factor, int n_prb, int scs_khz,
                            double overhead_fraction, double duplex_share);

/// Peak rate for a profile on a carrier. Throws CapabilityError naming the
/// violated limit when the carrier or params exceed the profile.
double peak_rate(const CapabilityProfile& profile, const CarrierConfig& carrier,
                 Direction direction, const RateParams& params);

/// Half-duplex FDD derating: splits time between directions.
/// Returns (dl_rate * dl_time_share, ul_rate * (1 - dl_time_share)).
std::pair<double, double> hd_fdd_rates(double dl_rate_mbps, double ul_rate_mbps,
                                       double dl_time_share);

} // namespace redcap
