#include "redcap/datarate.hpp"

#include <sstream>

namespace redcap {

const char* to_string(Direction d) {
    return d == Direction::Dl ? "DL" : "UL";
}

void RateParams::validate() const {
    if (layers < 1)
        throw ValidationError("rate params: layers must be >= 1");
    if (modulation_order != 2 && modulation_order != 4 && modulation_order != 6 &&
        modulation_order != 8)
        throw ValidationError("rate params: modulation_order must be one of 2/4/6/8");
    if (code_rate_max <= 0.0 || code_rate_max > 1.0)
        throw ValidationError("rate params: code_rate_max must lie in (0,1]");
    if (overhead_fraction < 0.0 || overhead_fraction >= 1.0)
        throw ValidationError("rate params: overhead_fraction must lie in [0,1)");
    if (scaling_factor <= 0.0 || scaling_factor > 1.0)
        throw ValidationError("rate params: scaling_factor must lie in (0,1]");
}

RateParams RateParams::defaults(Direction dir, FrequencyRange fr) {
    RateParams p;
    if (fr == FrequencyRange::Fr1)
        p.overhead_fraction = dir == Direction::Dl ? 0.14 : 0.08;
    else
        p.overhead_fraction = dir == Direction::Dl ? 0.18 : 0.10;
    return p;
}

double peak_rate_from_parts(int layers, int modulation_order, double code_rate,
                            double scaling_factor, int n_prb, int scs_khz,
                            double overhead_fraction, double duplex_share) {
    const double subcarriers = static_cast<double>(n_prb) * 12.0;
    const double symbols_per_s = ofdm_symbols_per_second(scs_khz);
    const double bps = static_cast<double>(layers) * modulation_order * code_rate *
                       scaling_factor * subcarriers * symbols_per_s *
                       (1.0 - overhead_fraction) * duplex_share;
    return bps * 1e-6;
}

double peak_rate(const CapabilityProfile& profile, const CarrierConfig& carrier,
                 Direction direction, const RateParams& params) {
    profile.validate();
    carrier.validate();
    params.validate();

    if (carrier.bandwidth_mhz > profile.max_bandwidth_mhz) {
        std::ostringstream os;
        os << "carrier bandwidth " << carrier.bandwidth_mhz
           << " MHz exceeds the profile's max_bandwidth_mhz of " << profile.max_bandwidth_mhz;
        throw CapabilityError(os.str());
    }
    const int mod_cap = direction == Direction::Dl ? profile.max_dl_modulation_order
                                                   : profile.max_ul_modulation_order;
    if (params.modulation_order > mod_cap) {
        std::ostringstream os;
        os << "modulation order " << params.modulation_order << " exceeds the profile's "
           << (direction == Direction::Dl ? "max_dl_modulation_order" : "max_ul_modulation_order")
           << " of " << mod_cap;
        throw CapabilityError(os.str());
    }
    // The MIMO layer cap applies to both directions; the profile carries a
    // single layer capability (dl_mimo_layers).
    if (params.layers > profile.dl_mimo_layers) {
        std::ostringstream os;
        os << "layer count " << params.layers << " exceeds the profile's dl_mimo_layers of "
           << profile.dl_mimo_layers;
        throw CapabilityError(os.str());
    }
    if (profile.frequency_range == FrequencyRange::Fr2 &&
        (carrier.scs_khz < 60 || carrier.duplex_mode != Duplex::Tdd))
        throw ValidationError("FR2 carriers require 60 or 120 kHz SCS and TDD");

    double duplex_share = 1.0;
    if (carrier.duplex_mode == Duplex::Tdd)
        duplex_share = direction == Direction::Dl ? carrier.tdd_dl_fraction
                                                  : 1.0 - carrier.tdd_dl_fraction;

    return peak_rate_from_parts(params.layers, params.modulation_order, params.code_rate_max,
                                params.scaling_factor, carrier.n_prb, carrier.scs_khz,
                                params.overhead_fraction, duplex_share);
}

std::pair<double, double> hd_fdd_rates(double dl_rate_mbps, double ul_rate_mbps,
                                       double dl_time_share) {
    if (dl_rate_mbps <= 0.0 || ul_rate_mbps <= 0.0)
        throw ValidationError("hd_fdd_rates: rates must be positive");
    if (dl_time_share <= 0.0 || dl_time_share >= 1.0)
        throw ValidationError("hd_fdd_rates: dl_time_share must lie strictly in (0,1)");
    return {dl_rate_mbps * dl_time_share, ul_rate_mbps * (1.0 - dl_time_share)};
}

} // namespace redcap
