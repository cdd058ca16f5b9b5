#include "redcap/bwp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace redcap {

const char* to_string(BwpOwner o) { return o == BwpOwner::RegularNr ? "RegularNR" : "RedCap"; }

const char* to_string(PucchHopping h) {
    return h == PucchHopping::EnabledEdgeHopping ? "EnabledEdgeHopping" : "Disabled";
}

const char* to_string(BwpRule r) {
    switch (r) {
        case BwpRule::BwpExceedsCapability: return "bwp_exceeds_capability";
        case BwpRule::TddCenterMisaligned: return "tdd_center_misaligned";
        case BwpRule::DlBwpMissingSsbCoreset0: return "dl_bwp_missing_ssb_coreset0";
        case BwpRule::PucchHoppingDisableNotAllowed: return "pucch_hopping_disable_not_allowed";
    }
    return "?";
}

namespace {

void check_range(const PrbRange& r, int n_prb, const char* what) {
    if (r.first < 0 || r.last >= n_prb || r.first > r.last) {
        std::ostringstream os;
        os << what << ": malformed PRB range [" << r.first << "," << r.last
           << "] on a carrier of " << n_prb << " PRBs";
        throw ValidationError(os.str());
    }
}

/// Widest PRB count the profile may occupy on this carrier's numerology.
int capability_prb_limit(const CarrierLayout& carrier, const CapabilityProfile& profile) {
    const double cap_mhz =
        profile.frequency_range == FrequencyRange::Fr1 ? std::min(profile.max_bandwidth_mhz, 20.0)
                                                       : std::min(profile.max_bandwidth_mhz, 100.0);
    return prb_count_for(carrier.scs_khz, cap_mhz);
}

} // namespace

void CarrierLayout::validate() const {
    if (n_prb <= 0)
        throw ValidationError("carrier layout: n_prb must be positive");
    check_range(ssb_prb_range, n_prb, "carrier layout ssb_prb_range");
    check_range(coreset0_prb_range, n_prb, "carrier layout coreset0_prb_range");
}

// ---------------------------------------------------------------------------
// validate_layout
// ---------------------------------------------------------------------------

std::vector<BwpViolation> validate_layout(const CarrierLayout& carrier,
                                          const std::vector<BwpConfig>& bwps,
                                          const CapabilityProfile& profile) {
    carrier.validate();
    profile.validate();
    if (bwps.empty())
        throw ValidationError("validate_layout: bwps must be non-empty");
    for (const auto& b : bwps)
        check_range(b.prb_range, carrier.n_prb, "bwp prb_range");

    std::vector<BwpViolation> out;

    // (a) RedCap BWPs wider than the device capability.
    const int cap_prbs = capability_prb_limit(carrier, profile);
    for (const auto& b : bwps) {
        if (b.owner == BwpOwner::RedCap && b.prb_range.length() > cap_prbs) {
            std::ostringstream os;
            os << "RedCap " << to_string(b.direction) << " BWP of " << b.prb_range.length()
               << " PRBs exceeds the device capability of " << cap_prbs << " PRBs at "
               << carrier.scs_khz << " kHz SCS";
            out.push_back({BwpRule::BwpExceedsCapability, os.str(), {b.prb_range}});
        }
    }

    // (b) TDD center-frequency alignment between each owner's UL and DL BWPs.
    if (carrier.duplex_mode == Duplex::Tdd) {
        for (BwpOwner owner : {BwpOwner::RegularNr, BwpOwner::RedCap}) {
            const BwpConfig* ul = nullptr;
            const BwpConfig* dl = nullptr;
            for (const auto& b : bwps) {
                if (b.owner != owner)
                    continue;
                (b.direction == Direction::Ul ? ul : dl) = &b;
            }
            if (ul && dl) {
                const int ul_center2 = ul->prb_range.first + ul->prb_range.last;
                const int dl_center2 = dl->prb_range.first + dl->prb_range.last;
                if (ul_center2 != dl_center2) {
                    std::ostringstream os;
                    os << to_string(owner) << " UL BWP [" << ul->prb_range.first << ","
                       << ul->prb_range.last << "] and DL BWP [" << dl->prb_range.first << ","
                       << dl->prb_range.last << "] have misaligned center frequencies in TDD";
                    out.push_back({BwpRule::TddCenterMisaligned, os.str(),
                                   {ul->prb_range, dl->prb_range}});
                }
            }
        }
    }

    for (const auto& b : bwps) {
        // (c) DL initial BWP must span the SSB and CORESET#0 unless the
        // Release 17 RedCap exception applies.
        if (b.direction == Direction::Dl) {
            const bool has_anchors = b.prb_range.contains(carrier.ssb_prb_range) &&
                                     b.prb_range.contains(carrier.coreset0_prb_range);
            const bool exempt =
                b.owner == BwpOwner::RedCap && b.release17_features.dl_bwp_without_ssb_allowed;
            if (!has_anchors && !exempt) {
                std::ostringstream os;
                os << to_string(b.owner) << " DL BWP [" << b.prb_range.first << ","
                   << b.prb_range.last << "] does not contain the SSB and CORESET#0";
                out.push_back({BwpRule::DlBwpMissingSsbCoreset0, os.str(), {b.prb_range}});
            }
        }
        // (d) PUCCH hopping can only be disabled on a Release 17 RedCap UL BWP.
        if (b.direction == Direction::Ul && b.pucch_hopping == PucchHopping::Disabled) {
            const bool allowed =
                b.owner == BwpOwner::RedCap && b.release17_features.hopping_disable_allowed;
            if (!allowed) {
                std::ostringstream os;
                os << "PUCCH frequency hopping disabled on " << to_string(b.owner)
                   << " initial UL BWP without the Release 17 allowance";
                out.push_back({BwpRule::PucchHoppingDisableNotAllowed, os.str(), {b.prb_range}});
            }
        }
    }

    return out;
}

// ---------------------------------------------------------------------------
// pusch_fragmentation
// ---------------------------------------------------------------------------

FragReport pusch_fragmentation(const CarrierLayout& carrier,
                               const std::vector<PrbRange>& pucch_blocks) {
    carrier.validate();
    for (const auto& b : pucch_blocks)
        check_range(b, carrier.n_prb, "pucch block");

    // Union the blocks, then walk the gaps between them.
    std::vector<PrbRange> blocks = pucch_blocks;
    std::sort(blocks.begin(), blocks.end(),
              [](const PrbRange& a, const PrbRange& b) { return a.first < b.first; });
    std::vector<PrbRange> merged;
    for (const auto& b : blocks) {
        if (!merged.empty() && b.first <= merged.back().last + 1)
            merged.back().last = std::max(merged.back().last, b.last);
        else
            merged.push_back(b);
    }

    FragReport rep;
    int occupied = 0;
    int cursor = 0; // first PRB of the next free gap
    int largest = 0;
    for (const auto& m : merged) {
        largest = std::max(largest, m.first - cursor);
        occupied += m.length();
        cursor = m.last + 1;
    }
    largest = std::max(largest, carrier.n_prb - cursor);

    rep.free_prbs_total = carrier.n_prb - occupied;
    rep.largest_contiguous_prbs = largest;
    rep.fragmentation_ratio =
        rep.free_prbs_total > 0
            ? 1.0 - static_cast<double>(largest) / static_cast<double>(rep.free_prbs_total)
            : 0.0;
    return rep;
}

// ---------------------------------------------------------------------------
// plan_redcap_bwp
// ---------------------------------------------------------------------------

namespace {

PrbRange clamp_centered(int center2, int width, int n_prb) {
    // center2 is twice the desired center PRB; keep the range inside the carrier.
    int first = (center2 - (width - 1)) / 2;
    first = std::clamp(first, 0, n_prb - width);
    return {first, first + width - 1};
}

std::vector<PrbRange> regular_edge_pucch(int n_prb, int ps) {
    return {{0, ps - 1}, {n_prb - ps, n_prb - 1}};
}

std::vector<PrbRange> redcap_pucch_blocks(const PrbRange& ul, PucchHopping hopping, int ps,
                                          int n_prb) {
    if (hopping == PucchHopping::EnabledEdgeHopping)
        return {{ul.first, ul.first + ps - 1}, {ul.last - ps + 1, ul.last}};
    // Hopping disabled: a single block at the BWP edge nearer the carrier edge.
    const int dist_low = ul.first;
    const int dist_high = (n_prb - 1) - ul.last;
    if (dist_low <= dist_high)
        return {{ul.first, ul.first + ps - 1}};
    return {{ul.last - ps + 1, ul.last}};
}

} // namespace

PlanResult plan_redcap_bwp(const CarrierLayout& carrier, const CapabilityProfile& profile,
                           const Release17Features& features, int pucch_block_prbs) {
    carrier.validate();
    profile.validate();
    if (!profile.is_redcap)
        throw ValidationError("plan_redcap_bwp: profile must be a RedCap profile");
    if (pucch_block_prbs < 1)
        throw ValidationError("plan_redcap_bwp: pucch_block_prbs must be >= 1");

    const int ps = pucch_block_prbs;
    const int cap_prbs = capability_prb_limit(carrier, profile);
    const auto regular_blocks = regular_edge_pucch(carrier.n_prb, ps);

    if (!features.separate_initial_bwp) {
        // Without the separate-BWP feature the device must use the regular
        // initial BWPs spanning the full carrier.
        if (carrier.n_prb > cap_prbs) {
            PlanResult r;
            r.binding_constraints = {
                "separate_initial_bwp disabled: device must use the regular initial BWPs",
                "regular initial BWP spans " + std::to_string(carrier.n_prb) +
                    " PRBs, above the device capability of " + std::to_string(cap_prbs) +
                    " PRBs"};
            return r;
        }
        BwpPlan plan;
        plan.ul = {BwpOwner::RedCap, Direction::Ul, {0, carrier.n_prb - 1},
                   PucchHopping::EnabledEdgeHopping, false, features};
        plan.dl = {BwpOwner::RedCap, Direction::Dl, {0, carrier.n_prb - 1},
                   PucchHopping::EnabledEdgeHopping, true, features};
        plan.pucch_blocks = regular_blocks;
        plan.frag = pusch_fragmentation(carrier, plan.pucch_blocks);
        PlanResult r;
        r.plan = plan;
        return r;
    }

    const int width = std::min(cap_prbs, carrier.n_prb);
    const int ssb_center2 = carrier.ssb_prb_range.first + carrier.ssb_prb_range.last;

    // Candidate placements: the two carrier edges and an SSB-centered block.
    struct Candidate {
        PrbRange range;
        int rank; // tie-break: lower edge < upper edge < SSB-centered
    };
    const std::vector<Candidate> positions = {
        {{0, width - 1}, 0},
        {{carrier.n_prb - width, carrier.n_prb - 1}, 1},
        {clamp_centered(ssb_center2, width, carrier.n_prb), 2},
    };
    std::vector<PucchHopping> hoppings = {PucchHopping::EnabledEdgeHopping};
    if (features.hopping_disable_allowed)
        hoppings.insert(hoppings.begin(), PucchHopping::Disabled); // preferred when allowed

    struct Scored {
        BwpPlan plan;
        double ratio;
        int ul_rank;
        int hop_rank;
        int dl_rank;
    };
    std::optional<Scored> best;
    std::vector<std::string> seen_constraints;

    for (const auto& ul_pos : positions) {
        for (const auto hopping : hoppings) {
            for (const auto& dl_pos : positions) {
                BwpConfig ul{BwpOwner::RedCap, Direction::Ul, ul_pos.range, hopping, false,
                             features};
                BwpConfig dl{BwpOwner::RedCap, Direction::Dl, dl_pos.range,
                             PucchHopping::EnabledEdgeHopping, false, features};
                dl.contains_ssb_coreset0 = dl.prb_range.contains(carrier.ssb_prb_range) &&
                                           dl.prb_range.contains(carrier.coreset0_prb_range);
                const auto violations = validate_layout(carrier, {ul, dl}, profile);
                if (!violations.empty()) {
                    for (const auto& v : violations)
                        if (std::find(seen_constraints.begin(), seen_constraints.end(),
                                      v.message) == seen_constraints.end())
                            seen_constraints.push_back(v.message);
                    continue;
                }
                BwpPlan plan;
                plan.ul = ul;
                plan.dl = dl;
                plan.pucch_blocks = regular_blocks;
                const auto rc_blocks =
                    redcap_pucch_blocks(ul.prb_range, hopping, ps, carrier.n_prb);
                plan.pucch_blocks.insert(plan.pucch_blocks.end(), rc_blocks.begin(),
                                         rc_blocks.end());
                plan.frag = pusch_fragmentation(carrier, plan.pucch_blocks);
                Scored s{plan, plan.frag.fragmentation_ratio, ul_pos.rank,
                         hopping == PucchHopping::Disabled ? 0 : 1, dl_pos.rank};
                const auto better = [](const Scored& a, const Scored& b) {
                    if (a.ratio != b.ratio)
                        return a.ratio < b.ratio;
                    if (a.ul_rank != b.ul_rank)
                        return a.ul_rank < b.ul_rank;
                    if (a.hop_rank != b.hop_rank)
                        return a.hop_rank < b.hop_rank;
                    return a.dl_rank < b.dl_rank;
                };
                if (!best || better(s, *best))
                    best = s;
            }
        }
    }

    PlanResult r;
    if (best)
        r.plan = best->plan;
    else
        r.binding_constraints = seen_constraints;
    return r;
}

// ---------------------------------------------------------------------------
// ASCII rendering
// ---------------------------------------------------------------------------

namespace {

void paint(std::string& row, const PrbRange& range, int n_prb, int width, char c) {
    const auto col = [&](int prb) {
        return std::min(width - 1, static_cast<int>(static_cast<double>(prb) * width / n_prb));
    };
    for (int x = col(range.first); x <= col(range.last); ++x)
        row[static_cast<std::size_t>(x)] = c;
}

} // namespace

std::string render_prb_grid(const CarrierLayout& carrier, const BwpPlan& plan, int width) {
    carrier.validate();
    width = std::max(16, width);
    const int n = carrier.n_prb;

    std::string carrier_row(static_cast<std::size_t>(width), '.');
    paint(carrier_row, carrier.ssb_prb_range, n, width, 'S');
    paint(carrier_row, carrier.coreset0_prb_range, n, width, '0');

    std::string ul_row(static_cast<std::size_t>(width), ' ');
    paint(ul_row, plan.ul.prb_range, n, width, 'u');
    std::string dl_row(static_cast<std::size_t>(width), ' ');
    paint(dl_row, plan.dl.prb_range, n, width, 'd');
    std::string pucch_row(static_cast<std::size_t>(width), ' ');
    for (const auto& b : plan.pucch_blocks)
        paint(pucch_row, b, n, width, 'P');

    std::ostringstream os;
    os << "carrier   |" << carrier_row << "|  (" << n << " PRB, S=SSB 0=CORESET#0)\n";
    os << "redcap UL |" << ul_row << "|  [" << plan.ul.prb_range.first << ","
       << plan.ul.prb_range.last << "] hopping=" << to_string(plan.ul.pucch_hopping) << "\n";
    os << "redcap DL |" << dl_row << "|  [" << plan.dl.prb_range.first << ","
       << plan.dl.prb_range.last << "] ssb+coreset0="
       << (plan.dl.contains_ssb_coreset0 ? "yes" : "no") << "\n";
    os << "PUCCH     |" << pucch_row << "|  largest free run " << plan.frag.largest_contiguous_prbs
       << "/" << plan.frag.free_prbs_total << " PRB, fragmentation "
       << plan.frag.fragmentation_ratio << "\n";
    return os.str();
}

} // namespace redcap
