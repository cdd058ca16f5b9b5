#pragma once

#include <optional>
#include <string>
#include <vector>

#include "redcap/datarate.hpp"
#include "redcap/model.hpp"

namespace redcap {

/// Inclusive PRB index range [first, last].
struct PrbRange {
    int first = 0;
    int last = 0;

    int length() const { return last - first + 1; }
    bool contains(const PrbRange& o) const { return first <= o.first && o.last <= last; }
    bool overlaps(const PrbRange& o) const { return first <= o.last && o.first <= last; }

    bool operator==(const PrbRange&) const = default;
};

/// PRB-grid model of one carrier with its SSB and CORESET#0 anchors.
struct CarrierLayout {
    int n_prb = 0;
    int scs_khz = 30; // for MHz<->PRB conversion of device bandwidth caps
    PrbRange ssb_prb_range;
    PrbRange coreset0_prb_range;
    Duplex duplex_mode = Duplex::Tdd;

    bool operator==(const CarrierLayout&) const = default;

    void validate() const;
};

enum class BwpOwner { RegularNr, RedCap };
enum class PucchHopping { EnabledEdgeHopping, Disabled };

const char* to_string(BwpOwner o);
const char* to_string(PucchHopping h);

struct Release17Features {
    bool separate_initial_bwp = false;
    bool hopping_disable_allowed = false;
    bool dl_bwp_without_ssb_allowed = false;

    bool operator==(const Release17Features&) const = default;
};

struct BwpConfig {
    BwpOwner owner = BwpOwner::RegularNr;
    Direction direction = Direction::Ul;
    PrbRange prb_range;
    PucchHopping pucch_hopping = PucchHopping::EnabledEdgeHopping; // UL only
    bool contains_ssb_coreset0 = false;                            // DL only
    Release17Features release17_features;

    bool operator==(const BwpConfig&) const = default;
};

// ---------------------------------------------------------------------------
// Layout validation
// ---------------------------------------------------------------------------

enum class BwpRule {
    BwpExceedsCapability,          // (a)
    TddCenterMisaligned,           // (b)
    DlBwpMissingSsbCoreset0,       // (c)
    PucchHoppingDisableNotAllowed, // (d)
};

const char* to_string(BwpRule r);

struct BwpViolation {
    BwpRule rule;
    std::string message;
    std::vector<PrbRange> ranges; // offending PRB ranges
};

/// Checks a BWP layout against the initial-access configuration rules.
/// Returns one violation per broken rule; throws on malformed ranges.
std::vector<BwpViolation> validate_layout(const CarrierLayout& carrier,
                                          const std::vector<BwpConfig>& bwps,
                                          const CapabilityProfile& profile);

// ---------------------------------------------------------------------------
// PUSCH fragmentation
// ---------------------------------------------------------------------------

struct FragReport {
    int largest_contiguous_prbs = 0;
    int free_prbs_total = 0;
    double fragmentation_ratio = 0.0; // 1 - largest/free_total (0 when nothing free)
};

/// Scans the carrier PRB grid with the given PUCCH blocks occupied
/// (overlapping blocks are unioned first) and reports the largest contiguous
/// free run.
FragReport pusch_fragmentation(const CarrierLayout& carrier,
                               const std::vector<PrbRange>& pucch_blocks);

// ---------------------------------------------------------------------------
// RedCap BWP planning
// ---------------------------------------------------------------------------

struct BwpPlan {
    BwpConfig ul;
    BwpConfig dl;
    FragReport frag;
    std::vector<PrbRange> pucch_blocks; // occupancy the report was computed from
};

struct PlanResult {
    std::optional<BwpPlan> plan;
    std::vector<std::string> binding_constraints; // non-empty iff infeasible

    bool feasible() const { return plan.has_value(); }
};

/// Searches candidate RedCap initial-BWP placements (carrier edges and
/// SSB-centered) and returns the layout minimizing PUSCH fragmentation among
/// those that validate cleanly under the given feature flags. Ties prefer the
/// lower-PRB edge and disabled hopping. Regular NR devices are assumed to use
/// a full-carrier UL BWP with PUCCH hopping between the carrier edges.
PlanResult plan_redcap_bwp(const CarrierLayout& carrier, const CapabilityProfile& profile,
                           const Release17Features& features, int pucch_block_prbs = 2);

/// ASCII rendering of the carrier grid and a plan, for reports.
std::string render_prb_grid(const CarrierLayout& carrier, const BwpPlan& plan,
                            int width = 72);

} // namespace redcap
