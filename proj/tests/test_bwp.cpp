#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "redcap/bwp.hpp"

using namespace redcap;

namespace {

/// Independent brute-force oracle: paint a boolean PRB grid and scan for the
/// longest free run.
FragReport frag_oracle(const CarrierLayout& carrier, const std::vector<PrbRange>& blocks) {
    std::vector<bool> occupied(static_cast<std::size_t>(carrier.n_prb), false);
    for (const auto& b : blocks)
        for (int p = b.first; p <= b.last; ++p)
            occupied[static_cast<std::size_t>(p)] = true;
    FragReport r;
    int run = 0;
    for (int p = 0; p < carrier.n_prb; ++p) {
        if (!occupied[static_cast<std::size_t>(p)]) {
            ++r.free_prbs_total;
            ++run;
            r.largest_contiguous_prbs = std::max(r.largest_contiguous_prbs, run);
        } else {
            run = 0;
        }
    }
    r.fragmentation_ratio =
        r.free_prbs_total > 0
            ? 1.0 - static_cast<double>(r.largest_contiguous_prbs) / r.free_prbs_total
            : 0.0;
    return r;
}

CarrierLayout tdd_carrier_100mhz() {
    // 100 MHz at 30 kHz SCS: 273 PRBs, SSB and CORESET#0 around the middle.
    return CarrierLayout{273, 30, {130, 149}, {120, 167}, Duplex::Tdd};
}

CapabilityProfile redcap_fr1() { return builtin_profile(ProfileKind::RedCapBaselineFr1); }

} // namespace

TEST_CASE("fragmentation report on the documented instances") {
    CarrierLayout c{100, 30, {45, 54}, {40, 59}, Duplex::Tdd};

    SUBCASE("edge blocks leave one contiguous run") {
        const auto r = pusch_fragmentation(c, {{0, 2}, {97, 99}});
        CHECK(r.largest_contiguous_prbs == 94);
        CHECK(r.free_prbs_total == 94);
        CHECK(r.fragmentation_ratio == 0.0);
    }
    SUBCASE("a mid-carrier block splits the grid in half") {
        const auto r = pusch_fragmentation(c, {{48, 51}});
        CHECK(r.free_prbs_total == 96);
        CHECK(r.largest_contiguous_prbs == 48);
        CHECK(r.fragmentation_ratio == doctest::Approx(0.5));
    }
    SUBCASE("no blocks at all") {
        const auto r = pusch_fragmentation(c, {});
        CHECK(r.largest_contiguous_prbs == 100);
        CHECK(r.fragmentation_ratio == 0.0);
    }
    SUBCASE("overlapping blocks are unioned") {
        const auto r = pusch_fragmentation(c, {{10, 20}, {15, 25}, {20, 30}});
        CHECK(r.free_prbs_total == 79);
        CHECK(r.largest_contiguous_prbs == 69);
    }
    SUBCASE("malformed block is rejected") {
        CHECK_THROWS_AS(pusch_fragmentation(c, {{90, 105}}), ValidationError);
        CHECK_THROWS_AS(pusch_fragmentation(c, {{10, 5}}), ValidationError);
    }
}

TEST_CASE("fragmentation matches the brute-force oracle on random instances") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 300; ++it) {
        const int n_prb = 10 + static_cast<int>(rng() % 264); // up to 273
        CarrierLayout c{n_prb, 30, {0, 0}, {0, 0}, Duplex::Tdd};
        std::vector<PrbRange> blocks;
        const int n_blocks = static_cast<int>(rng() % 9); // up to 8
        for (int b = 0; b < n_blocks; ++b) {
            const int first = static_cast<int>(rng() % static_cast<std::uint64_t>(n_prb));
            const int len = 1 + static_cast<int>(rng() % 8);
            blocks.push_back({first, std::min(first + len - 1, n_prb - 1)});
        }
        const auto got = pusch_fragmentation(c, blocks);
        const auto want = frag_oracle(c, blocks);
        CHECK(got.largest_contiguous_prbs == want.largest_contiguous_prbs);
        CHECK(got.free_prbs_total == want.free_prbs_total);
        CHECK(got.fragmentation_ratio == doctest::Approx(want.fragmentation_ratio));
    }
}

TEST_CASE("removing a PUCCH block never shrinks the largest free run") {
    std::mt19937_64 rng(123);
    for (int it = 0; it < 200; ++it) {
        const int n_prb = 20 + static_cast<int>(rng() % 200);
        CarrierLayout c{n_prb, 30, {0, 0}, {0, 0}, Duplex::Tdd};
        std::vector<PrbRange> blocks;
        const int n_blocks = 1 + static_cast<int>(rng() % 6);
        for (int b = 0; b < n_blocks; ++b) {
            const int first = static_cast<int>(rng() % static_cast<std::uint64_t>(n_prb));
            blocks.push_back({first, std::min(first + 2, n_prb - 1)});
        }
        const auto full = pusch_fragmentation(c, blocks);
        for (std::size_t skip = 0; skip < blocks.size(); ++skip) {
            std::vector<PrbRange> reduced;
            for (std::size_t b = 0; b < blocks.size(); ++b)
                if (b != skip)
                    reduced.push_back(blocks[b]);
            const auto r = pusch_fragmentation(c, reduced);
            CHECK(r.largest_contiguous_prbs >= full.largest_contiguous_prbs);
            CHECK(r.fragmentation_ratio <= full.fragmentation_ratio + 1e-12);
        }
    }
}

TEST_CASE("layout validation rules") {
    const auto carrier = tdd_carrier_100mhz();
    const auto profile = redcap_fr1();
    const Release17Features none{};
    const Release17Features all{true, true, true};

    SUBCASE("typical regular-NR configuration is clean") {
        const BwpConfig ul{BwpOwner::RegularNr, Direction::Ul, {0, 272},
                           PucchHopping::EnabledEdgeHopping, false, none};
        const BwpConfig dl{BwpOwner::RegularNr, Direction::Dl, {0, 272},
                           PucchHopping::EnabledEdgeHopping, true, none};
        CHECK(validate_layout(carrier, {ul, dl}, profile).empty());
    }
    SUBCASE("pre-R17 edge UL with mid-carrier DL violates center alignment and hopping") {
        const BwpConfig ul{BwpOwner::RedCap, Direction::Ul, {0, 50}, PucchHopping::Disabled,
                           false, none};
        const BwpConfig dl{BwpOwner::RedCap, Direction::Dl, {111, 161},
                           PucchHopping::EnabledEdgeHopping, true, none};
        const auto v = validate_layout(carrier, {ul, dl}, profile);
        REQUIRE(v.size() == 2);
        bool center = false, hopping = false;
        for (const auto& viol : v) {
            center |= viol.rule == BwpRule::TddCenterMisaligned;
            hopping |= viol.rule == BwpRule::PucchHoppingDisableNotAllowed;
        }
        CHECK(center);
        CHECK(hopping);
    }
    SUBCASE("release 17 features make the matched edge layout clean") {
        const BwpConfig ul{BwpOwner::RedCap, Direction::Ul, {0, 50}, PucchHopping::Disabled,
                           false, all};
        const BwpConfig dl{BwpOwner::RedCap, Direction::Dl, {0, 50},
                           PucchHopping::EnabledEdgeHopping, false, all};
        CHECK(validate_layout(carrier, {ul, dl}, profile).empty());
    }
    SUBCASE("over-wide RedCap BWP is flagged with the capability rule") {
        const BwpConfig ul{BwpOwner::RedCap, Direction::Ul, {0, 99},
                           PucchHopping::EnabledEdgeHopping, false, all};
        const auto v = validate_layout(carrier, {ul}, profile);
        REQUIRE(v.size() == 1);
        CHECK(v[0].rule == BwpRule::BwpExceedsCapability);
    }
    SUBCASE("DL BWP missing the anchors without the allowance") {
        Release17Features partial = all;
        partial.dl_bwp_without_ssb_allowed = false;
        const BwpConfig dl{BwpOwner::RedCap, Direction::Dl, {0, 50},
                           PucchHopping::EnabledEdgeHopping, false, partial};
        const auto v = validate_layout(carrier, {dl}, profile);
        REQUIRE(v.size() == 1);
        CHECK(v[0].rule == BwpRule::DlBwpMissingSsbCoreset0);
    }
    SUBCASE("malformed input throws") {
        const BwpConfig bad{BwpOwner::RedCap, Direction::Ul, {-1, 50},
                            PucchHopping::EnabledEdgeHopping, false, all};
        CHECK_THROWS_AS(validate_layout(carrier, {bad}, profile), ValidationError);
        CHECK_THROWS_AS(validate_layout(carrier, {}, profile), ValidationError);
    }
}

TEST_CASE("planner on the discussed placements") {
    const auto carrier = tdd_carrier_100mhz();
    const auto profile = redcap_fr1();

    SUBCASE("all release 17 features: same-edge placement, hopping disabled, no fragmentation") {
        const auto result = plan_redcap_bwp(carrier, profile, {true, true, true});
        REQUIRE(result.feasible());
        CHECK(result.plan->ul.prb_range == PrbRange{0, 50});
        CHECK(result.plan->dl.prb_range == PrbRange{0, 50});
        CHECK(result.plan->ul.pucch_hopping == PucchHopping::Disabled);
        CHECK(result.plan->frag.fragmentation_ratio == 0.0);
        CHECK_FALSE(result.plan->dl.contains_ssb_coreset0);
        CHECK(validate_layout(carrier, {result.plan->ul, result.plan->dl}, profile).empty());
    }
    SUBCASE("no features at all: infeasible with binding constraints") {
        const auto result = plan_redcap_bwp(carrier, profile, {false, false, false});
        CHECK_FALSE(result.feasible());
        CHECK_FALSE(result.binding_constraints.empty());
    }
    SUBCASE("separate BWPs only: SSB-anchored center placement, halved grid") {
        const auto result = plan_redcap_bwp(carrier, profile, {true, false, false});
        REQUIRE(result.feasible());
        CHECK(result.plan->dl.contains_ssb_coreset0);
        CHECK(result.plan->frag.fragmentation_ratio == doctest::Approx(0.5).epsilon(0.15));
    }
    SUBCASE("FDD without center alignment: edge UL beats center even pre-R17") {
        CarrierLayout fdd = carrier;
        fdd.duplex_mode = Duplex::FdFdd;
        const auto result = plan_redcap_bwp(fdd, profile, {true, false, false});
        REQUIRE(result.feasible());
        CHECK(result.plan->ul.prb_range.first == 0);
        CHECK(result.plan->ul.pucch_hopping == PucchHopping::EnabledEdgeHopping);

        // Compare against the mid-carrier alternative.
        const auto center_blocks = std::vector<PrbRange>{{0, 1}, {271, 272}, {111, 112}, {160, 161}};
        const auto center = pusch_fragmentation(fdd, center_blocks);
        CHECK(result.plan->frag.fragmentation_ratio < center.fragmentation_ratio);
    }
    SUBCASE("non-RedCap profile is rejected") {
        CHECK_THROWS_AS(
            plan_redcap_bwp(carrier, builtin_profile(ProfileKind::ReferenceNrFr1), {true, true, true}),
            ValidationError);
    }
}

TEST_CASE("planner output always validates or reports infeasibility") {
    std::mt19937_64 rng(2024);
    const auto profile = redcap_fr1();
    for (int it = 0; it < 100; ++it) {
        const int n_prb = 60 + static_cast<int>(rng() % 214);
        const int ssb_first = static_cast<int>(rng() % static_cast<std::uint64_t>(n_prb - 20));
        CarrierLayout c{n_prb, 30, {ssb_first, ssb_first + 9},
                        {std::max(0, ssb_first - 4), std::min(n_prb - 1, ssb_first + 13)},
                        (it % 2 == 0) ? Duplex::Tdd : Duplex::FdFdd};
        const Release17Features f{(rng() & 1) != 0, (rng() & 1) != 0, (rng() & 1) != 0};
        const auto result = plan_redcap_bwp(c, profile, f);
        if (result.feasible()) {
            CHECK(validate_layout(c, {result.plan->ul, result.plan->dl}, profile).empty());
        } else {
            CHECK_FALSE(result.binding_constraints.empty());
        }
    }
}

TEST_CASE("enabling a release 17 feature never worsens the optimum") {
    std::mt19937_64 rng(31337);
    const auto profile = redcap_fr1();
    const auto ratio_of = [&](const CarrierLayout& c, const Release17Features& f) {
        const auto result = plan_redcap_bwp(c, profile, f);
        return result.feasible() ? result.plan->frag.fragmentation_ratio
                                 : std::numeric_limits<double>::infinity();
    };
    for (int it = 0; it < 40; ++it) {
        const int n_prb = 60 + static_cast<int>(rng() % 214);
        const int ssb_first = static_cast<int>(rng() % static_cast<std::uint64_t>(n_prb - 20));
        CarrierLayout c{n_prb, 30, {ssb_first, ssb_first + 9},
                        {std::max(0, ssb_first - 4), std::min(n_prb - 1, ssb_first + 13)},
                        (it % 2 == 0) ? Duplex::Tdd : Duplex::FdFdd};
        for (int bits = 0; bits < 8; ++bits) {
            const Release17Features f{(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0};
            const double base = ratio_of(c, f);
            for (int flip = 0; flip < 3; ++flip) {
                if (bits & (1 << flip))
                    continue;
                const int up = bits | (1 << flip);
                const Release17Features g{(up & 1) != 0, (up & 2) != 0, (up & 4) != 0};
                CHECK(ratio_of(c, g) <= base + 1e-12);
            }
        }
    }
}

TEST_CASE("grid rendering mentions the plan") {
    const auto carrier = tdd_carrier_100mhz();
    const auto result = plan_redcap_bwp(carrier, redcap_fr1(), {true, true, true});
    REQUIRE(result.feasible());
    const std::string grid = render_prb_grid(carrier, *result.plan);
    CHECK(grid.find("redcap UL") != std::string::npos);
    CHECK(grid.find("S") != std::string::npos);
}
