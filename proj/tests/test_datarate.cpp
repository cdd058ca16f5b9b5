#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "redcap/datarate.hpp"

using namespace redcap;

namespace {

double rate_for(ProfileKind kind, const CarrierConfig& carrier, Direction dir) {
    const CapabilityProfile p = builtin_profile(kind);
    RateParams params = RateParams::defaults(dir, p.frequency_range);
    params.layers = dir == Direction::Dl ? p.dl_mimo_layers : 1;
    params.modulation_order =
        dir == Direction::Dl ? p.max_dl_modulation_order : p.max_ul_modulation_order;
    return peak_rate(p, carrier, dir, params);
}

} // namespace

TEST_CASE("unit-parameter formula value") {
    // 1 layer, QPSK, code rate 1, 1 PRB, 15 kHz, no overhead: 12 * 2 * 14000 bps.
    CHECK(peak_rate_from_parts(1, 2, 1.0, 1.0, 1, 15, 0.0, 1.0) == doctest::Approx(0.336));
}

TEST_CASE("baseline RedCap configurations land on the published figures") {
    const auto fdd15 = make_carrier(15, 20.0, Duplex::FdFdd);
    const auto tdd30 = make_carrier(30, 20.0, Duplex::Tdd, 0.75);
    const auto tdd120 = make_carrier(120, 100.0, Duplex::Tdd, 0.75);

    const struct {
        ProfileKind kind;
        const CarrierConfig* carrier;
        Direction dir;
        double expect_mbps;
    } cases[] = {
        {ProfileKind::RedCapBaselineFr1, &fdd15, Direction::Dl, 85.0},
        {ProfileKind::RedCapBaselineFr1, &fdd15, Direction::Ul, 90.0},
        {ProfileKind::RedCapBaselineFr1, &tdd30, Direction::Dl, 60.0},
        {ProfileKind::RedCapBaselineFr1, &tdd30, Direction::Ul, 20.0},
        {ProfileKind::RedCapBaselineFr2, &tdd120, Direction::Dl, 300.0},
        {ProfileKind::RedCapBaselineFr2, &tdd120, Direction::Ul, 100.0},
    };
    for (const auto& c : cases) {
        const double rate = rate_for(c.kind, *c.carrier, c.dir);
        const bool within = rate > 0.85 * c.expect_mbps && rate < 1.15 * c.expect_mbps;
        CHECK_MESSAGE(within, "expected ~" << c.expect_mbps << " Mbps, got " << rate);
    }
}

TEST_CASE("peak_rate is linear in layers, modulation order, and PRB count") {
    const auto base = peak_rate_from_parts(1, 2, 0.9, 1.0, 50, 30, 0.1, 1.0);
    CHECK(peak_rate_from_parts(2, 2, 0.9, 1.0, 50, 30, 0.1, 1.0) == doctest::Approx(2 * base));
    CHECK(peak_rate_from_parts(1, 4, 0.9, 1.0, 50, 30, 0.1, 1.0) == doctest::Approx(2 * base));
    CHECK(peak_rate_from_parts(1, 2, 0.9, 1.0, 100, 30, 0.1, 1.0) == doctest::Approx(2 * base));
}

TEST_CASE("TDD share partition equals the FD-FDD rate") {
    const CapabilityProfile p = builtin_profile(ProfileKind::RedCapBaselineFr1);
    RateParams params = RateParams::defaults(Direction::Dl, FrequencyRange::Fr1);
    const auto fdd = make_carrier(15, 20.0, Duplex::FdFdd);
    const double full = peak_rate(p, fdd, Direction::Dl, params);
    for (double share : {0.25, 0.5, 0.75}) {
        const auto tdd = make_carrier(15, 20.0, Duplex::Tdd, share);
        const double dl = peak_rate(p, tdd, Direction::Dl, params);
        const double ul = peak_rate(p, tdd, Direction::Ul, params);
        CHECK(dl + ul == doctest::Approx(full));
    }
}

TEST_CASE("capability monotonicity against the reference profile") {
    const auto carrier = make_carrier(15, 20.0, Duplex::FdFdd);
    const double redcap_best = rate_for(ProfileKind::RedCapBaselineFr1, carrier, Direction::Dl);
    const double reference_best = rate_for(ProfileKind::ReferenceNrFr1, carrier, Direction::Dl);
    CHECK(redcap_best <= reference_best);
}

TEST_CASE("capability violations name the exceeded limit") {
    const CapabilityProfile p = builtin_profile(ProfileKind::RedCapBaselineFr1);
    const RateParams params = RateParams::defaults(Direction::Dl, FrequencyRange::Fr1);

    const auto wide = make_carrier(15, 40.0, Duplex::FdFdd);
    CHECK_THROWS_WITH_AS(peak_rate(p, wide, Direction::Dl, params),
                         doctest::Contains("max_bandwidth_mhz"), CapabilityError);

    const auto carrier = make_carrier(15, 20.0, Duplex::FdFdd);
    RateParams qam256 = params;
    qam256.modulation_order = 8;
    CHECK_THROWS_WITH_AS(peak_rate(p, carrier, Direction::Dl, qam256),
                         doctest::Contains("max_dl_modulation_order"), CapabilityError);

    RateParams two_layers = params;
    two_layers.layers = 2;
    CHECK_THROWS_WITH_AS(peak_rate(p, carrier, Direction::Dl, two_layers),
                         doctest::Contains("dl_mimo_layers"), CapabilityError);
}

TEST_CASE("rate params validation") {
    RateParams p;
    p.overhead_fraction = 1.0; // (1 - overhead) = 0 is rejected at construction
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = RateParams{};
    p.modulation_order = 3;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = RateParams{};
    p.scaling_factor = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = RateParams{};
    p.code_rate_max = 1.2;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("half-duplex FDD derating") {
    const auto [dl, ul] = hd_fdd_rates(85.0, 90.0, 0.5);
    CHECK(dl == doctest::Approx(42.5));
    CHECK(ul == doctest::Approx(45.0));

    const auto [dl2, ul2] = hd_fdd_rates(60.0, 20.0, 0.75);
    CHECK(dl2 == doctest::Approx(45.0));
    CHECK(ul2 == doctest::Approx(5.0));

    CHECK_THROWS_AS(hd_fdd_rates(85.0, 90.0, 1.0), ValidationError);
    CHECK_THROWS_AS(hd_fdd_rates(85.0, 90.0, 0.0), ValidationError);
    CHECK_THROWS_AS(hd_fdd_rates(-1.0, 90.0, 0.5), ValidationError);
}
