#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "redcap/linkbudget.hpp"

using namespace redcap;

namespace {

ChannelLinkParams basic_params() {
    ChannelLinkParams p;
    p.channel = Channel::Pdsch;
    p.direction = Direction::Dl;
    p.tx_power_dbm = 46.0;
    p.noise_figure_db = 7.0;
    p.required_snr_db = 0.0;
    p.occupied_bandwidth_hz = 1e6;
    return p;
}

} // namespace

TEST_CASE("MIL hand-evaluated example") {
    // 46 dBm - (-174 + 60 + 7) = 153 dB
    CHECK(mil(basic_params()) == doctest::Approx(153.0));
}

TEST_CASE("MIL unit sensitivities are exactly +-1 dB") {
    const ChannelLinkParams base = basic_params();
    const double m0 = mil(base);
    ChannelLinkParams p = base;
    p.tx_power_dbm += 1.0;
    CHECK(mil(p) - m0 == doctest::Approx(1.0));
    p = base;
    p.tx_bf_gain_db += 1.0;
    CHECK(mil(p) - m0 == doctest::Approx(1.0));
    p = base;
    p.rx_bf_gain_db += 1.0;
    CHECK(mil(p) - m0 == doctest::Approx(1.0));
    p = base;
    p.noise_figure_db += 1.0;
    CHECK(mil(p) - m0 == doctest::Approx(-1.0));
    p = base;
    p.required_snr_db += 1.0;
    CHECK(mil(p) - m0 == doctest::Approx(-1.0));
    p = base;
    p.antenna_efficiency_penalty_db += 1.0;
    CHECK(mil(p) - m0 == doctest::Approx(-1.0));
}

TEST_CASE("doubling bandwidth at fixed PSD leaves MIL unchanged") {
    ChannelLinkParams p = basic_params();
    const double m0 = mil(p);
    p.occupied_bandwidth_hz *= 2.0;
    p.tx_power_dbm += 10.0 * std::log10(2.0);
    CHECK(mil(p) == doctest::Approx(m0));
}

TEST_CASE("DL transmit power from PSD") {
    CHECK(dl_tx_power_from_psd(33.0, 1.0) == doctest::Approx(33.0));
    CHECK(dl_tx_power_from_psd(33.0, 100.0) == doctest::Approx(53.0));
    CHECK(dl_tx_power_from_psd(24.0, 20.0) == doctest::Approx(37.0103).epsilon(1e-4));
    CHECK_THROWS_AS(dl_tx_power_from_psd(33.0, 0.0), ValidationError);
}

TEST_CASE("bottleneck selection") {
    const auto entry = [](Channel c, double m) {
        ChannelMil e;
        e.params.channel = c;
        e.params.direction = channel_direction(c);
        e.params.occupied_bandwidth_hz = 1e6;
        e.mil_db = m;
        return e;
    };

    SUBCASE("single channel is its own bottleneck") {
        const auto b = bottleneck({entry(Channel::Pusch, 140.0)});
        CHECK(b.channel == Channel::Pusch);
        CHECK(b.mil_db == 140.0);
    }
    SUBCASE("minimum selection") {
        const auto b = bottleneck({entry(Channel::Msg2Pdsch, 140.0),
                                   entry(Channel::Msg3Pusch, 145.0),
                                   entry(Channel::Pucch, 138.0)});
        CHECK(b.channel == Channel::Pucch);
        CHECK(b.mil_db == 138.0);
    }
    SUBCASE("uniform shifts keep the argmin") {
        for (double shift : {-7.0, 0.0, 13.0}) {
            const auto b = bottleneck({entry(Channel::Msg2Pdsch, 140.0 + shift),
                                       entry(Channel::Msg3Pusch, 145.0 + shift),
                                       entry(Channel::Pucch, 138.0 + shift)});
            CHECK(b.channel == Channel::Pucch);
        }
    }
    SUBCASE("ties break by channel enum order") {
        const auto b = bottleneck({entry(Channel::Pusch, 140.0), entry(Channel::Msg2Pdsch, 140.0)});
        CHECK(b.channel == Channel::Msg2Pdsch);
    }
    SUBCASE("empty list is an error") { CHECK_THROWS_AS(bottleneck({}), AnalysisError); }
}

TEST_CASE("coverage recovery of an identical set is zero") {
    const auto scenario = deployment_preset(DeploymentPreset::UrbanMicroFr1);
    const auto reference = build_link_budget(scenario, builtin_profile(ProfileKind::ReferenceNrFr1));
    const auto report = coverage_recovery(reference, reference);
    for (const auto& e : report.entries)
        CHECK(e.recovery_db == 0.0);
}

TEST_CASE("urban micro: 1-Rx RedCap needs Msg2 recovery and nothing else") {
    const auto scenario = deployment_preset(DeploymentPreset::UrbanMicroFr1);
    const auto redcap =
        build_link_budget(scenario, builtin_profile(ProfileKind::RedCapBaselineFr1));
    const auto reference =
        build_link_budget(scenario, builtin_profile(ProfileKind::ReferenceNrFr1));
    const auto report = coverage_recovery(redcap, reference);

    const auto flagged = flagged_channels(report);
    REQUIRE(flagged.size() == 1);
    CHECK(flagged[0] == Channel::Msg2Pdsch);
    for (const auto& e : report.entries)
        if (e.direction == Direction::Ul)
            CHECK(e.recovery_db == 0.0);
    // The reference bottleneck sits in the UL.
    CHECK(channel_direction(report.reference_bottleneck_channel) == Direction::Ul);
}

TEST_CASE("urban micro: 2-Rx RedCap needs no recovery") {
    const auto scenario = deployment_preset(DeploymentPreset::UrbanMicroFr1);
    CapabilityProfile two_rx = builtin_profile(ProfileKind::RedCapBaselineFr1);
    two_rx.rx_branches = 2;
    two_rx.dl_mimo_layers = 2;
    const auto redcap = build_link_budget(scenario, two_rx);
    const auto reference =
        build_link_budget(scenario, builtin_profile(ProfileKind::ReferenceNrFr1));
    CHECK(flagged_channels(coverage_recovery(redcap, reference)).empty());
}

TEST_CASE("urban macro: even 1-Rx RedCap needs no recovery") {
    const auto scenario = deployment_preset(DeploymentPreset::UrbanMacroFr1);
    const auto redcap =
        build_link_budget(scenario, builtin_profile(ProfileKind::RedCapBaselineFr1));
    const auto reference =
        build_link_budget(scenario, builtin_profile(ProfileKind::ReferenceNrFr1));
    CHECK(flagged_channels(coverage_recovery(redcap, reference)).empty());
}

TEST_CASE("scenario mismatch is rejected") {
    const auto micro = deployment_preset(DeploymentPreset::UrbanMicroFr1);
    const auto macro = deployment_preset(DeploymentPreset::UrbanMacroFr1);
    const auto a = build_link_budget(micro, builtin_profile(ProfileKind::RedCapBaselineFr1));
    const auto b = build_link_budget(macro, builtin_profile(ProfileKind::ReferenceNrFr1));
    CHECK_THROWS_AS(coverage_recovery(a, b), AnalysisError);
}

TEST_CASE("FR2 TRP sensitivity") {
    const auto scenario = deployment_preset(DeploymentPreset::IndoorFr2);

    SUBCASE("23 dBm flags Msg2, Msg4, and PDSCH") {
        const auto report = fr2_trp_sensitivity(scenario, 23.0);
        const auto flagged = flagged_channels(report);
        REQUIRE(flagged.size() == 3);
        CHECK(flagged[0] == Channel::Msg2Pdsch);
        CHECK(flagged[1] == Channel::Msg4Pdsch);
        CHECK(flagged[2] == Channel::Pdsch);
    }
    SUBCASE("12 dBm flags nothing") {
        CHECK(flagged_channels(fr2_trp_sensitivity(scenario, 12.0)).empty());
    }
    SUBCASE("recovery is non-increasing as TRP decreases") {
        const auto r23 = fr2_trp_sensitivity(scenario, 23.0);
        const auto r18 = fr2_trp_sensitivity(scenario, 18.0);
        const auto r12 = fr2_trp_sensitivity(scenario, 12.0);
        REQUIRE(r23.entries.size() == r18.entries.size());
        for (std::size_t i = 0; i < r23.entries.size(); ++i) {
            CHECK(r18.entries[i].recovery_db <= r23.entries[i].recovery_db);
            CHECK(r12.entries[i].recovery_db <= r18.entries[i].recovery_db);
        }
    }
    SUBCASE("FR1 scenarios are rejected") {
        CHECK_THROWS_AS(fr2_trp_sensitivity(deployment_preset(DeploymentPreset::UrbanMicroFr1),
                                            23.0),
                        AnalysisError);
    }
}

TEST_CASE("antenna efficiency toggle shifts every RedCap MIL by exactly -3 dB") {
    const auto scenario = deployment_preset(DeploymentPreset::UrbanMicroFr1);
    const auto profile = builtin_profile(ProfileKind::RedCapBaselineFr1);
    const auto plain = build_link_budget(scenario, profile);
    LinkBudgetOptions opts;
    opts.antenna_efficiency_penalty_db = 3.0;
    const auto penalized = build_link_budget(scenario, profile, default_snr_table(), nullptr, opts);
    REQUIRE(plain.entries.size() == penalized.entries.size());
    for (std::size_t i = 0; i < plain.entries.size(); ++i)
        CHECK(penalized.entries[i].mil_db == doctest::Approx(plain.entries[i].mil_db - 3.0));

    // The reference set is built without the penalty, so its bottleneck moves
    // by exactly nothing.
    const auto reference =
        build_link_budget(scenario, builtin_profile(ProfileKind::ReferenceNrFr1));
    const auto before = coverage_recovery(plain, reference);
    const auto after = coverage_recovery(penalized, reference);
    CHECK(before.reference_bottleneck_mil_db == after.reference_bottleneck_mil_db);
}

TEST_CASE("SNR table CSV round-trip") {
    const SnrTable& table = default_snr_table();
    const std::string csv = snr_table_to_csv(table);
    const SnrTable parsed = parse_snr_table_csv(csv);
    REQUIRE(parsed.rows.size() == table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        CHECK(parsed.rows[i].scenario == table.rows[i].scenario);
        CHECK(parsed.rows[i].channel == table.rows[i].channel);
        CHECK(parsed.rows[i].rx_branches == table.rows[i].rx_branches);
        CHECK(parsed.rows[i].required_snr_db == doctest::Approx(table.rows[i].required_snr_db));
        CHECK(parsed.rows[i].occupied_bandwidth_hz ==
              doctest::Approx(table.rows[i].occupied_bandwidth_hz));
    }
    CHECK_THROWS_AS(parse_snr_table_csv("scenario,channel\n"), ValidationError);
    CHECK_THROWS_AS(
        table.lookup(DeploymentPreset::Custom, Channel::Pusch, 0), ValidationError);
}
