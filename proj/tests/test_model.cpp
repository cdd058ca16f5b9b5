#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "redcap/model.hpp"
#include "redcap/serde.hpp"

using namespace redcap;

TEST_CASE("builtin profiles match the device comparison table") {
    const auto ref_fr1 = builtin_profile(ProfileKind::ReferenceNrFr1);
    CHECK(ref_fr1.max_bandwidth_mhz == 100.0);
    CHECK(ref_fr1.max_dl_modulation_order == 8); // 256QAM
    CHECK(ref_fr1.rx_branches == 2);
    CHECK_FALSE(ref_fr1.is_redcap);

    const auto rc_fr1 = builtin_profile(ProfileKind::RedCapBaselineFr1);
    CHECK(rc_fr1.max_bandwidth_mhz == 20.0);
    CHECK(rc_fr1.rx_branches == 1);
    CHECK(rc_fr1.dl_mimo_layers == 1);
    CHECK(rc_fr1.max_dl_modulation_order == 6);
    CHECK(rc_fr1.duplex_mode == Duplex::HdFdd);
    CHECK(rc_fr1.max_drbs == 8);
    CHECK(rc_fr1.sn_length_bits == 12);
    CHECK_FALSE(rc_fr1.supports_anr);
    CHECK(rc_fr1.is_redcap);

    const auto rc_fr2 = builtin_profile(ProfileKind::RedCapBaselineFr2);
    CHECK(rc_fr2.max_bandwidth_mhz == 100.0);
    CHECK(rc_fr2.dl_mimo_layers == 1);
    CHECK(rc_fr2.max_dl_modulation_order == 6);
    CHECK(rc_fr2.rx_branches == 2); // same minimum as the FR2 reference

    const auto ref_fr2 = builtin_profile(ProfileKind::ReferenceNrFr2);
    CHECK(ref_fr2.max_bandwidth_mhz == 200.0);
    CHECK(ref_fr2.duplex_mode == Duplex::Tdd);
}

TEST_CASE("profile construction rejects values above the RedCap caps") {
    CapabilityProfile p = builtin_profile(ProfileKind::RedCapBaselineFr1);

    SUBCASE("FR1 bandwidth cap") {
        p.max_bandwidth_mhz = 40.0;
        CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("20"), CapabilityError);
    }
    SUBCASE("FR2 bandwidth cap") {
        p.frequency_range = FrequencyRange::Fr2;
        p.duplex_mode = Duplex::Tdd;
        p.max_bandwidth_mhz = 150.0;
        CHECK_THROWS_AS(p.validate(), CapabilityError);
    }
    SUBCASE("receiver branches") {
        p.rx_branches = 4;
        p.dl_mimo_layers = 4;
        CHECK_THROWS_AS(p.validate(), CapabilityError);
    }
    SUBCASE("layers cannot exceed branches") {
        p.dl_mimo_layers = 2;
        CHECK_THROWS_AS(p.validate(), ValidationError);
    }
    SUBCASE("DRB and SN value sets") {
        p.max_drbs = 10;
        CHECK_THROWS_AS(p.validate(), ValidationError);
        p.max_drbs = 8;
        p.sn_length_bits = 14;
        CHECK_THROWS_AS(p.validate(), ValidationError);
    }
}

TEST_CASE("transmission-bandwidth table") {
    CHECK(prb_count_for(15, 20.0) == 106);
    CHECK(prb_count_for(120, 100.0) == 66);
    CHECK(prb_count_for(30, 20.0) == 51);
    CHECK(prb_count_for(30, 100.0) == 273);
    CHECK_FALSE(prb_table_lookup(15, 100.0).has_value());
    CHECK_THROWS_AS(prb_count_for(15, 100.0), ValidationError);

    CarrierConfig c = make_carrier(15, 20.0, Duplex::FdFdd);
    CHECK(c.n_prb == 106);
    c.n_prb = 100;
    CHECK_THROWS_AS(c.validate(), ValidationError);

    CHECK(ofdm_symbols_per_second(15) == doctest::Approx(14000.0));
    CHECK(ofdm_symbols_per_second(120) == doctest::Approx(112000.0));
}

TEST_CASE("deployment presets carry the study PSDs") {
    CHECK(deployment_preset(DeploymentPreset::UrbanMacroFr1).dl_psd_dbm_per_mhz == 33.0);
    CHECK(deployment_preset(DeploymentPreset::UrbanMicroFr1).dl_psd_dbm_per_mhz == 24.0);
    CHECK(frequency_range_of(deployment_preset(DeploymentPreset::IndoorFr2)) ==
          FrequencyRange::Fr2);
    CHECK(frequency_range_of(deployment_preset(DeploymentPreset::RuralFr1)) ==
          FrequencyRange::Fr1);
}

TEST_CASE("check_requirements verdicts") {
    SUBCASE("industrial sensor rate pass with margin") {
        const auto rep = check_requirements(industrial_sensor_requirement(), 60.0, 60.0);
        REQUIRE(rep.dimensions.size() >= 2);
        const auto& dl = rep.dimensions[0];
        CHECK(dl.dimension == ReqDimension::DlRate);
        CHECK(dl.status == ReqStatus::Pass);
        CHECK(dl.margin == doctest::Approx(58.0));
    }
    SUBCASE("vacuous custom requirement passes with zero evaluated dimensions") {
        UseCaseRequirement req;
        req.name = UseCase::Custom;
        const auto rep = check_requirements(req, 10.0, 10.0);
        CHECK(rep.evaluated_count == 0);
        CHECK(rep.dimensions.empty());
        CHECK(rep.overall_pass);
    }
    SUBCASE("high-end video passes against the interval lower bound") {
        const auto rep = check_requirements(video_surveillance_high_end_requirement(), 20.0, 20.0);
        CHECK(rep.dimensions[0].status == ReqStatus::Pass);
        CHECK(rep.dimensions[0].margin == doctest::Approx(12.5));
    }
    SUBCASE("specified dimension without an achieved value is unevaluated, not failed") {
        const auto req = industrial_sensor_requirement();
        const auto rep = check_requirements(req, 60.0, 60.0); // no lifetime, latency given
        bool saw_unevaluated = false;
        for (const auto& d : rep.dimensions)
            if (d.status == ReqStatus::Unevaluated)
                saw_unevaluated = true;
        CHECK(saw_unevaluated);
        CHECK(rep.overall_pass); // unevaluated never fails the requirement
    }
    SUBCASE("latency passes at or below the bound") {
        const auto req = industrial_sensor_requirement();
        const auto rep = check_requirements(req, 60.0, 60.0, std::nullopt, 100.0);
        bool found = false;
        for (const auto& d : rep.dimensions)
            if (d.dimension == ReqDimension::Latency) {
                found = true;
                CHECK(d.status == ReqStatus::Pass);
                CHECK(d.margin == doctest::Approx(0.0));
            }
        CHECK(found);
        const auto rep2 = check_requirements(req, 60.0, 60.0, std::nullopt, 150.0);
        for (const auto& d : rep2.dimensions)
            if (d.dimension == ReqDimension::Latency)
                CHECK(d.status == ReqStatus::Fail);
    }
    SUBCASE("negative achieved values are rejected") {
        CHECK_THROWS_AS(check_requirements(wearables_requirement(), -1.0, 5.0), ValidationError);
    }
}

TEST_CASE("check_requirements is monotone in achieved rates") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 60.0);
    const auto passes = [](const RequirementReport& r) { return r.overall_pass; };
    for (int i = 0; i < 500; ++i) {
        UseCaseRequirement req = wearables_requirement();
        const double dl = u(rng), ul = u(rng);
        const double dl_up = dl + u(rng), ul_up = ul + u(rng);
        const bool before = passes(check_requirements(req, dl, ul));
        const bool after = passes(check_requirements(req, dl_up, ul_up));
        if (before)
            CHECK(after); // increasing achieved never flips pass to fail
    }
}

TEST_CASE("builtin presets round-trip through serialization") {
    for (ProfileKind k : {ProfileKind::ReferenceNrFr1, ProfileKind::ReferenceNrFr2,
                          ProfileKind::RedCapBaselineFr1, ProfileKind::RedCapBaselineFr2}) {
        const CapabilityProfile p = builtin_profile(k);
        const Json j = p;
        CHECK(j.get<CapabilityProfile>() == p);
    }
    for (const auto& [name, req] : builtin_requirements()) {
        (void)name;
        const Json j = req;
        CHECK(j.get<UseCaseRequirement>() == req);
    }
    const CarrierConfig c = make_carrier(30, 20.0, Duplex::Tdd, 0.75);
    const Json j = c;
    CHECK(j.get<CarrierConfig>() == c);
}

TEST_CASE("requirement validation") {
    UseCaseRequirement r;
    r.dl_rate_mbps = Interval{5.0, 2.0};
    CHECK_THROWS_AS(r.validate(), ValidationError);
    r = UseCaseRequirement{};
    r.reliability = 1.0;
    CHECK_THROWS_AS(r.validate(), ValidationError);
    r.reliability = 0.999;
    CHECK_NOTHROW(r.validate());
}
