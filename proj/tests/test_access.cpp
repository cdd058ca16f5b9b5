#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "redcap/access.hpp"
#include "redcap/serde.hpp"

using namespace redcap;

namespace {

std::vector<CapabilityProfile> mixed_population(int redcap, int regular) {
    std::vector<CapabilityProfile> devices;
    for (int i = 0; i < redcap; ++i)
        devices.push_back(builtin_profile(ProfileKind::RedCapBaselineFr1));
    for (int i = 0; i < regular; ++i)
        devices.push_back(builtin_profile(ProfileKind::ReferenceNrFr1));
    return devices;
}

std::string serialize(const AccessResult& r) {
    Json j = Json::array();
    for (const auto& o : r.outcomes)
        j.push_back(o);
    Json stats = r.stats;
    j.push_back(stats);
    return j.dump();
}

} // namespace

TEST_CASE("identification points") {
    AccessConfig cfg;
    const auto redcap = builtin_profile(ProfileKind::RedCapBaselineFr1);
    const auto regular = builtin_profile(ProfileKind::ReferenceNrFr1);

    cfg.id_method = IdMethod::Msg3Lcid;
    CHECK(identification_point(cfg, redcap) == IdPoint::Msg3);
    CHECK(identification_point(cfg, regular) == IdPoint::Msg3);

    cfg.id_method = IdMethod::Msg1SeparatePrach;
    CHECK(identification_point(cfg, redcap) == IdPoint::Msg1);
    CHECK(identification_point(cfg, regular) == IdPoint::Msg1);

    cfg.id_method = IdMethod::PostMsg4Capability;
    CHECK(identification_point(cfg, redcap) == IdPoint::PostMsg4);

    cfg.redcap_barred = true;
    CHECK(identification_point(cfg, redcap) == IdPoint::Never);
    CHECK(identification_point(cfg, regular) == IdPoint::PostMsg4);
}

TEST_CASE("barred RedCap population schedules nothing") {
    AccessConfig cfg;
    cfg.redcap_barred = true;
    const auto result = simulate_access(mixed_population(6, 0), cfg, 1);
    for (const auto& o : result.outcomes) {
        CHECK(o.barred);
        CHECK(o.identified_at == IdPoint::Never);
        CHECK(o.total_prbs_scheduled == 0);
        CHECK_FALSE(o.time_to_connected_ms.has_value());
    }
    CHECK(result.stats.n_barred == 6);
    CHECK(result.stats.total_prbs_scheduled == 0);
}

TEST_CASE("earlier identification never costs more, per device") {
    const auto devices = mixed_population(5, 5);
    AccessConfig cfg;

    cfg.id_method = IdMethod::Msg1SeparatePrach;
    const auto msg1 = simulate_access(devices, cfg, 3);
    cfg.id_method = IdMethod::Msg3Lcid;
    const auto msg3 = simulate_access(devices, cfg, 3);
    cfg.id_method = IdMethod::PostMsg4Capability;
    const auto post = simulate_access(devices, cfg, 3);

    for (std::size_t i = 0; i < devices.size(); ++i) {
        CHECK(msg1.outcomes[i].total_prbs_scheduled <= msg3.outcomes[i].total_prbs_scheduled);
        CHECK(msg3.outcomes[i].total_prbs_scheduled <= post.outcomes[i].total_prbs_scheduled);
    }
    CHECK(msg1.stats.total_prbs_scheduled <= msg3.stats.total_prbs_scheduled);
    CHECK(msg3.stats.total_prbs_scheduled <= post.stats.total_prbs_scheduled);
}

TEST_CASE("all-regular cell with Msg1 partitioning runs wide throughout") {
    AccessConfig cfg;
    cfg.id_method = IdMethod::Msg1SeparatePrach;
    const auto result = simulate_access(mixed_population(0, 4), cfg, 9);
    const int wide_total = cfg.msg2_cost.wide + cfg.msg3_cost.wide + cfg.msg4_cost.wide;
    for (const auto& o : result.outcomes) {
        CHECK(o.identified_at == IdPoint::Msg1);
        CHECK(o.total_prbs_scheduled == wide_total);
    }
}

TEST_CASE("RedCap devices always need the conservative allocation") {
    AccessConfig cfg;
    cfg.id_method = IdMethod::Msg1SeparatePrach;
    const auto result = simulate_access(mixed_population(3, 0), cfg, 5);
    const int narrow_total = cfg.msg2_cost.narrow + cfg.msg3_cost.narrow + cfg.msg4_cost.narrow;
    for (const auto& o : result.outcomes)
        CHECK(o.total_prbs_scheduled == narrow_total);
}

TEST_CASE("equal seeds give identical serialized results") {
    const auto devices = mixed_population(4, 4);
    AccessConfig cfg;
    const auto a = simulate_access(devices, cfg, 77);
    const auto b = simulate_access(devices, cfg, 77);
    CHECK(serialize(a) == serialize(b));
    const auto c = simulate_access(devices, cfg, 78);
    CHECK(serialize(a) != serialize(c));
}

TEST_CASE("aggregate PRBs equal the sum over devices") {
    const auto devices = mixed_population(7, 3);
    AccessConfig cfg;
    const auto result = simulate_access(devices, cfg, 11);
    long long sum = 0;
    for (const auto& o : result.outcomes)
        sum += o.total_prbs_scheduled;
    CHECK(result.stats.total_prbs_scheduled == sum);
    CHECK(result.stats.n_devices == 10);
}

TEST_CASE("barring changes nothing for non-RedCap devices") {
    const auto devices = mixed_population(5, 5);
    AccessConfig cfg;
    cfg.redcap_barred = false;
    const auto open = simulate_access(devices, cfg, 21);
    cfg.redcap_barred = true;
    const auto barred = simulate_access(devices, cfg, 21);
    for (std::size_t i = 0; i < devices.size(); ++i) {
        if (devices[i].is_redcap)
            continue;
        CHECK(open.outcomes[i].total_prbs_scheduled == barred.outcomes[i].total_prbs_scheduled);
        CHECK(open.outcomes[i].time_to_connected_ms == barred.outcomes[i].time_to_connected_ms);
        CHECK(open.outcomes[i].identified_at == barred.outcomes[i].identified_at);
    }
}

TEST_CASE("config validation") {
    AccessConfig cfg;
    cfg.msg2_cost = {4, 8}; // wide above narrow: the worst case cannot be cheaper
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = AccessConfig{};
    cfg.msg3_cost = {0, 0};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = AccessConfig{};
    cfg.prach_periodicity_ms = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    CHECK_THROWS_AS(simulate_access({}, AccessConfig{}, 1), ValidationError);
}
