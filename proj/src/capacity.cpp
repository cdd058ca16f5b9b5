#include "redcap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace redcap {

const char* to_string(Scheduler s) {
    return s == Scheduler::RoundRobin ? "RoundRobin" : "ProportionalFair";
}

void TrafficModel::validate() const {
    if (payload_bytes <= 0)
        throw ValidationError("traffic model: payload_bytes must be positive");
    if (period_s <= 0.0)
        throw ValidationError("traffic model: period_s must be positive");
}

TrafficModel embb_traffic() { return TrafficModel{500000, 0.2}; }

TrafficModel redcap_traffic() { return TrafficModel{100000, 2.0}; }

double SeMap::spectral_efficiency(double sinr_db, double cap) const {
    const double sinr = std::pow(10.0, sinr_db / 10.0);
    return std::min(attenuation * std::log2(1.0 + sinr), cap);
}

CapacityScenario::CapacityScenario()
    : embb_profile(builtin_profile(ProfileKind::ReferenceNrFr1)),
      redcap_profile(builtin_profile(ProfileKind::RedCapBaselineFr1)) {}

void CapacityScenario::validate() const {
    if (n_cells < 1)
        throw ValidationError("capacity scenario: n_cells must be >= 1");
    if (users_per_cell < 1)
        throw ValidationError("capacity scenario: users_per_cell must be >= 1");
    if (redcap_fraction < 0.0 || redcap_fraction > 1.0)
        throw ValidationError("capacity scenario: redcap_fraction must lie in [0,1]");
    if (bandwidth_mhz <= 0.0)
        throw ValidationError("capacity scenario: bandwidth_mhz must be positive");
    if (drops < 1)
        throw ValidationError("capacity scenario: drops must be >= 1");
    if (redcap_rx_penalty_db < 0.0)
        throw ValidationError("capacity scenario: redcap_rx_penalty_db must be >= 0");
    if (sinr_to_se.attenuation <= 0.0)
        throw ValidationError("capacity scenario: SE attenuation must be positive");
    if (load_fractions.empty())
        throw ValidationError("capacity scenario: load_fractions must be non-empty");
    for (double f : load_fractions)
        if (f <= 0.0 || f > 1.0)
            throw ValidationError("capacity scenario: load fractions must lie in (0,1]");
    embb_profile.validate();
    redcap_profile.validate();
    embb_traffic_model.validate();
    redcap_traffic_model.validate();
}

double offered_load(const std::vector<std::pair<CapabilityProfile, TrafficModel>>& users) {
    double total = 0.0;
    for (const auto& [profile, traffic] : users) {
        (void)profile;
        traffic.validate();
        total += traffic.offered_bps();
    }
    return total;
}

// ---------------------------------------------------------------------------
// Simulation internals
// ---------------------------------------------------------------------------

namespace {

constexpr double kHorizonS = 20.0;
constexpr double kArrivalWindowS = 16.0;
constexpr double kIsdM = 600.0;
constexpr double kCellRadiusM = 200.0;
constexpr double kMinDistM = 35.0;
constexpr double kShadowingSigmaDb = 6.0;
constexpr double kBsPsdDbmPerMhz = 33.0;
constexpr double kUeNoiseFigureDb = 7.0;
constexpr double kPfEwma = 0.05;

struct SimUser {
    double rate_full_bps = 0.0; // spectral efficiency x bandwidth when alone
    double phase_s = 0.0;
    double period_s = 0.0;
    double payload_bits = 0.0;
    bool is_embb = true;
};

struct Point {
    double x, y;
};

std::vector<Point> site_positions(int n_cells) {
    std::vector<Point> sites;
    sites.push_back({0.0, 0.0});
    for (int k = 0; static_cast<int>(sites.size()) < n_cells; ++k) {
        const double a = k * M_PI / 3.0;
        sites.push_back({kIsdM * std::cos(a), kIsdM * std::sin(a)});
        if (k >= 5)
            break;
    }
    // Desk scale is 7 cells; additional rings are not modeled.
    while (static_cast<int>(sites.size()) < n_cells)
        sites.push_back({kIsdM * 2.0 * (sites.size() - 6), kIsdM * 2.0});
    sites.resize(static_cast<std::size_t>(n_cells));
    return sites;
}

double path_loss_db(double d_m, double f_ghz) {
    const double d = std::max(d_m, kMinDistM);
    return 128.1 + 20.0 * std::log10(f_ghz / 2.0) + 37.6 * std::log10(d / 1000.0);
}

/// Draws one user around its serving site and returns its wideband DL SINR.
double draw_user_sinr_db(std::mt19937_64& rng, const std::vector<Point>& sites, int serving,
                         double f_ghz) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> shadow(0.0, kShadowingSigmaDb);

    const double r = std::sqrt(uni(rng) * (kCellRadiusM * kCellRadiusM - kMinDistM * kMinDistM) +
                               kMinDistM * kMinDistM);
    const double theta = uni(rng) * 2.0 * M_PI;
    const Point pos{sites[static_cast<std::size_t>(serving)].x + r * std::cos(theta),
                    sites[static_cast<std::size_t>(serving)].y + r * std::sin(theta)};

    double signal_dbm = 0.0;
    double interference_mw = 0.0;
    for (std::size_t s = 0; s < sites.size(); ++s) {
        const double dx = pos.x - sites[s].x;
        const double dy = pos.y - sites[s].y;
        const double d = std::hypot(dx, dy);
        const double rx_dbm = kBsPsdDbmPerMhz - path_loss_db(d, f_ghz) - shadow(rng);
        if (static_cast<int>(s) == serving)
            signal_dbm = rx_dbm;
        else
            interference_mw += std::pow(10.0, rx_dbm / 10.0);
    }
    const double noise_mw = std::pow(10.0, (-174.0 + 60.0 + kUeNoiseFigureDb) / 10.0);
    return signal_dbm - 10.0 * std::log10(interference_mw + noise_mw);
}

struct CellOutcome {
    double served_bits = 0.0;
    double busy_time_s = 0.0;
    std::vector<double> embb_user_throughput_bps; // per-user mean file throughput
};

/// Processor-sharing event loop for one cell over the horizon.
CellOutcome simulate_cell(const std::vector<SimUser>& users, Scheduler scheduler) {
    const std::size_t n = users.size();
    struct UserState {
        std::vector<double> arrivals;
        std::size_t next_arrival = 0; // first arrival not yet in service or done
        double remaining_bits = 0.0;  // of the file in service; 0 when idle
        double head_arrival = 0.0;
        double pf_avg_bps = 0.0;
        std::vector<double> file_tputs;
    };
    std::vector<UserState> st(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (double t = users[i].phase_s; t <= kArrivalWindowS; t += users[i].period_s)
            st[i].arrivals.push_back(t);
        st[i].pf_avg_bps = users[i].rate_full_bps;
    }

    CellOutcome out;
    double t = 0.0;
    std::vector<std::size_t> active;
    std::vector<double> rate(n, 0.0);

    const auto start_next_file = [&](std::size_t i) {
        st[i].head_arrival = st[i].arrivals[st[i].next_arrival];
        st[i].remaining_bits = users[i].payload_bits;
        ++st[i].next_arrival;
        active.push_back(i);
    };

    while (t < kHorizonS) {
        // Share rates among the active users.
        if (!active.empty()) {
            if (scheduler == Scheduler::RoundRobin) {
                const double share = 1.0 / static_cast<double>(active.size());
                for (std::size_t i : active)
                    rate[i] = users[i].rate_full_bps * share;
            } else {
                double wsum = 0.0;
                for (std::size_t i : active)
                    wsum += users[i].rate_full_bps / std::max(st[i].pf_avg_bps, 1.0);
                for (std::size_t i : active) {
                    const double w = users[i].rate_full_bps / std::max(st[i].pf_avg_bps, 1.0);
                    rate[i] = users[i].rate_full_bps * (w / wsum);
                }
            }
        }

        // Next event: an arrival starting a file at an idle user, a queued
        // arrival (bookkeeping only), a completion, or the horizon.
        double t_next = kHorizonS;
        for (std::size_t i = 0; i < n; ++i)
            if (st[i].next_arrival < st[i].arrivals.size() && st[i].remaining_bits <= 0.0)
                t_next = std::min(t_next, std::max(st[i].arrivals[st[i].next_arrival], t));
        for (std::size_t i : active)
            if (rate[i] > 0.0)
                t_next = std::min(t_next, t + st[i].remaining_bits / rate[i]);

        const double dt = t_next - t;
        if (dt > 0.0) {
            for (std::size_t i : active) {
                const double served = rate[i] * dt;
                st[i].remaining_bits -= served;
                out.served_bits += served;
                if (scheduler == Scheduler::ProportionalFair)
                    st[i].pf_avg_bps = (1.0 - kPfEwma) * st[i].pf_avg_bps + kPfEwma * rate[i];
            }
            if (!active.empty())
                out.busy_time_s += dt;
        }
        t = t_next;
        if (t >= kHorizonS)
            break;

        // Completions.
        for (std::size_t k = 0; k < active.size();) {
            const std::size_t i = active[k];
            if (st[i].remaining_bits <= 1e-6) {
                const double elapsed = t - st[i].head_arrival;
                st[i].file_tputs.push_back(users[i].payload_bits / std::max(elapsed, 1e-9));
                st[i].remaining_bits = 0.0;
                active.erase(active.begin() + static_cast<std::ptrdiff_t>(k));
                // A queued file starts immediately; its arrival time stays
                // the nominal one so queueing delay counts against it.
                if (st[i].next_arrival < st[i].arrivals.size() &&
                    st[i].arrivals[st[i].next_arrival] <= t)
                    start_next_file(i);
            } else {
                ++k;
            }
        }

        // Arrivals at idle users.
        for (std::size_t i = 0; i < n; ++i)
            if (st[i].remaining_bits <= 0.0 && st[i].next_arrival < st[i].arrivals.size() &&
                st[i].arrivals[st[i].next_arrival] <= t)
                start_next_file(i);
    }

    // Files still in flight or queued at the horizon count at their achieved
    // rate so far (zero for queued ones), keeping overload visible.
    for (std::size_t i = 0; i < n; ++i) {
        if (st[i].remaining_bits > 0.0) {
            const double served = users[i].payload_bits - st[i].remaining_bits;
            st[i].file_tputs.push_back(served / std::max(kHorizonS - st[i].head_arrival, 1e-9));
        }
        for (std::size_t a = st[i].next_arrival; a < st[i].arrivals.size(); ++a)
            st[i].file_tputs.push_back(0.0);
        if (users[i].is_embb && !st[i].file_tputs.empty()) {
            double sum = 0.0;
            for (double v : st[i].file_tputs)
                sum += v;
            out.embb_user_throughput_bps.push_back(sum /
                                                   static_cast<double>(st[i].file_tputs.size()));
        }
    }
    return out;
}

double percentile(std::vector<double> v, double p) {
    if (v.empty())
        return 0.0;
    std::sort(v.begin(), v.end());
    const double idx = p * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = idx - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t idx) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (idx + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

std::vector<ThroughputReport> run_capacity_sim(const CapacityScenario& scn) {
    scn.validate();

    const auto sites = site_positions(scn.n_cells);
    const double bw_hz = scn.bandwidth_mhz * 1e6;
    const double embb_cap = scn.sinr_to_se.cap_for(scn.embb_profile);
    const double redcap_cap = scn.sinr_to_se.cap_for(scn.redcap_profile);

    // Population sizes per load point. The eMBB population scales with the
    // load fraction; RedCap users are added so the RedCap share of all users
    // equals redcap_fraction.
    const bool all_redcap = scn.redcap_fraction >= 1.0;
    const double rc_ratio =
        all_redcap ? 0.0 : scn.redcap_fraction / (1.0 - scn.redcap_fraction);
    std::vector<int> embb_count, rc_count;
    for (double f : scn.load_fractions) {
        const int base = std::max(1, static_cast<int>(std::lround(scn.users_per_cell * f)));
        if (all_redcap) {
            embb_count.push_back(0);
            rc_count.push_back(base);
        } else {
            embb_count.push_back(base);
            rc_count.push_back(static_cast<int>(std::lround(base * rc_ratio)));
        }
    }
    const int embb_pool = *std::max_element(embb_count.begin(), embb_count.end());
    const int rc_pool = *std::max_element(rc_count.begin(), rc_count.end());

    struct DropPools {
        // [cell][user] full-bandwidth rates and traffic phases
        std::vector<std::vector<SimUser>> embb;
        std::vector<std::vector<SimUser>> redcap;
    };

    const std::size_t n_points = scn.load_fractions.size();
    std::vector<double> served_bits(n_points, 0.0), busy_time(n_points, 0.0);
    std::vector<std::vector<double>> embb_tputs(n_points);

    for (int drop = 0; drop < scn.drops; ++drop) {
        std::mt19937_64 rng(mix_seed(scn.seed, static_cast<std::uint64_t>(drop)));
        std::uniform_real_distribution<double> uni(0.0, 1.0);

        // Nested pools: the first k users of a pool form the population of
        // every load point needing k users, so growing the load only adds
        // users. The eMBB pool is drawn before the RedCap pool, which keeps
        // the eMBB population identical across redcap_fraction settings
        // under the same seed.
        DropPools pools;
        pools.embb.resize(static_cast<std::size_t>(scn.n_cells));
        pools.redcap.resize(static_cast<std::size_t>(scn.n_cells));
        for (int c = 0; c < scn.n_cells; ++c) {
            for (int u = 0; u < embb_pool; ++u) {
                const double sinr = draw_user_sinr_db(rng, sites, c, scn.carrier_freq_ghz);
                SimUser su;
                su.is_embb = true;
                su.rate_full_bps =
                    scn.sinr_to_se.spectral_efficiency(sinr, embb_cap) * bw_hz;
                su.phase_s = uni(rng) * scn.embb_traffic_model.period_s;
                su.period_s = scn.embb_traffic_model.period_s;
                su.payload_bits = static_cast<double>(scn.embb_traffic_model.payload_bytes) * 8.0;
                pools.embb[static_cast<std::size_t>(c)].push_back(su);
            }
            for (int u = 0; u < rc_pool; ++u) {
                const double sinr = draw_user_sinr_db(rng, sites, c, scn.carrier_freq_ghz) -
                                    scn.redcap_rx_penalty_db;
                SimUser su;
                su.is_embb = false;
                su.rate_full_bps =
                    scn.sinr_to_se.spectral_efficiency(sinr, redcap_cap) * bw_hz;
                su.phase_s = uni(rng) * scn.redcap_traffic_model.period_s;
                su.period_s = scn.redcap_traffic_model.period_s;
                su.payload_bits =
                    static_cast<double>(scn.redcap_traffic_model.payload_bytes) * 8.0;
                pools.redcap[static_cast<std::size_t>(c)].push_back(su);
            }
        }

        for (std::size_t lp = 0; lp < n_points; ++lp) {
            for (int c = 0; c < scn.n_cells; ++c) {
                std::vector<SimUser> users;
                const auto& ep = pools.embb[static_cast<std::size_t>(c)];
                const auto& rp = pools.redcap[static_cast<std::size_t>(c)];
                users.insert(users.end(), ep.begin(),
                             ep.begin() + embb_count[lp]);
                users.insert(users.end(), rp.begin(),
                             rp.begin() + rc_count[lp]);
                CellOutcome cell = simulate_cell(users, scn.scheduler);
                served_bits[lp] += cell.served_bits;
                busy_time[lp] += cell.busy_time_s;
                embb_tputs[lp].insert(embb_tputs[lp].end(),
                                      cell.embb_user_throughput_bps.begin(),
                                      cell.embb_user_throughput_bps.end());
            }
        }
    }

    std::vector<ThroughputReport> reports;
    const double denom = kHorizonS * scn.n_cells * scn.drops;
    for (std::size_t lp = 0; lp < n_points; ++lp) {
        ThroughputReport r;
        r.served_load_bps_per_cell = served_bits[lp] / denom;
        r.resource_utilization = busy_time[lp] / denom;
        std::sort(embb_tputs[lp].begin(), embb_tputs[lp].end());
        r.p5_mbps = percentile(embb_tputs[lp], 0.05) * 1e-6;
        r.p50_mbps = percentile(embb_tputs[lp], 0.50) * 1e-6;
        r.p95_mbps = percentile(embb_tputs[lp], 0.95) * 1e-6;
        r.embb_users_per_cell = embb_count[lp];
        r.redcap_users_per_cell = rc_count[lp];
        reports.push_back(r);
    }
    return reports;
}

} // namespace redcap
