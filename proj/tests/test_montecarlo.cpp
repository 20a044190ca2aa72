#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "ddfrot/montecarlo.hpp"
#include "ddfrot/protocol.hpp"

using ddfrot::estimate_outage;
using ddfrot::estimate_outage_crn;
using ddfrot::McOptions;
using ddfrot::Ordering;
using ddfrot::OutageEstimate;
using ddfrot::ProtocolConfig;
using ddfrot::run_sweep;
using ddfrot::snr_db_to_linear;
using ddfrot::SweepGrid;
using ddfrot::SweepPoint;
using ddfrot::TrialKind;
using ddfrot::wilson_interval;

namespace {

ProtocolConfig mc_config() {
    ProtocolConfig cfg;
    cfg.n_relays = 1;
    cfg.n_rotations = 2;
    cfg.frame_len = 8;
    cfg.block_len = 1;
    cfg.rate_bpcu = 1.0;
    cfg.snr_linear = 2.0;
    cfg.ordering = Ordering::random;
    return cfg;
}

McOptions one_thread() {
    McOptions mc;
    mc.threads = 1;
    return mc;
}

}  // namespace

TEST_CASE("wilson reference values") {
    const auto a = wilson_interval(5, 100);
    CHECK(a.low == doctest::Approx(0.02154367915436796).epsilon(1e-12));
    CHECK(a.high == doctest::Approx(0.11175046923191913).epsilon(1e-12));
    const auto b = wilson_interval(0, 1000);
    CHECK(b.low == 0.0);
    CHECK(b.high == doctest::Approx(0.0038267584855551234).epsilon(1e-12));
    const auto c = wilson_interval(1000, 1000);
    CHECK(c.low == doctest::Approx(0.996173241514445).epsilon(1e-12));
    CHECK(c.high == 1.0);
    const auto d = wilson_interval(259, 1000);
    CHECK(d.low == doctest::Approx(0.23280623499082614).epsilon(1e-12));
    CHECK(d.high == doctest::Approx(0.28703826259921145).epsilon(1e-12));
}

TEST_CASE("wilson interval brackets the estimate") {
    for (std::uint64_t n : {1ULL, 7ULL, 100ULL, 12345ULL}) {
        for (std::uint64_t k = 0; k <= n; k += (n > 50 ? n / 17 : 1)) {
            const auto w = wilson_interval(k, n);
            const double p = static_cast<double>(k) / static_cast<double>(n);
            CHECK(w.low >= 0.0);
            CHECK(w.low <= p);
            CHECK(w.high >= p);
            CHECK(w.high <= 1.0);
        }
    }
    CHECK_THROWS_AS(wilson_interval(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(5, 4), std::invalid_argument);
}

TEST_CASE("wilson coverage near the nominal level") {
    // 1000 repetitions of a Bernoulli(0.3) experiment with n = 400: the 95%
    // interval should cover p in roughly 950 of them.
    ddfrot::rng::Stream rs(0xC0FFEE, 0);
    int covered = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        std::uint64_t k = 0;
        for (int i = 0; i < 400; ++i) {
            k += rs.next_double() < 0.3 ? 1 : 0;
        }
        const auto w = wilson_interval(k, 400);
        if (w.low <= 0.3 && 0.3 <= w.high) {
            ++covered;
        }
    }
    CHECK(covered >= 925);
    CHECK(covered <= 975);
}

TEST_CASE("zero rate gives exactly zero outage") {
    ProtocolConfig cfg = mc_config();
    cfg.rate_bpcu = 0.0;
    const auto est = estimate_outage(cfg, 2000, 1, one_thread());
    CHECK(est.failures == 0);
    CHECK(est.outage_prob == 0.0);
}

TEST_CASE("hopeless rate gives outage one") {
    ProtocolConfig cfg = mc_config();
    cfg.rate_bpcu = 10.0;
    cfg.snr_linear = 1e-6;
    const auto est = estimate_outage(cfg, 1000, 1, one_thread());
    CHECK(est.failures == 1000);
    CHECK(est.outage_prob == 1.0);
}

TEST_CASE("siso matches the closed form") {
    ProtocolConfig cfg;
    cfg.n_relays = 0;
    cfg.n_rotations = 1;
    cfg.frame_len = 64;
    cfg.block_len = 1;
    cfg.rate_bpcu = 2.0;
    cfg.snr_linear = 10.0;
    cfg.ordering = Ordering::lexicographic;
    const auto est = estimate_outage(cfg, 40000, 0x5150, one_thread());
    CHECK(std::abs(est.outage_prob - 0.2591817793182821) < 0.011);
    CHECK(est.ci_low <= est.outage_prob);
    CHECK(est.ci_high >= est.outage_prob);
}

TEST_CASE("estimates are thread-count invariant") {
    const ProtocolConfig cfg = mc_config();
    McOptions t1 = one_thread();
    McOptions t3 = one_thread();
    t3.threads = 3;
    McOptions t7 = one_thread();
    t7.threads = 7;
    const auto a = estimate_outage(cfg, 10000, 99, t1);
    const auto b = estimate_outage(cfg, 10000, 99, t3);
    const auto c = estimate_outage(cfg, 10000, 99, t7);
    CHECK(a.failures == b.failures);
    CHECK(a.failures == c.failures);
}

TEST_CASE("estimate rejects bad input") {
    CHECK_THROWS_AS(estimate_outage(mc_config(), 0, 1, one_thread()), std::invalid_argument);
    ProtocolConfig bad = mc_config();
    bad.snr_linear = 0.0;
    CHECK_THROWS_AS(estimate_outage(bad, 100, 1, one_thread()), std::invalid_argument);
}

TEST_CASE("crn single config equals plain estimation") {
    const ProtocolConfig cfg = mc_config();
    const auto plain = estimate_outage(cfg, 5000, 7, one_thread());
    const std::vector<ProtocolConfig> cfgs = {cfg};
    const auto paired = estimate_outage_crn(cfgs, 5000, 7, one_thread());
    REQUIRE(paired.size() == 1);
    CHECK(paired[0].failures == plain.failures);
}

TEST_CASE("crn rejects mismatched configs") {
    std::vector<ProtocolConfig> cfgs = {mc_config(), mc_config()};
    cfgs[1].rate_bpcu = 2.0;
    CHECK_THROWS_AS(estimate_outage_crn(cfgs, 100, 1, one_thread()), std::invalid_argument);
    cfgs[1] = mc_config();
    cfgs[1].n_relays = 2;
    CHECK_THROWS_AS(estimate_outage_crn(cfgs, 100, 1, one_thread()), std::invalid_argument);
    const std::vector<ProtocolConfig> none;
    CHECK_THROWS_AS(estimate_outage_crn(none, 100, 1, one_thread()), std::invalid_argument);
}

TEST_CASE("crn estimates are monotone in snr") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        std::vector<ProtocolConfig> cfgs;
        for (const double db : {0.0, 10.0, 20.0}) {
            ProtocolConfig cfg = mc_config();
            cfg.frame_len = 16;
            cfg.snr_linear = snr_db_to_linear(db);
            cfgs.push_back(cfg);
        }
        const auto ests = estimate_outage_crn(cfgs, 20000, seed, one_thread());
        REQUIRE(ests.size() == 3);
        CHECK(ests[0].outage_prob >= ests[1].outage_prob);
        CHECK(ests[1].outage_prob >= ests[2].outage_prob);
    }
}

TEST_CASE("crn works for the baseline kind") {
    McOptions mc = one_thread();
    mc.kind = TrialKind::miso_baseline;
    std::vector<ProtocolConfig> cfgs = {mc_config(), mc_config()};
    cfgs[1].snr_linear = 20.0;
    const auto ests = estimate_outage_crn(cfgs, 5000, 3, mc);
    REQUIRE(ests.size() == 2);
    CHECK(ests[0].outage_prob >= ests[1].outage_prob);
}

TEST_CASE("isolated relays cannot beat connected ones") {
    // Same seed pairs the fading draws; severing the inter-relay links can
    // only delay relay activation. Allow a little statistical slack.
    ProtocolConfig connected = mc_config();
    connected.n_relays = 2;
    connected.frame_len = 16;
    connected.rate_bpcu = 2.0;
    connected.snr_linear = snr_db_to_linear(10.0);
    ProtocolConfig isolated = connected;
    isolated.isolated = true;
    const auto pc = estimate_outage(connected, 20000, 11, one_thread());
    const auto pi = estimate_outage(isolated, 20000, 11, one_thread());
    CHECK(pc.outage_prob <= pi.outage_prob + 0.02);
}

TEST_CASE("sweep enumerates the grid and is extension-stable") {
    SweepGrid grid;
    grid.snr_db = {0.0, 10.0};
    grid.rate_bpcu = {1.0};
    grid.n_relays = {1};
    grid.n_rotations = {2};
    grid.block_len = {1};
    grid.isolated = {false};
    grid.frame_len = 8;
    grid.ordering = Ordering::random;
    const auto small = run_sweep(grid, 2000, 5, one_thread());
    REQUIRE(small.size() == 2);
    CHECK(small[0].snr_db == 0.0);
    CHECK(small[1].snr_db == 10.0);
    CHECK_FALSE(small[0].failed);

    SweepGrid wider = grid;
    wider.snr_db = {0.0, 10.0, 20.0};
    wider.rate_bpcu = {1.0, 2.0};
    const auto big = run_sweep(wider, 2000, 5, one_thread());
    REQUIRE(big.size() == 6);
    // Existing points keep their exact counts when the grid grows.
    CHECK(big[0].estimate.failures == small[0].estimate.failures);
    CHECK(big[1].estimate.failures == small[1].estimate.failures);
    // Shared trials across the SNR axis make each curve monotone.
    CHECK(big[0].estimate.outage_prob >= big[1].estimate.outage_prob);
    CHECK(big[1].estimate.outage_prob >= big[2].estimate.outage_prob);
}

TEST_CASE("sweep seeds ignore snr but respect other fields") {
    ProtocolConfig a = mc_config();
    ProtocolConfig b = a;
    b.snr_linear = 123.0;
    CHECK(ddfrot::sweep_point_seed(9, a, TrialKind::rotations) ==
          ddfrot::sweep_point_seed(9, b, TrialKind::rotations));
    b = a;
    b.rate_bpcu = 3.0;
    CHECK(ddfrot::sweep_point_seed(9, a, TrialKind::rotations) !=
          ddfrot::sweep_point_seed(9, b, TrialKind::rotations));
    CHECK(ddfrot::sweep_point_seed(9, a, TrialKind::rotations) !=
          ddfrot::sweep_point_seed(9, a, TrialKind::miso_baseline));
    CHECK(ddfrot::sweep_point_seed(9, a, TrialKind::rotations) !=
          ddfrot::sweep_point_seed(10, a, TrialKind::rotations));
}

TEST_CASE("sweep continues past invalid points") {
    SweepGrid grid;
    grid.snr_db = {10.0};
    grid.rate_bpcu = {1.0};
    grid.n_relays = {1};
    grid.n_rotations = {2};
    grid.block_len = {1, 3};  // 3 does not divide 8
    grid.isolated = {false};
    grid.frame_len = 8;
    const auto points = run_sweep(grid, 500, 5, one_thread());
    REQUIRE(points.size() == 2);
    CHECK_FALSE(points[0].failed);
    CHECK(points[1].failed);
    CHECK_FALSE(points[1].error.empty());
}

TEST_CASE("sweep rejects empty grids and zero trials") {
    SweepGrid grid;
    grid.snr_db = {};
    grid.rate_bpcu = {1.0};
    grid.n_relays = {1};
    grid.n_rotations = {2};
    grid.block_len = {1};
    grid.isolated = {false};
    CHECK_THROWS_AS(run_sweep(grid, 100, 1, one_thread()), std::invalid_argument);
    grid.snr_db = {10.0};
    CHECK_THROWS_AS(run_sweep(grid, 0, 1, one_thread()), std::invalid_argument);
}

TEST_CASE("diversity slope arithmetic") {
    auto mk = [](double snr_db, double p) {
        SweepPoint pt;
        pt.snr_db = snr_db;
        pt.estimate.outage_prob = p;
        return pt;
    };
    std::vector<SweepPoint> pts = {mk(20.0, 0.1), mk(30.0, 1e-2), mk(40.0, 1e-3)};
    CHECK(ddfrot::diversity_slope(pts) == doctest::Approx(1.0).epsilon(1e-12));
    pts = {mk(30.0, 1e-2), mk(35.0, 1e-3)};
    CHECK(ddfrot::diversity_slope(pts) == doctest::Approx(2.0).epsilon(1e-12));

    pts = {mk(30.0, 1e-2)};
    CHECK_THROWS_AS(ddfrot::diversity_slope(pts), std::invalid_argument);
    pts = {mk(30.0, 1e-2), mk(30.0, 1e-3)};
    CHECK_THROWS_AS(ddfrot::diversity_slope(pts), std::invalid_argument);
    pts = {mk(30.0, 1e-2), mk(40.0, 0.0)};
    CHECK_THROWS_AS(ddfrot::diversity_slope(pts), std::invalid_argument);
}
