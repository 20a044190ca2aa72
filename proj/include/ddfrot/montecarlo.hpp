// Monte Carlo outage estimation.
//
// Trial i draws its randomness from substreams addressed by (seed, i), so
// estimates are independent of thread count and chunking, and two runs that
// share (seed, i) see the same fading and the same schedule. The
// common-random-numbers estimator exploits this to produce paired estimates
// across an SNR grid: with outage monotone in SNR per realization, the
// paired empirical rates are non-increasing in SNR by construction.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ddfrot/protocol.hpp"

namespace ddfrot {

struct OutageEstimate {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double outage_prob = 0.0;
    double ci_low = 0.0;   // Wilson 95%
    double ci_high = 0.0;
};

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};

// Wilson score interval at 95% confidence, clamped so that
// 0 <= low <= failures/trials <= high <= 1. Rejects trials = 0.
WilsonInterval wilson_interval(std::uint64_t failures, std::uint64_t trials);

enum class TrialKind {
    rotations,      // run_trial dynamics
    miso_baseline,  // coherent-combining bound
};

struct McOptions {
    unsigned threads = 0;  // 0 = hardware concurrency
    TrialKind kind = TrialKind::rotations;
};

// Empirical outage probability over `trials` frames. Rejects trials = 0 and
// invalid cfg.
OutageEstimate estimate_outage(const ProtocolConfig& cfg, std::uint64_t trials,
                               std::uint64_t seed, const McOptions& opts = {});

// Paired estimates for configs that differ only in snr_linear: every config
// sees the same realization and schedule in trial i. Rejects an empty list
// or configs differing in any other field.
std::vector<OutageEstimate> estimate_outage_crn(std::span<const ProtocolConfig> cfgs,
                                                std::uint64_t trials, std::uint64_t seed,
                                                const McOptions& opts = {});

struct SweepGrid {
    std::vector<double> snr_db;
    std::vector<double> rate_bpcu;
    std::vector<std::size_t> n_relays;
    std::vector<std::size_t> n_rotations;
    std::vector<std::size_t> block_len;
    std::vector<bool> isolated;
    std::size_t frame_len = 64;
    Ordering ordering = Ordering::random;
};

struct SweepPoint {
    ProtocolConfig cfg;
    double snr_db = 0.0;
    OutageEstimate estimate;
    bool failed = false;       // per-point validation error; sweep continues
    std::string error;
};

// Cross product of the grid lists, one estimate per point. The per-point
// seed is derived from `seed` and the point's parameters (not its position),
// so extending the grid never changes existing points' results.
std::vector<SweepPoint> run_sweep(const SweepGrid& grid, std::uint64_t trials, std::uint64_t seed,
                                  const McOptions& opts = {});

// Substream seed for one sweep point; exposed so callers can reproduce a
// single point of a sweep in isolation.
std::uint64_t sweep_point_seed(std::uint64_t seed, const ProtocolConfig& cfg, TrialKind kind);

// Slope of the outage curve between the two highest-SNR points on a
// log10(p) versus snr_db/10 scale (so a slope of d means p drops by d
// decades per 10 dB). Rejects fewer than two points, duplicate top SNRs,
// and points with outage_prob = 0 (need more trials).
double diversity_slope(std::span<const SweepPoint> points);

}  // namespace ddfrot
