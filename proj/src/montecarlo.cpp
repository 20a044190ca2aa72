#include "ddfrot/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "ddfrot/detail/trial_engine.hpp"
#include "ddfrot/rng.hpp"

namespace ddfrot {

namespace {

constexpr double kZ95 = 1.959963984540054;

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) {
        return requested;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

// Splits [0, trials) into one contiguous chunk per thread and sums the
// per-chunk counts. Counts are integers and every trial's randomness is
// addressed by its index, so the result is identical for any thread count.
template <class Worker>
std::vector<std::uint64_t> run_chunked(std::uint64_t trials, unsigned threads, std::size_t width,
                                       Worker&& worker) {
    const auto max_workers = static_cast<std::uint64_t>(resolve_threads(threads));
    const auto n_workers = static_cast<unsigned>(std::min<std::uint64_t>(max_workers, trials));
    std::vector<std::vector<std::uint64_t>> partial(
        n_workers, std::vector<std::uint64_t>(width, 0));
    if (n_workers <= 1) {
        worker(0, trials, partial[0]);
        return partial[0];
    }
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    const std::uint64_t base = trials / n_workers;
    const std::uint64_t extra = trials % n_workers;
    std::uint64_t lo = 0;
    for (unsigned w = 0; w < n_workers; ++w) {
        const std::uint64_t hi = lo + base + (w < extra ? 1 : 0);
        pool.emplace_back([&worker, &partial, w, lo, hi] { worker(lo, hi, partial[w]); });
        lo = hi;
    }
    for (auto& t : pool) {
        t.join();
    }
    for (unsigned w = 1; w < n_workers; ++w) {
        for (std::size_t c = 0; c < width; ++c) {
            partial[0][c] += partial[w][c];
        }
    }
    return partial[0];
}

// Per-thread reusable state; no allocation in the trial loop after warm-up.
struct TrialWorkspace {
    ChannelRealization real;
    ScheduleSampler sampler;
    rng::Stream sched_stream{0, 0};
    RotationSchedule sched;
    detail::TrialScratch scratch;
};

bool one_outage_flag(const ProtocolConfig& cfg, TrialKind kind, std::uint64_t seed,
                     std::uint64_t trial, TrialWorkspace& ws) {
    rng::Stream real_stream(seed, trial, rng::Domain::realization);
    draw_realization_into(ws.real, cfg.n_relays, cfg.isolated, real_stream);
    if (kind == TrialKind::miso_baseline) {
        detail::CoherentCombiner comb{ws.real};
        return detail::simulate_trial<true>(cfg, comb, ws.scratch);
    }
    ws.sched_stream = rng::Stream(seed, trial, rng::Domain::schedule);
    ws.sampler.reset(cfg.n_relays, cfg.n_rotations, cfg.frame_len, cfg.ordering,
                     &ws.sched_stream);
    detail::RotatedCombiner<ScheduleSampler> comb{ws.real, ws.sampler};
    return detail::simulate_trial<true>(cfg, comb, ws.scratch);
}

OutageEstimate make_estimate(std::uint64_t failures, std::uint64_t trials) {
    OutageEstimate est;
    est.trials = trials;
    est.failures = failures;
    est.outage_prob = static_cast<double>(failures) / static_cast<double>(trials);
    const WilsonInterval ci = wilson_interval(failures, trials);
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    return est;
}

void require_trials(std::uint64_t trials) {
    if (trials == 0) {
        throw std::invalid_argument("trials must be >= 1");
    }
}

}  // namespace

WilsonInterval wilson_interval(std::uint64_t failures, std::uint64_t trials) {
    if (trials == 0) {
        throw std::invalid_argument("wilson_interval: trials must be >= 1");
    }
    if (failures > trials) {
        throw std::invalid_argument("wilson_interval: failures must be <= trials");
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    WilsonInterval out;
    out.low = std::clamp(center - half, 0.0, p);
    out.high = std::clamp(center + half, p, 1.0);
    return out;
}

OutageEstimate estimate_outage(const ProtocolConfig& cfg, std::uint64_t trials,
                               std::uint64_t seed, const McOptions& opts) {
    cfg.validate();
    require_trials(trials);
    const auto counts = run_chunked(
        trials, opts.threads, 1,
        [&cfg, &opts, seed](std::uint64_t lo, std::uint64_t hi,
                            std::vector<std::uint64_t>& out) {
            TrialWorkspace ws;
            std::uint64_t local = 0;
            for (std::uint64_t i = lo; i < hi; ++i) {
                local += one_outage_flag(cfg, opts.kind, seed, i, ws) ? 1 : 0;
            }
            out[0] = local;
        });
    return make_estimate(counts[0], trials);
}

std::vector<OutageEstimate> estimate_outage_crn(std::span<const ProtocolConfig> cfgs,
                                                std::uint64_t trials, std::uint64_t seed,
                                                const McOptions& opts) {
    if (cfgs.empty()) {
        throw std::invalid_argument("estimate_outage_crn: config list is empty");
    }
    require_trials(trials);
    for (const auto& cfg : cfgs) {
        cfg.validate();
        const auto& ref = cfgs[0];
        if (cfg.n_relays != ref.n_relays || cfg.n_rotations != ref.n_rotations ||
            cfg.frame_len != ref.frame_len || cfg.block_len != ref.block_len ||
            cfg.rate_bpcu != ref.rate_bpcu || cfg.isolated != ref.isolated ||
            cfg.ordering != ref.ordering) {
            throw std::invalid_argument(
                "estimate_outage_crn: configs must differ only in snr_linear");
        }
    }
    const auto& ref = cfgs[0];
    const bool need_schedule = opts.kind == TrialKind::rotations && ref.n_relays > 0;
    const auto counts = run_chunked(
        trials, opts.threads, cfgs.size(),
        [&cfgs, &ref, &opts, seed, need_schedule](std::uint64_t lo, std::uint64_t hi,
                                                  std::vector<std::uint64_t>& out) {
            TrialWorkspace ws;
            for (std::uint64_t i = lo; i < hi; ++i) {
                rng::Stream real_stream(seed, i, rng::Domain::realization);
                draw_realization_into(ws.real, ref.n_relays, ref.isolated, real_stream);
                if (need_schedule) {
                    ws.sched_stream = rng::Stream(seed, i, rng::Domain::schedule);
                    build_schedule_into(ws.sched, ref.n_relays, ref.n_rotations, ref.frame_len,
                                        ref.ordering, &ws.sched_stream);
                }
                for (std::size_t c = 0; c < cfgs.size(); ++c) {
                    bool outage = false;
                    if (opts.kind == TrialKind::miso_baseline) {
                        detail::CoherentCombiner comb{ws.real};
                        outage = detail::simulate_trial<true>(cfgs[c], comb, ws.scratch);
                    } else {
                        // The schedule view is only read when a relay is
                        // active, which cannot happen with n_relays = 0.
                        struct View {
                            const RotationSchedule& s;
                            ComplexGain at(std::size_t k, std::size_t t) const {
                                return s.at(k, t);
                            }
                        } view{ws.sched};
                        detail::RotatedCombiner<View> comb{ws.real, view};
                        outage = detail::simulate_trial<true>(cfgs[c], comb, ws.scratch);
                    }
                    out[c] += outage ? 1 : 0;
                }
            }
        });
    std::vector<OutageEstimate> result;
    result.reserve(cfgs.size());
    for (std::size_t c = 0; c < cfgs.size(); ++c) {
        result.push_back(make_estimate(counts[c], trials));
    }
    return result;
}

std::uint64_t sweep_point_seed(std::uint64_t seed, const ProtocolConfig& cfg, TrialKind kind) {
    // snr_linear is deliberately absent: points of one combination share
    // trials across the SNR axis, making every sweep curve CRN-paired.
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%zu|%zu|%zu|%zu|%.17g|%d|%d|%d", cfg.n_relays,
                  cfg.n_rotations, cfg.frame_len, cfg.block_len, cfg.rate_bpcu,
                  cfg.isolated ? 1 : 0, cfg.ordering == Ordering::random ? 1 : 0,
                  kind == TrialKind::miso_baseline ? 1 : 0);
    return rng::derive_seed(seed, rng::fnv1a64(buf));
}

std::vector<SweepPoint> run_sweep(const SweepGrid& grid, std::uint64_t trials, std::uint64_t seed,
                                  const McOptions& opts) {
    require_trials(trials);
    if (grid.snr_db.empty() || grid.rate_bpcu.empty() || grid.n_relays.empty() ||
        grid.n_rotations.empty() || grid.block_len.empty() || grid.isolated.empty()) {
        throw std::invalid_argument("run_sweep: every grid list must be non-empty");
    }
    std::vector<SweepPoint> points;
    for (const bool iso : grid.isolated) {
        for (const std::size_t n : grid.n_relays) {
            for (const std::size_t l : grid.n_rotations) {
                for (const std::size_t b : grid.block_len) {
                    for (const double rate : grid.rate_bpcu) {
                        for (const double snr_db : grid.snr_db) {
                            SweepPoint pt;
                            pt.snr_db = snr_db;
                            pt.cfg.n_relays = n;
                            pt.cfg.n_rotations = l;
                            pt.cfg.frame_len = grid.frame_len;
                            pt.cfg.block_len = b;
                            pt.cfg.rate_bpcu = rate;
                            pt.cfg.snr_linear = snr_db_to_linear(snr_db);
                            pt.cfg.isolated = iso;
                            pt.cfg.ordering = grid.ordering;
                            try {
                                pt.cfg.validate();
                                pt.estimate = estimate_outage(
                                    pt.cfg, trials, sweep_point_seed(seed, pt.cfg, opts.kind),
                                    opts);
                            } catch (const std::invalid_argument& e) {
                                pt.failed = true;
                                pt.error = e.what();
                            }
                            points.push_back(std::move(pt));
                        }
                    }
                }
            }
        }
    }
    return points;
}

double diversity_slope(std::span<const SweepPoint> points) {
    std::vector<const SweepPoint*> ok;
    for (const auto& pt : points) {
        if (!pt.failed) {
            ok.push_back(&pt);
        }
    }
    if (ok.size() < 2) {
        throw std::invalid_argument("diversity_slope: need at least two points");
    }
    std::sort(ok.begin(), ok.end(),
              [](const SweepPoint* a, const SweepPoint* b) { return a->snr_db < b->snr_db; });
    const SweepPoint& top = *ok[ok.size() - 1];
    const SweepPoint& prev = *ok[ok.size() - 2];
    if (!(top.snr_db > prev.snr_db)) {
        throw std::invalid_argument("diversity_slope: the two highest SNRs must be distinct");
    }
    if (top.estimate.outage_prob <= 0.0 || prev.estimate.outage_prob <= 0.0) {
        throw std::invalid_argument(
            "diversity_slope: outage_prob is zero at the top SNRs; increase trials");
    }
    const double dlogp =
        std::log10(top.estimate.outage_prob) - std::log10(prev.estimate.outage_prob);
    const double ddecades = (top.snr_db - prev.snr_db) / 10.0;
    return -dlogp / ddecades;
}

}  // namespace ddfrot
