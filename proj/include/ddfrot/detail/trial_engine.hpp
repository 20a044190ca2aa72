// Shared frame-simulation loop. The full-outcome path and the Monte Carlo
// outage-flag fast path must never diverge, so both are instantiations of
// one template; the fast path may exit as soon as the destination total
// reaches the target because per-slot contributions are non-negative.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "ddfrot/channel.hpp"
#include "ddfrot/protocol.hpp"

namespace ddfrot::detail {

struct TrialScratch {
    std::vector<double> relay_bits;
    std::vector<std::size_t> decode_slot;
    double dest_bits = 0.0;
};

// Rotated superposition |g0 + sum r_kt g_k|^2. Sched needs at(relay, slot).
template <class Sched>
struct RotatedCombiner {
    const ChannelRealization& real;
    Sched& sched;

    double dest_power(RelayMask active, std::size_t slot) {
        ComplexGain sum = real.g0;
        for (RelayMask m = active; m != 0; m &= m - 1) {
            const auto k = static_cast<std::size_t>(std::countr_zero(m));
            sum += sched.at(k, slot) * real.g[k];
        }
        return std::norm(sum);
    }

    double relay_power(RelayMask active, std::size_t listener, std::size_t slot) {
        ComplexGain sum = real.h[listener];
        for (RelayMask m = active; m != 0; m &= m - 1) {
            const auto k = static_cast<std::size_t>(std::countr_zero(m));
            sum += sched.at(k, slot) * real.relay_link(k, listener);
        }
        return std::norm(sum);
    }
};

// Transmit-CSI coherent sum |g0|^2 + sum |g_k|^2; slot-independent.
struct CoherentCombiner {
    const ChannelRealization& real;

    double dest_power(RelayMask active, std::size_t) const {
        double sum = std::norm(real.g0);
        for (RelayMask m = active; m != 0; m &= m - 1) {
            const auto k = static_cast<std::size_t>(std::countr_zero(m));
            sum += std::norm(real.g[k]);
        }
        return sum;
    }

    double relay_power(RelayMask active, std::size_t listener, std::size_t) const {
        double sum = std::norm(real.h[listener]);
        for (RelayMask m = active; m != 0; m &= m - 1) {
            const auto k = static_cast<std::size_t>(std::countr_zero(m));
            sum += std::norm(real.relay_link(k, listener));
        }
        return sum;
    }
};

// Runs one frame; returns the outage flag. cfg must already be validated and
// combiner dimensions must match. With kOutageFlagOnly the scratch totals
// are left mid-frame on early exit and only the flag is meaningful.
template <bool kOutageFlagOnly, class Combiner>
bool simulate_trial(const ProtocolConfig& cfg, Combiner&& comb, TrialScratch& s) {
    const std::size_t n = cfg.n_relays;
    const std::size_t frame = cfg.frame_len;
    const double target = static_cast<double>(frame) * cfg.rate_bpcu;
    const double snr = cfg.snr_linear;

    s.relay_bits.assign(n, 0.0);
    s.decode_slot.assign(n, frame);
    s.dest_bits = 0.0;

    RelayMask active = 0;
    if (target <= 0.0) {
        // t = 0 is a decode boundary: a zero requirement is met immediately.
        for (std::size_t i = 0; i < n; ++i) {
            s.decode_slot[i] = 0;
        }
        active = (n >= 64) ? ~RelayMask{0} : ((RelayMask{1} << n) - 1);
    }
    std::size_t n_active = static_cast<std::size_t>(std::popcount(active));

    for (std::size_t t = 1; t <= frame; ++t) {
        const double scale = snr / static_cast<double>(1 + n_active);
        s.dest_bits += std::log2(1.0 + scale * comb.dest_power(active, t));
        if constexpr (kOutageFlagOnly) {
            if (s.dest_bits >= target) {
                return false;
            }
        }
        if (n_active < n) {
            for (std::size_t i = 0; i < n; ++i) {
                if ((active >> i & 1) != 0) {
                    continue;
                }
                s.relay_bits[i] += std::log2(1.0 + scale * comb.relay_power(active, i, t));
            }
            if (t % cfg.block_len == 0) {
                RelayMask newly = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if ((active >> i & 1) == 0 && s.relay_bits[i] >= target) {
                        newly |= RelayMask{1} << i;
                        s.decode_slot[i] = t;
                    }
                }
                if (newly != 0) {
                    active |= newly;
                    n_active = static_cast<std::size_t>(std::popcount(active));
                }
            }
        }
    }
    return s.dest_bits < target;
}

}  // namespace ddfrot::detail
