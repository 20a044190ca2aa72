// Decode-and-forward frame dynamics with rotated relay retransmission.
//
// A frame has T slots, t = 1..T. Relay i listens and accumulates mutual
// information until a decode boundary (a multiple of the block length B,
// with t = 0 counting as a boundary) at which its total reaches T*R bits;
// from the next slot on it transmits the source symbol scaled by its
// schedule rotation. Transmit power is split evenly across the source and
// the j relays active in a slot, so each ramp-up step scales SNR by
// 1/(1 + j). The destination decodes iff its accumulated total reaches T*R.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ddfrot/channel.hpp"
#include "ddfrot/rotations.hpp"

namespace ddfrot {

// Active-relay set as a bitmask, bit i = relay i. Caps n_relays at 64.
using RelayMask = std::uint64_t;

struct ProtocolConfig {
    std::size_t n_relays = 1;
    std::size_t n_rotations = 2;
    std::size_t frame_len = 64;
    std::size_t block_len = 1;
    double rate_bpcu = 2.0;
    double snr_linear = 10.0;
    bool isolated = false;
    Ordering ordering = Ordering::random;

    // Throws std::invalid_argument on the first violated invariant:
    // frame_len >= 1, 1 <= block_len <= frame_len, block_len divides
    // frame_len, rate_bpcu >= 0 and finite, snr_linear > 0 and finite,
    // n_rotations >= 1, n_relays <= 64.
    void validate() const;
};

struct TrialOutcome {
    // decode_slot[i] is the boundary at which relay i decoded (0 means
    // before slot 1, frame_len means at the final boundary or never).
    std::vector<std::size_t> decode_slot;
    double dest_info_bits = 0.0;
    bool outage = false;  // outage <=> dest_info_bits < frame_len * rate_bpcu
};

// Effective source->destination gain in a slot: g0 plus each active relay's
// rotated gain. `rotations` is indexed by relay id over all n_relays.
ComplexGain equivalent_dest_channel(const ChannelRealization& real, RelayMask active,
                                    const std::vector<ComplexGain>& rotations);

// Effective source->relay-i gain: h_i plus rotated inter-relay gains from the
// active set. Rejects i in active (an active relay no longer listens).
ComplexGain equivalent_relay_channel(const ChannelRealization& real, std::size_t listener,
                                     RelayMask active, const std::vector<ComplexGain>& rotations);

// Mutual information of one slot, log2(1 + snr * |gain|^2 / (1 + n_active)).
double slot_mutual_info(double snr_linear, ComplexGain gain, std::size_t n_active);

// Closed-form decode time of a single relay under B = 1: the first slot t
// with t * log2(1 + snr * |h1|^2) >= frame_len * rate, clamped to frame_len;
// 0 when rate <= 0, frame_len when the link is identically zero.
std::size_t single_relay_listen_time(std::size_t frame_len, double rate_bpcu, double snr_linear,
                                     ComplexGain h1);

// One full frame under the rotation protocol. Schedule dimensions must match
// cfg (throws otherwise).
TrialOutcome run_trial(const ProtocolConfig& cfg, const ChannelRealization& real,
                       const RotationSchedule& schedule);

// One full frame with coherent combining, log2(1 + snr/(1+j) * (|g0|^2 +
// sum of active |g_k|^2)): the transmit-CSI bound. Decode dynamics are
// unchanged; no schedule is involved.
TrialOutcome baseline_miso_trial(const ProtocolConfig& cfg, const ChannelRealization& real);

// Net rate after the per-block activation signaling overhead: a block
// carries bits_per_symbol * block_len payload bits plus ceil(log2(n_relays))
// signaling bits (1 bit when n_relays = 1).
double useful_rate(std::size_t bits_per_symbol, std::size_t block_len, std::size_t n_relays);

}  // namespace ddfrot
