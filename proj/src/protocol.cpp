#include "ddfrot/protocol.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "ddfrot/detail/trial_engine.hpp"

namespace ddfrot {

namespace {

// Adapter so the engine can read a materialized schedule.
struct ScheduleView {
    const RotationSchedule& sched;
    ComplexGain at(std::size_t relay, std::size_t slot) const { return sched.at(relay, slot); }
};

void check_dimensions(const ProtocolConfig& cfg, const ChannelRealization& real) {
    if (real.n_relays() != cfg.n_relays) {
        throw std::invalid_argument("run_trial: realization does not match n_relays");
    }
}

TrialOutcome outcome_from_scratch(const detail::TrialScratch& s, bool outage) {
    TrialOutcome out;
    out.decode_slot = s.decode_slot;
    out.dest_info_bits = s.dest_bits;
    out.outage = outage;
    return out;
}

}  // namespace

void ProtocolConfig::validate() const {
    if (frame_len < 1) {
        throw std::invalid_argument("frame_len must be >= 1");
    }
    if (block_len < 1 || block_len > frame_len) {
        throw std::invalid_argument("block_len must satisfy 1 <= block_len <= frame_len");
    }
    if (frame_len % block_len != 0) {
        throw std::invalid_argument("block_len must divide frame_len");
    }
    if (!(rate_bpcu >= 0.0) || !std::isfinite(rate_bpcu)) {
        throw std::invalid_argument("rate_bpcu must be finite and >= 0");
    }
    if (!(snr_linear > 0.0) || !std::isfinite(snr_linear)) {
        throw std::invalid_argument("snr_linear must be finite and > 0");
    }
    if (n_rotations < 1) {
        throw std::invalid_argument("n_rotations must be >= 1");
    }
    if (n_relays > 64) {
        throw std::invalid_argument("n_relays must be <= 64");
    }
}

ComplexGain equivalent_dest_channel(const ChannelRealization& real, RelayMask active,
                                    const std::vector<ComplexGain>& rotations) {
    ComplexGain sum = real.g0;
    for (RelayMask m = active; m != 0; m &= m - 1) {
        const auto k = static_cast<std::size_t>(std::countr_zero(m));
        sum += rotations[k] * real.g[k];
    }
    return sum;
}

ComplexGain equivalent_relay_channel(const ChannelRealization& real, std::size_t listener,
                                     RelayMask active, const std::vector<ComplexGain>& rotations) {
    if ((active >> listener & 1) != 0) {
        throw std::invalid_argument("equivalent_relay_channel: listener is active");
    }
    ComplexGain sum = real.h[listener];
    for (RelayMask m = active; m != 0; m &= m - 1) {
        const auto k = static_cast<std::size_t>(std::countr_zero(m));
        sum += rotations[k] * real.relay_link(k, listener);
    }
    return sum;
}

double slot_mutual_info(double snr_linear, ComplexGain gain, std::size_t n_active) {
    return std::log2(1.0 + snr_linear / static_cast<double>(1 + n_active) * std::norm(gain));
}

std::size_t single_relay_listen_time(std::size_t frame_len, double rate_bpcu, double snr_linear,
                                     ComplexGain h1) {
    if (rate_bpcu <= 0.0) {
        return 0;
    }
    const double per_slot = std::log2(1.0 + snr_linear * std::norm(h1));
    if (!(per_slot > 0.0)) {
        return frame_len;
    }
    const double slots =
        std::ceil(static_cast<double>(frame_len) * rate_bpcu / per_slot);
    if (slots >= static_cast<double>(frame_len)) {
        return frame_len;
    }
    return static_cast<std::size_t>(slots);
}

TrialOutcome run_trial(const ProtocolConfig& cfg, const ChannelRealization& real,
                       const RotationSchedule& schedule) {
    cfg.validate();
    check_dimensions(cfg, real);
    if (schedule.n_relays != cfg.n_relays) {
        throw std::invalid_argument("run_trial: schedule does not match n_relays");
    }
    if (cfg.n_relays > 0 &&
        (schedule.frame_len != cfg.frame_len || schedule.n_rotations != cfg.n_rotations)) {
        throw std::invalid_argument("run_trial: schedule does not match frame_len/n_rotations");
    }
    detail::TrialScratch scratch;
    ScheduleView view{schedule};
    detail::RotatedCombiner<ScheduleView> comb{real, view};
    const bool outage = detail::simulate_trial<false>(cfg, comb, scratch);
    return outcome_from_scratch(scratch, outage);
}

TrialOutcome baseline_miso_trial(const ProtocolConfig& cfg, const ChannelRealization& real) {
    cfg.validate();
    check_dimensions(cfg, real);
    detail::TrialScratch scratch;
    detail::CoherentCombiner comb{real};
    const bool outage = detail::simulate_trial<false>(cfg, comb, scratch);
    return outcome_from_scratch(scratch, outage);
}

double useful_rate(std::size_t bits_per_symbol, std::size_t block_len, std::size_t n_relays) {
    if (bits_per_symbol < 1 || block_len < 1 || n_relays < 1) {
        throw std::invalid_argument("useful_rate: all arguments must be >= 1");
    }
    const std::size_t signal_bits =
        (n_relays == 1) ? 1 : static_cast<std::size_t>(std::bit_width(n_relays - 1));
    const double payload = static_cast<double>(bits_per_symbol * block_len);
    return payload / (payload + static_cast<double>(signal_bits));
}

}  // namespace ddfrot
