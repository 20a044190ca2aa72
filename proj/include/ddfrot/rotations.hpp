// Rotation alphabet and per-relay rotation schedules.
//
// The alphabet is the L evenly spaced unit phasors e^{i*2*pi*l/L}. A schedule
// assigns one phasor per (relay, slot); columns cycle through all L^N relay
// combinations, either in plain lexicographic order or with each full period
// freshly permuted.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ddfrot/channel.hpp"
#include "ddfrot/rng.hpp"

namespace ddfrot {

enum class Ordering {
    lexicographic,
    random,
};

// The L rotation angles {2*pi*l/L : l = 0..L-1}, increasing. Rejects L = 0.
std::vector<double> angle_set(std::size_t n_rotations);

// N x T matrix of unit-modulus rotations, row k bound to relay identity k.
struct RotationSchedule {
    std::size_t n_relays = 0;
    std::size_t n_rotations = 1;
    std::size_t frame_len = 0;
    // False when frame_len < L^N, i.e. the frame cannot contain every
    // rotation combination. Non-fatal; surfaced for the caller to report.
    bool full_coverage = true;
    std::vector<ComplexGain> entries;  // row-major n_relays x frame_len

    // slot is 1-based.
    ComplexGain at(std::size_t relay, std::size_t slot) const {
        return entries[relay * frame_len + (slot - 1)];
    }
};

// Streaming generator of schedule columns; the single source of truth for
// what a schedule contains. Slots must be visited in non-decreasing order in
// random mode (each full period consumes one fresh permutation from the
// stream, so skipped tail periods are simply never drawn).
class ScheduleSampler {
  public:
    ScheduleSampler() = default;

    // `rs` must outlive the sampler and is required for random ordering.
    // Accepts n_relays = 0 (degenerate, no entries will ever be read).
    void reset(std::size_t n_relays, std::size_t n_rotations, std::size_t frame_len,
               Ordering ordering, rng::Stream* rs);

    ComplexGain at(std::size_t relay, std::size_t slot);

    bool full_coverage() const { return full_coverage_; }

  private:
    void load_period(std::size_t period);
    std::size_t column_tuple(std::size_t slot);
    std::size_t digit(std::size_t tuple, std::size_t relay) const;

    std::size_t n_relays_ = 0;
    std::size_t n_rotations_ = 1;
    std::size_t frame_len_ = 0;
    std::size_t period_len_ = 1;     // min(L^N, saturation cap)
    bool saturated_ = false;         // L^N did not fit; no cycling in practice
    bool full_coverage_ = true;
    Ordering ordering_ = Ordering::lexicographic;
    rng::Stream* rs_ = nullptr;
    std::vector<ComplexGain> alphabet_;        // the L unit phasors
    std::vector<unsigned __int128> place_;     // place value of each relay digit
    std::vector<std::uint32_t> perm_;          // random mode: current period's column order
    std::size_t loaded_period_ = SIZE_MAX;
};

// Materializes a full schedule. Rejects n_relays = 0 or frame_len = 0; random
// ordering requires a stream. The returned full_coverage flag is the
// T >= L^N warning surface.
RotationSchedule build_schedule(std::size_t n_relays, std::size_t n_rotations,
                                std::size_t frame_len, Ordering ordering,
                                rng::Stream* rs = nullptr);

// Same, reusing the entry storage of `out`.
void build_schedule_into(RotationSchedule& out, std::size_t n_relays, std::size_t n_rotations,
                         std::size_t frame_len, Ordering ordering, rng::Stream* rs = nullptr);

}  // namespace ddfrot
