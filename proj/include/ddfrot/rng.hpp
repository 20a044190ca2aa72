// Counter-based pseudorandom streams (Philox4x64-10).
//
// Every random quantity in the simulator is addressed, not sequenced: a
// stream is identified by (seed, stream_id, domain) and trial i's stream can
// be opened directly without generating trials 0..i-1. This is what makes
// the Monte Carlo estimates independent of worker count and execution order.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

namespace ddfrot::rng {

// Philox4x64 with 10 rounds. The block function is a fixed, platform
// independent mapping (counter, key) -> 4x64 bits; see the known-answer
// tests for frozen vectors.
struct Philox4x64 {
    using Block = std::array<std::uint64_t, 4>;
    using Key = std::array<std::uint64_t, 2>;

    static Block block(Block counter, const Key& key);
};

// Substream selector. Domains occupy disjoint counter regions of the same
// (seed, stream_id) pair, so e.g. the channel draw of a trial is unaffected
// by how many values the schedule draw consumes.
enum class Domain : std::uint64_t {
    realization = 1,
    schedule = 2,
    derive = 3,
    generic = 4,
};

class Stream {
  public:
    Stream(std::uint64_t seed, std::uint64_t stream_id, Domain domain = Domain::generic)
        : key_{seed, stream_id}, counter_{0, 0, 0, static_cast<std::uint64_t>(domain)} {}

    std::uint64_t next_u64() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; safe as a log() argument.
    double next_double_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Uniform on {0, ..., bound-1} by masked rejection. bound <= 1 consumes
    // nothing and returns 0.
    std::uint64_t next_below(std::uint64_t bound);

    // Circularly symmetric complex Gaussian with E|z|^2 = 1. Consumes
    // exactly two 64-bit values: |z|^2 is Exp(1), the phase is uniform.
    std::complex<double> next_complex_gain();

  private:
    void refill() {
        buf_ = Philox4x64::block(counter_, key_);
        if (++counter_[0] == 0) ++counter_[1];
        pos_ = 0;
    }

    Philox4x64::Key key_;
    Philox4x64::Block counter_;
    Philox4x64::Block buf_{};
    int pos_ = 4;
};

// One-block keyed hash: derives a child seed for a labeled subexperiment
// (e.g. one sweep point) from a root seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label);

// FNV-1a over bytes, used to turn canonical parameter strings into labels.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace ddfrot::rng
