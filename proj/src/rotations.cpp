#include "ddfrot/rotations.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ddfrot {

namespace {

// Combination count L^N, saturating well below SIZE_MAX so that
// "column index < period" comparisons stay exact.
std::size_t saturating_pow(std::size_t base, std::size_t exp, bool& saturated) {
    constexpr std::size_t kCap = std::size_t{1} << 62;
    std::size_t result = 1;
    saturated = false;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && result > kCap / base) {
            saturated = true;
            return kCap;
        }
        result *= base;
    }
    return result;
}

// Exact values on the axes so that e.g. L = 2 yields literal +1/-1.
ComplexGain unit_phasor(std::size_t l, std::size_t n_rotations) {
    if ((4 * l) % n_rotations == 0) {
        switch ((4 * l) / n_rotations % 4) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(n_rotations);
    return {std::cos(angle), std::sin(angle)};
}

// Random ordering keeps an explicit permutation of all L^N columns per
// period; cap its size rather than allocate unbounded tables.
constexpr std::size_t kMaxRandomPeriod = std::size_t{1} << 20;

}  // namespace

std::vector<double> angle_set(std::size_t n_rotations) {
    if (n_rotations == 0) {
        throw std::invalid_argument("angle_set: n_rotations must be >= 1");
    }
    std::vector<double> angles(n_rotations);
    for (std::size_t l = 0; l < n_rotations; ++l) {
        angles[l] =
            2.0 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(n_rotations);
    }
    return angles;
}

void ScheduleSampler::reset(std::size_t n_relays, std::size_t n_rotations, std::size_t frame_len,
                            Ordering ordering, rng::Stream* rs) {
    if (n_rotations == 0) {
        throw std::invalid_argument("ScheduleSampler: n_rotations must be >= 1");
    }
    if (ordering == Ordering::random && rs == nullptr) {
        throw std::invalid_argument("ScheduleSampler: random ordering requires a stream");
    }
    n_relays_ = n_relays;
    n_rotations_ = n_rotations;
    frame_len_ = frame_len;
    ordering_ = ordering;
    rs_ = rs;
    loaded_period_ = SIZE_MAX;
    period_len_ = saturating_pow(n_rotations, n_relays, saturated_);
    full_coverage_ = !saturated_ && frame_len >= period_len_;

    alphabet_.resize(n_rotations);
    for (std::size_t l = 0; l < n_rotations; ++l) {
        alphabet_[l] = unit_phasor(l, n_rotations);
    }

    // Relay 0 is the most significant digit of the column tuple index.
    place_.assign(n_relays, 1);
    constexpr auto kPlaceCap = std::numeric_limits<unsigned __int128>::max();
    for (std::size_t k = n_relays; k-- > 0;) {
        if (k + 1 < n_relays) {
            const auto prev = place_[k + 1];
            place_[k] = (prev > kPlaceCap / n_rotations) ? kPlaceCap : prev * n_rotations;
        }
    }

    if (ordering == Ordering::random) {
        if (saturated_ || period_len_ > kMaxRandomPeriod) {
            throw std::invalid_argument(
                "ScheduleSampler: random ordering requires n_rotations^n_relays <= 2^20");
        }
        perm_.resize(period_len_);
    }
}

void ScheduleSampler::load_period(std::size_t period) {
    // Periods are drawn strictly forward; each consumes one full
    // Fisher-Yates permutation even if the frame ends mid-period, so the
    // entries of a partial period do not depend on where the frame ends.
    for (std::size_t p = (loaded_period_ == SIZE_MAX) ? 0 : loaded_period_ + 1; p <= period; ++p) {
        for (std::size_t i = 0; i < period_len_; ++i) {
            perm_[i] = static_cast<std::uint32_t>(i);
        }
        for (std::size_t i = period_len_; i-- > 1;) {
            const std::size_t j = static_cast<std::size_t>(rs_->next_below(i + 1));
            std::swap(perm_[i], perm_[j]);
        }
    }
    loaded_period_ = period;
}

std::size_t ScheduleSampler::column_tuple(std::size_t slot) {
    const std::size_t col = slot - 1;
    if (ordering_ == Ordering::lexicographic) {
        return saturated_ ? col : col % period_len_;
    }
    const std::size_t period = col / period_len_;
    if (period != loaded_period_) {
        load_period(period);
    }
    return perm_[col % period_len_];
}

std::size_t ScheduleSampler::digit(std::size_t tuple, std::size_t relay) const {
    const auto quotient = static_cast<unsigned __int128>(tuple) / place_[relay];
    return static_cast<std::size_t>(quotient % n_rotations_);
}

ComplexGain ScheduleSampler::at(std::size_t relay, std::size_t slot) {
    return alphabet_[digit(column_tuple(slot), relay)];
}

RotationSchedule build_schedule(std::size_t n_relays, std::size_t n_rotations,
                                std::size_t frame_len, Ordering ordering, rng::Stream* rs) {
    RotationSchedule out;
    build_schedule_into(out, n_relays, n_rotations, frame_len, ordering, rs);
    return out;
}

void build_schedule_into(RotationSchedule& out, std::size_t n_relays, std::size_t n_rotations,
                         std::size_t frame_len, Ordering ordering, rng::Stream* rs) {
    if (n_relays == 0) {
        throw std::invalid_argument("build_schedule: n_relays must be >= 1");
    }
    if (frame_len == 0) {
        throw std::invalid_argument("build_schedule: frame_len must be >= 1");
    }
    ScheduleSampler sampler;
    sampler.reset(n_relays, n_rotations, frame_len, ordering, rs);
    out.n_relays = n_relays;
    out.n_rotations = n_rotations;
    out.frame_len = frame_len;
    out.full_coverage = sampler.full_coverage();
    out.entries.resize(n_relays * frame_len);
    for (std::size_t slot = 1; slot <= frame_len; ++slot) {
        for (std::size_t k = 0; k < n_relays; ++k) {
            out.entries[k * frame_len + (slot - 1)] = sampler.at(k, slot);
        }
    }
}

}  // namespace ddfrot
