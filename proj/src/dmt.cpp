#include "ddfrot/dmt.hpp"

#include <limits>
#include <stdexcept>

namespace ddfrot {

namespace {

double pos(double x) { return x > 0.0 ? x : 0.0; }

void check_multiplexing(double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw std::invalid_argument("multiplexing gain must lie in [0, 1]");
    }
}

}  // namespace

double dmt_ddf_optimal(std::size_t n_relays, double r) {
    if (n_relays < 1) {
        throw std::invalid_argument("dmt_ddf_optimal: n_relays must be >= 1");
    }
    check_multiplexing(r);
    const double n = static_cast<double>(n_relays);
    if (r <= 1.0 / (n + 1.0)) {
        return (n + 1.0) * (1.0 - r);
    }
    if (r <= 0.5) {
        return 1.0 + n * (1.0 - 2.0 * r) / (1.0 - r);
    }
    return (1.0 - r) / r;
}

double d1_exponent(std::size_t frame_len, std::size_t decode_time, double r) {
    if (decode_time < 1 || decode_time > frame_len) {
        throw std::invalid_argument("d1_exponent: decode_time must lie in [1, frame_len]");
    }
    check_multiplexing(r);
    if (decode_time == 1) {
        return 0.0;
    }
    return pos(1.0 - static_cast<double>(frame_len) * r /
                         static_cast<double>(decode_time - 1));
}

DmtBoundParams make_dmt_bound_params(std::size_t frame_len, std::size_t decode_time) {
    if (decode_time < 1 || decode_time > frame_len) {
        throw std::invalid_argument(
            "make_dmt_bound_params: decode_time must lie in [1, frame_len]");
    }
    DmtBoundParams params;
    params.frame_len = frame_len;
    params.decode_time = decode_time;
    params.paired_slots = (frame_len - decode_time) / 2;
    return params;
}

double d_dest_bound(const DmtBoundParams& params, double r) {
    check_multiplexing(r);
    const double t = static_cast<double>(params.frame_len);
    const double t1 = static_cast<double>(params.decode_time);
    const double a2 = 2.0 * static_cast<double>(params.paired_slots);
    // Both branches agree at r = 2A/T; route equality through the first.
    if (r >= a2 / t) {
        if (t1 <= a2) {
            return 2.0 * pos(1.0 - t * r / (t1 + a2));
        }
        return (t1 + a2) / t1 * pos(1.0 - t * r / (t1 + a2));
    }
    if (t1 <= a2) {
        return 2.0 * pos(1.0 - t * r / (t1 + a2));
    }
    // r < 2A/T here, so A > 0 and the division is safe.
    return pos(2.0 - t * r / a2);
}

double dmt_lower_bound_single_relay(std::size_t frame_len, double r) {
    if (frame_len < 2) {
        throw std::invalid_argument("dmt_lower_bound_single_relay: frame_len must be >= 2");
    }
    check_multiplexing(r);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t1 = 1; t1 <= frame_len; ++t1) {
        const double total =
            d1_exponent(frame_len, t1, r) + d_dest_bound(make_dmt_bound_params(frame_len, t1), r);
        if (total < best) {
            best = total;
        }
    }
    return best;
}

std::vector<DmtPoint> dmt_curve_optimal(std::size_t n_relays, const std::vector<double>& grid) {
    std::vector<DmtPoint> curve;
    curve.reserve(grid.size());
    for (const double r : grid) {
        curve.push_back({r, dmt_ddf_optimal(n_relays, r)});
    }
    return curve;
}

std::vector<DmtPoint> dmt_curve_lower_bound(std::size_t frame_len,
                                            const std::vector<double>& grid) {
    std::vector<DmtPoint> curve;
    curve.reserve(grid.size());
    for (const double r : grid) {
        curve.push_back({r, dmt_lower_bound_single_relay(frame_len, r)});
    }
    return curve;
}

}  // namespace ddfrot
