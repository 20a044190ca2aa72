// Diversity-multiplexing tradeoff curves.
//
// d* is the optimal tradeoff of the protocol with N relays. For a single
// relay and L = 2 there is also a closed-form achievable lower bound built
// from the relay's high-SNR listening time T1 and the number A of
// two-slot groups the destination can pair after the relay activates;
// minimizing the total exponent over T1 gives the curve.

#pragma once

#include <cstddef>
#include <vector>

namespace ddfrot {

struct DmtPoint {
    double multiplexing = 0.0;  // r in [0, 1]
    double diversity = 0.0;     // d(r)
};

// Optimal DDF tradeoff for n_relays >= 1 over r in [0, 1]:
//   (N+1)(1-r)            for r <= 1/(N+1)
//   1 + N(1-2r)/(1-r)     for 1/(N+1) <= r <= 1/2
//   (1-r)/r               for r >= 1/2
double dmt_ddf_optimal(std::size_t n_relays, double r);

// High-SNR exponent of P(relay listening time = T1) for 1 <= T1 <= frame_len:
// (1 - T*r/(T1-1))^+, and 0 for T1 = 1.
double d1_exponent(std::size_t frame_len, std::size_t decode_time, double r);

struct DmtBoundParams {
    std::size_t frame_len = 0;
    std::size_t decode_time = 0;   // T1
    std::size_t paired_slots = 0;  // A = floor((T - T1) / 2)
};

DmtBoundParams make_dmt_bound_params(std::size_t frame_len, std::size_t decode_time);

// Destination outage exponent conditioned on T1, for one relay and L = 2.
double d_dest_bound(const DmtBoundParams& params, double r);

// min over T1 in {1..T} of d1_exponent + d_dest_bound: the achievable
// single-relay bound. Requires frame_len >= 2 and r in [0, 1].
double dmt_lower_bound_single_relay(std::size_t frame_len, double r);

// Curve helpers over a multiplexing grid (each r must lie in [0, 1]).
std::vector<DmtPoint> dmt_curve_optimal(std::size_t n_relays, const std::vector<double>& grid);
std::vector<DmtPoint> dmt_curve_lower_bound(std::size_t frame_len,
                                            const std::vector<double>& grid);

}  // namespace ddfrot
