// Slow-fading channel model: one complex Gaussian draw of every link in the
// relay network, held constant for a whole frame.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ddfrot/rng.hpp"

namespace ddfrot {

using ComplexGain = std::complex<double>;

// All link gains for one frame. Indices are relay ids.
struct ChannelRealization {
    ComplexGain g0{};              // source -> destination
    std::vector<ComplexGain> h;    // h[i]: source -> relay i
    std::vector<ComplexGain> g;    // g[k]: relay k -> destination
    std::vector<ComplexGain> f;    // row-major NxN, f[k*N+i]: relay k -> relay i

    std::size_t n_relays() const { return h.size(); }

    ComplexGain relay_link(std::size_t from_k, std::size_t to_i) const {
        return f[from_k * n_relays() + to_i];
    }
};

// 10^(dB/10).
double snr_db_to_linear(double snr_db);

// Draws every link as an independent CN(0,1) gain (E|.|^2 = 1). The f draws
// are consumed from the stream even when `isolated` zeroes them, so an
// isolated/connected pair run from the same stream shares g0, h and g
// exactly. Diagonal f entries are always zero.
ChannelRealization draw_realization(std::size_t n_relays, bool isolated, rng::Stream& rs);

// Same draw into existing storage; reuses vector capacity across trials.
void draw_realization_into(ChannelRealization& out, std::size_t n_relays, bool isolated,
                           rng::Stream& rs);

}  // namespace ddfrot
