#include "ddfrot/channel.hpp"

#include <cmath>

namespace ddfrot {

double snr_db_to_linear(double snr_db) {
    return std::pow(10.0, snr_db / 10.0);
}

void draw_realization_into(ChannelRealization& out, std::size_t n_relays, bool isolated,
                           rng::Stream& rs) {
    const std::size_t n = n_relays;
    out.h.resize(n);
    out.g.resize(n);
    out.f.resize(n * n);

    out.g0 = rs.next_complex_gain();
    for (std::size_t i = 0; i < n; ++i) out.h[i] = rs.next_complex_gain();
    for (std::size_t k = 0; k < n; ++k) out.g[k] = rs.next_complex_gain();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) {
                out.f[k * n + i] = ComplexGain{};
                continue;
            }
            ComplexGain draw = rs.next_complex_gain();
            out.f[k * n + i] = isolated ? ComplexGain{} : draw;
        }
    }
}

ChannelRealization draw_realization(std::size_t n_relays, bool isolated, rng::Stream& rs) {
    ChannelRealization real;
    draw_realization_into(real, n_relays, isolated, rs);
    return real;
}

}  // namespace ddfrot
