// Tunneling through the forbidden gap: at band center a slab of thickness L
// transmits sech^2(L / lambda_C), so each added Compton length costs a fixed
// number of dB. Prints the curve for the cold-cloud parameter set.

#include <cstdio>

#include <spinorlight/medium.hpp>
#include <spinorlight/scattering.hpp>

namespace sl = spinorlight;

int main() {
    sl::MediumConfig cfg;
    cfg.omega = 1e6;
    cfg.c = 3e8;
    cfg.g2n = cfg.c * cfg.omega * cfg.omega / 17.0; // group velocity 17 m/s
    cfg.phase_s = 0.5 * sl::pi;
    cfg.delta = 5.67e4;
    cfg.gamma = 0.0;
    cfg.length = 0.0;

    const double lambda_c = sl::compton_length(cfg);
    std::printf("# two-photon detuning %.3g rad/s, Compton length %.4g m\n", cfg.delta, lambda_c);
    std::printf("%12s %12s %12s %12s\n", "L/lambda_C", "|R|^2", "|T|^2", "T_dB");
    for (int i = 0; i <= 40; ++i) {
        cfg.length = 0.1 * i * lambda_c;
        const sl::ScatterResult s = sl::scatter_gap_center(cfg);
        const double db = s.t2 > 0.0 ? 10.0 * std::log10(s.t2) : -1e9;
        std::printf("%12.2f %12.6f %12.6f %12.2f\n", 0.1 * i, s.r2, s.t2, db);
    }
    return 0;
}
