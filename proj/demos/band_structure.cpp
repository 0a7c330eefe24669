// Band structure of the two-component medium: a relativistic-looking pair of
// branches with a gap of 2*delta, approaching the slow light cone at large dk.

#include <iomanip>
#include <iostream>

#include <spinorlight/medium.hpp>

namespace sl = spinorlight;

int main() {
    sl::MediumConfig cfg;
    cfg.omega = 1e6;
    cfg.c = 3e8;
    cfg.g2n = cfg.c * cfg.omega * cfg.omega / 17.0;
    cfg.phase_s = 0.5 * sl::pi;
    cfg.delta = 5.67e4;
    cfg.gamma = 0.0;
    cfg.length = 3e-4;

    const double vs = cfg.v0() * std::abs(cfg.sin_s());
    std::cout << "# gap half-width " << cfg.delta << " rad/s, effective mass "
              << sl::effective_mass(cfg) << " kg, cone slope " << vs << " m/s\n";
    std::cout << "dk,omega_plus,omega_minus,asymptote\n";
    std::cout << std::setprecision(10);
    for (int i = 0; i <= 100; ++i) {
        const double dk = -1e4 + 2e2 * i;
        const sl::DispersionPoint p = sl::dispersion(cfg, dk);
        std::cout << p.dk << "," << p.omega_plus << "," << p.omega_minus << "," << vs * dk << "\n";
    }
    return 0;
}
