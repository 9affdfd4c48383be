// probe — scratch driver used while pinning oracle values; prints dressed
// splittings, ground-state photon number, and a timed quasi-steady-state run.

#include <chrono>
#include <cstdio>

#include "usc/observables.hpp"

using namespace usc;

int main(int argc, char** argv) {
    ModelParams p; // paper-style defaults: g = 0.2, theta = 0.93
    if (argc > 1) p.n_fock = std::atoi(argv[1]);
    if (argc > 2) p.n_dressed = std::atoi(argv[2]);

    const System sys = build_system(p);
    std::printf("n_fock=%d n_dressed=%d\n", p.n_fock, p.n_dressed);
    std::printf("E0 = %.12f\n", sys.basis.ground_energy);
    for (int j = 1; j <= 5; ++j)
        std::printf("delta_%d0 = %.12f\n", j, sys.basis.delta_of(j, 0));
    std::printf("delta_21 = %.12f\n", sys.basis.delta_of(2, 1));

    Matrix ground = Matrix::Zero(p.n_dressed, p.n_dressed);
    ground(0, 0) = 1.0;
    std::printf("ground <a+a> = %.12f\n", naive_photon_number(ground, sys));
    std::printf("ground flux  = %.3e\n", output_flux(ground, sys));

    ModelParams pd = p;
    pd.omega_d = sys.basis.delta_of(2, 0);
    System s2 = sys;
    s2.params = pd;
    const auto t0 = std::chrono::steady_clock::now();
    const G2ZeroResult r = g2_zero(s2);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("dt = %.6f, t_conv = %.1f, periods = %d, metric = %.2e\n",
                r.qss.dt, r.qss.t_converged, r.qss.periods_integrated,
                r.qss.convergence_metric);
    std::printf("flux = %.6e, g2(0) at delta_20 = %.4f   [%.1f s]\n", r.flux,
                r.g2, secs);
    return 0;
}
