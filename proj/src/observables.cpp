#include "usc/observables.hpp"

#include <cmath>
#include <iostream>

#include "usc/parallel.hpp"

namespace usc {

namespace {

Complex trace_of_product(const Matrix& a, const Matrix& b) {
    return (a.transpose().cwiseProduct(b)).sum();
}

void warn_if_strong_drive(const ModelParams& p) {
    const double gm = gamma_min(p);
    if (p.Omega > 1e-2 * gm)
        std::cerr << "warning: drive Omega = " << p.Omega
                  << " is not weak against gamma_min = " << gm
                  << "; correlation results leave the linear-response regime\n";
}

struct FluxStats {
    double flux{};
    double pair{};
};

FluxStats phase_averaged_moments(const System& sys, const QuasiSteadyState& qss) {
    const Matrix m2 = sys.xdot_minus * sys.xdot_plus;
    const Matrix m4 = sys.xdot_minus * m2 * sys.xdot_plus;
    FluxStats out;
    for (const auto& rho : qss.phase_states) {
        out.flux += trace_of_product(m2, rho).real();
        out.pair += trace_of_product(m4, rho).real();
    }
    out.flux /= double(qss.phase_states.size());
    out.pair /= double(qss.phase_states.size());
    return out;
}

double checked_flux_squared(double flux) {
    if (!(flux > 1e-150))
        throw DenominatorUnderflow(
            "output flux vanishes; g2 is undefined for an undriven system");
    return flux * flux;
}

} // namespace

double gamma_min(const ModelParams& p) {
    double gm = 0.0;
    for (double g : {p.gamma_a, p.gamma_x})
        if (g > 0 && (gm == 0.0 || g < gm)) gm = g;
    if (gm <= 0)
        throw ConfigError("gamma_min: no positive damping rate configured");
    return gm;
}

double resolve_frequency_token(const std::string& token,
                               const DressedBasis& basis) {
    if (token == "delta_10") return basis.delta_of(1, 0);
    if (token == "delta_20") return basis.delta_of(2, 0);
    if (token == "delta_21") return basis.delta_of(2, 1);
    try {
        size_t pos = 0;
        const double value = std::stod(token, &pos);
        if (pos == token.size()) return value;
    } catch (const std::exception&) {
    }
    throw ConfigError("unknown frequency token: '" + token +
                      "' (expected delta_10, delta_20, delta_21 or a number)");
}

System build_system(const ModelParams& params, const NumericsOptions& opts) {
    params.validate();
    System sys;
    sys.params = params;
    sys.ops = build_operators(params.n_fock);
    sys.ham = build_hamiltonian(params, sys.ops);
    sys.basis = diagonalize(sys.ham.h0, sys.ops, params.n_dressed,
                            kDegeneracyTol * params.omega0);
    sys.superop = assemble_liouvillian(
        sys.basis, standard_rate_tables(sys.basis, params, opts.dephasing_power),
        params);
    sys.xdot_plus = positive_frequency_part(sys.basis);
    sys.xdot_minus = sys.xdot_plus.adjoint();
    sys.number_op =
        sys.basis.states.adjoint() * (sys.ops.a_dag * sys.ops.a) * sys.basis.states;
    return sys;
}

double output_flux(const Matrix& rho, const System& sys) {
    const Matrix m2 = sys.xdot_minus * sys.xdot_plus;
    return trace_of_product(m2, rho).real();
}

double naive_photon_number(const Matrix& rho, const System& sys) {
    return trace_of_product(sys.number_op, rho).real();
}

G2ZeroResult g2_zero(const System& sys, const NumericsOptions& opts) {
    warn_if_strong_drive(sys.params);
    G2ZeroResult result;
    result.qss = quasi_steady_state(sys.superop, sys.params, opts);
    const FluxStats stats = phase_averaged_moments(sys, result.qss);
    result.flux = stats.flux;
    result.g2 = stats.pair / checked_flux_squared(stats.flux);
    return result;
}

double g2_zero(const ModelParams& params, const NumericsOptions& opts) {
    return g2_zero(build_system(params, opts), opts).g2;
}

CorrelationResult g2_zero_sweep(const ModelParams& params,
                                const Eigen::VectorXd& omega_d_grid,
                                const NumericsOptions& opts, int threads) {
    if (omega_d_grid.size() == 0)
        throw ConfigError("g2_zero_sweep: empty drive-frequency grid");
    warn_if_strong_drive(params);

    const System sys = build_system(params, opts); // omega_d enters only below
    CorrelationResult result;
    result.grid = omega_d_grid;
    result.values.resize(omega_d_grid.size());
    result.params = params;
    result.n_phase = opts.n_phase;

    NumericsOptions point_opts = opts;
    point_opts.threads = 1; // parallelism lives on the grid
    parallel_for(int(omega_d_grid.size()), threads, [&](int i) {
        ModelParams p = params;
        p.omega_d = omega_d_grid[i];
        const QuasiSteadyState qss =
            quasi_steady_state(sys.superop, p, point_opts);
        const FluxStats stats = phase_averaged_moments(sys, qss);
        result.values[i] = stats.pair / checked_flux_squared(stats.flux);
    });
    return result;
}

CorrelationResult g2_tau(const System& sys, double tau_max, double tau_step,
                         const NumericsOptions& opts) {
    warn_if_strong_drive(sys.params);
    const double gm = gamma_min(sys.params);
    if (tau_max <= 0) tau_max = 5.0 / gm;
    if (tau_step <= 0) tau_step = 0.1 / sys.params.omega0;

    const QuasiSteadyState qss = quasi_steady_state(sys.superop, sys.params, opts);
    const FluxStats stats = phase_averaged_moments(sys, qss);
    const double denom = checked_flux_squared(stats.flux);

    const Matrix mid = sys.xdot_minus * sys.xdot_plus;
    const RegressionResult raw = regression_two_time(
        sys.superop, sys.params, qss, sys.xdot_minus,
        std::optional<Matrix>(sys.xdot_plus), mid, tau_max, tau_step, opts);

    CorrelationResult result;
    result.grid = raw.tau;
    result.values = raw.values.real() / denom;
    result.normalization = denom;
    result.params = sys.params;
    result.n_phase = int(qss.phase_states.size());
    result.dt = qss.dt;
    return result;
}

CorrelationResult g2_tau(const ModelParams& params, double tau_max,
                         double tau_step, const NumericsOptions& opts) {
    return g2_tau(build_system(params, opts), tau_max, tau_step, opts);
}

CorrelationResult fluorescence_spectrum(const System& sys,
                                        const Eigen::VectorXd& omega_grid,
                                        double tau_max, double tau_step,
                                        const NumericsOptions& opts) {
    if (omega_grid.size() == 0)
        throw ConfigError("fluorescence_spectrum: empty frequency grid");
    warn_if_strong_drive(sys.params);
    const double gm = gamma_min(sys.params);
    if (tau_max <= 0) tau_max = 10.0 / gm;
    if (tau_step <= 0) tau_step = 0.05 / sys.params.omega0;

    const QuasiSteadyState qss = quasi_steady_state(sys.superop, sys.params, opts);
    const RegressionResult raw = regression_two_time(
        sys.superop, sys.params, qss, sys.xdot_minus, std::nullopt,
        sys.xdot_plus, tau_max, tau_step, opts, /*with_coherent=*/true);

    // Incoherent part: the phase-matched coherent product is removed before
    // the transform, else the drive line swamps everything.
    const Eigen::VectorXcd c_incoh = raw.values - raw.coherent;

    const Eigen::Index n_tau = raw.tau.size();
    const double dtau = n_tau > 1 ? raw.tau[1] - raw.tau[0] : 0.0;
    CorrelationResult result;
    result.grid = omega_grid;
    result.values.resize(omega_grid.size());
    for (Eigen::Index w = 0; w < omega_grid.size(); ++w) {
        Complex acc = 0.0;
        for (Eigen::Index m = 0; m < n_tau; ++m) {
            const double weight = (m == 0 || m == n_tau - 1) ? 0.5 : 1.0;
            acc += weight * c_incoh[m] *
                   std::exp(Complex(0.0, omega_grid[w] * raw.tau[m]));
        }
        result.values[w] = 2.0 * (acc * dtau).real();
    }

    // Integrated power before unit-peak scaling.
    double power = 0.0;
    for (Eigen::Index w = 0; w + 1 < omega_grid.size(); ++w)
        power += 0.5 * (result.values[w] + result.values[w + 1]) *
                 (omega_grid[w + 1] - omega_grid[w]);
    result.normalization = power;

    const double peak = result.values.maxCoeff();
    if (peak > 0) result.values /= peak;
    result.params = sys.params;
    result.n_phase = int(qss.phase_states.size());
    result.dt = qss.dt;
    return result;
}

CorrelationResult fluorescence_spectrum(const ModelParams& params,
                                        const Eigen::VectorXd& omega_grid,
                                        double tau_max, double tau_step,
                                        const NumericsOptions& opts) {
    return fluorescence_spectrum(build_system(params, opts), omega_grid, tau_max,
                                 tau_step, opts);
}

} // namespace usc
