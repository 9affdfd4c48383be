// observables.hpp — Output photon flux, intensity correlations g2(0) and
// g2(tau), and the incoherent emission spectrum, all built from the
// positive-frequency field operator in the dressed basis.
//
// Fluxes are reported in normalized units (field prefactor and X0 set to 1);
// both cancel in g2 and in the unit-peak spectrum.

#pragma once

#include <string>

#include <Eigen/Dense>

#include "usc/dynamics.hpp"

namespace usc {

struct CorrelationResult {
    Eigen::VectorXd grid;   // tau (time) or omega (frequency)
    Eigen::VectorXd values;
    double normalization{}; // flux^2 for g2; integrated power for spectra
    ModelParams params;
    int n_phase{};
    double dt{};
};

// One fully assembled parameter point. Immutable after construction and safe
// to share across threads; the drive frequency enters only at integration
// time, so one System serves a whole omega_d sweep.
struct System {
    ModelParams params;
    OperatorSet ops;
    HamiltonianPair ham;
    DressedBasis basis;
    Superoperator superop;
    Matrix xdot_plus, xdot_minus;
    Matrix number_op; // a†a in the dressed basis
};

System build_system(const ModelParams& params, const NumericsOptions& opts = {});

// Tr[Xdot- Xdot+ rho]: detected output flux. Zero on the ground state for
// every coupling strength.
double output_flux(const Matrix& rho, const System& sys);

// Tr[a†a rho]: the bare photon number, nonzero even in the ground state once
// counter-rotating terms dress it. Kept as the contrast to output_flux.
double naive_photon_number(const Matrix& rho, const System& sys);

struct G2ZeroResult {
    double g2{};
    double flux{};
    QuasiSteadyState qss;
};

// g2(0) = <X- X- X+ X+> / <X- X+>^2 over the phase-averaged quasi-steady
// state. Throws DenominatorUnderflow when the flux vanishes (undriven
// system). Warns (stderr) when the drive is not weak.
G2ZeroResult g2_zero(const System& sys, const NumericsOptions& opts = {});
double g2_zero(const ModelParams& params, const NumericsOptions& opts = {});

// g2(0) over a drive-frequency grid; points are independent and computed in
// parallel on `threads` workers, results ordered by grid index.
CorrelationResult g2_zero_sweep(const ModelParams& params,
                                const Eigen::VectorXd& omega_d_grid,
                                const NumericsOptions& opts = {},
                                int threads = 1);

// Normalized g2(tau) on a uniform grid via the sandwich regression form.
// tau_step <= 0 selects 0.1/omega0; tau_max <= 0 selects 5/gamma_min.
CorrelationResult g2_tau(const System& sys, double tau_max, double tau_step,
                         const NumericsOptions& opts = {});
CorrelationResult g2_tau(const ModelParams& params, double tau_max = 0,
                         double tau_step = 0, const NumericsOptions& opts = {});

// Incoherent emission spectrum: S(w) = 2 Re \int_0^{tau_max} [<X-(t) X+(t+tau)>
// - <X-(t)><X+(t+tau)>] e^{i w tau} dtau, phase-averaged, normalized to unit
// peak. tau_max <= 0 selects 10/gamma_min; plain truncation, no window.
CorrelationResult fluorescence_spectrum(const System& sys,
                                        const Eigen::VectorXd& omega_grid,
                                        double tau_max = 0, double tau_step = 0,
                                        const NumericsOptions& opts = {});
CorrelationResult fluorescence_spectrum(const ModelParams& params,
                                        const Eigen::VectorXd& omega_grid,
                                        double tau_max = 0, double tau_step = 0,
                                        const NumericsOptions& opts = {});

// Smallest positive damping rate; throws ConfigError if all are zero.
double gamma_min(const ModelParams& params);

// "delta_10" / "delta_20" / "delta_21" -> dressed transition frequency;
// numeric strings pass through. Used for drive-frequency tokens in configs.
double resolve_frequency_token(const std::string& token, const DressedBasis& basis);

} // namespace usc
