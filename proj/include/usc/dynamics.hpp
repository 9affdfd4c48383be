// dynamics.hpp — Fixed-step RK4 evolution under the periodically driven
// generator, quasi-steady-state extraction, and two-time correlators via the
// quantum regression theorem.
//
// The drive is RWA-filtered in the dressed basis: the lowering block (j, k>j)
// of (a + a†) carries (Omega/2) e^{+i w_d t} and the raising block its
// conjugate, so each term co-rotates with the transition it addresses. The
// unfiltered Omega cos(w_d t) (a + a†) drive is available behind
// drive_full_cosine for cross-checks.

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "usc/dissipation.hpp"

namespace usc {

struct NumericsOptions {
    double dt{0.0};          // 0 = integrator step bound; must not exceed it
    int n_phase{8};          // drive phases sampled per period
    double t_relax_factor{20.0};     // t_relax >= t_relax_factor / gamma_min
    double relax_periods{50.0};      // ... and >= relax_periods * 2pi/w_d
    double cap_factor{200.0};        // NonConvergence past cap_factor / gamma_min
    double qss_tol{1e-10};           // period-to-period convergence metric
    bool drive_full_cosine{false};
    int dephasing_power{1};
    int threads{1};          // phase seeds propagated in parallel
};

struct Trajectory {
    Eigen::VectorXd times;
    std::vector<Matrix> states;
};

struct QuasiSteadyState {
    std::vector<Matrix> phase_states; // sampled over one period
    std::vector<double> phase_times;  // absolute times of the samples
    Matrix averaged_state;            // uniform average of phase_states
    double convergence_metric{};      // last period-to-period distance
    double t_converged{};
    int periods_integrated{};
    double dt{};                      // step actually used
};

struct RegressionResult {
    Eigen::VectorXd tau;
    Eigen::VectorXcd values;   // phase-averaged Tr[mid_op sigma(tau)]
    Eigen::VectorXcd coherent; // phase-averaged Tr[left rho(t_i)] Tr[mid rho(t_i+tau)]
};

// Largest admissible step: 0.02 * 2pi / max(Delta_max, w_d).
double step_bound(const Superoperator& superop, const ModelParams& params);

// Resolves opts.dt against the bound (throws NumericsError when it exceeds
// it) and rounds so that a drive period is an integer multiple of n_phase steps.
double resolve_step(const Superoperator& superop, const ModelParams& params,
                    const NumericsOptions& opts);

// RK4 integration of d(rho)/dt = L(t) rho over [t0, t_end], storing every
// store_stride-th step. Stored states are checked for trace and positivity
// drift (1e-8) and a violation throws NumericsError.
Trajectory evolve(const Matrix& rho0, const Superoperator& superop,
                  const ModelParams& params, double t0, double t_end, double dt,
                  int store_stride = 1);

// Relax |0><0| to the periodic attractor, then sample n_phase equidistant
// drive phases per period until the period-to-period metric drops below
// qss_tol. Throws NonConvergence past the time cap.
QuasiSteadyState quasi_steady_state(const Superoperator& superop,
                                    const ModelParams& params,
                                    const NumericsOptions& opts = {});

// Quantum regression: per sampled phase t_i, seed
//   sigma(0) = right_op * rho(t_i) * left_op   (sandwich form), or
//   sigma(0) = rho(t_i) * left_op              (single-sided form),
// propagate under the full generator from phase t_i, record
// Tr[mid_op sigma(tau)] on a uniform tau grid (snapped to integer steps),
// and return the phase average. with_coherent additionally propagates
// rho(t_i) itself and records Tr[left rho(t_i)] * Tr[mid rho(t_i + tau)].
RegressionResult regression_two_time(const Superoperator& superop,
                                     const ModelParams& params,
                                     const QuasiSteadyState& qss,
                                     const Matrix& left_op,
                                     const std::optional<Matrix>& right_op,
                                     const Matrix& mid_op, double tau_max,
                                     double tau_step,
                                     const NumericsOptions& opts = {},
                                     bool with_coherent = false);

} // namespace usc
