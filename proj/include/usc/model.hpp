// model.hpp — Truncated operator algebra and system Hamiltonian of a driven
// TLS–cavity system with arbitrary-strength linear coupling.
//
// Basis ordering is TLS-major: |g,0>, |g,1>, ..., |g,n_fock-1>, |e,0>, ...
// All frequencies are in units of a reference frequency (conventionally the
// cavity frequency omega0 = 1); times in its inverse.
//
// The coupling is g (a + a†)(cos(theta) sigma_z - sin(theta) sigma_x). A
// sigma_y variant is intentionally not provided: it maps onto the sigma_x
// form under a rotation about z and adds nothing to the model.

#pragma once

#include <complex>

#include <Eigen/Dense>

#include "usc/errors.hpp"

namespace usc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct ModelParams {
    double omega0{1.0};     // cavity frequency (reference unit)
    double omega_x{1.0};    // TLS transition frequency
    double g{0.2};          // coupling strength
    double theta{0.93};     // mixing angle, radians, in [0, pi]
    double Omega{1e-4};     // drive amplitude
    double omega_d{1.0};    // drive frequency
    double gamma_a{1e-2};   // cavity damping rate
    double gamma_x{1e-2};   // TLS damping rate
    double gamma_deph{0.0}; // TLS dephasing rate
    int n_fock{20};         // Fock-space truncation
    int n_dressed{16};      // dressed-state truncation

    // Throws ConfigError on violated invariants.
    void validate() const;
};

struct OperatorSet {
    Matrix a, a_dag;
    Matrix sigma_x, sigma_y, sigma_z, sigma_plus, sigma_minus;
    Matrix identity;
    int n_fock{};

    Eigen::Index dim() const { return a.rows(); }
};

struct HamiltonianPair {
    Matrix h0;         // static Hamiltonian
    Matrix h_drive_op; // a + a†; the Omega cos(omega_d t) factor is applied at
                       // integration time
};

// Dense ladder and Pauli operators on the 2*n_fock product space.
// Requires n_fock >= 2.
OperatorSet build_operators(int n_fock);

HamiltonianPair build_hamiltonian(const ModelParams& p, const OperatorSet& ops);
HamiltonianPair build_hamiltonian(const ModelParams& p);

// Parity of the excitation number: P = sigma_z * exp(i pi a†a). Diagonal in
// the bare basis; commutes with h0 at theta = pi/2. Sign convention:
// <g,0|P|g,0> = -1 (only relative parities carry meaning).
Matrix parity_operator(const OperatorSet& ops);

} // namespace usc
