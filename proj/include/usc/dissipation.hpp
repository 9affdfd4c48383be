// dissipation.hpp — Dressed-state dissipators and the Liouville-space
// generator.
//
// The environment is held at T = 0: relaxation runs downward only, with
// rates Gamma^{jk}_c = gamma_c (Delta_kj / omega0) |C^c_jk|^2 for k > j
// (constant bath spectral density, coupling strength^2 proportional to the
// transition frequency). Dephasing uses per-level jumps |j><j| at rate
// gamma_deph |<j|sigma_z|j>|^power. Lamb shifts are omitted.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "usc/dressed.hpp"

namespace usc {

enum class Channel { cavity, qubit, dephasing };

struct RateTable {
    Channel channel{};

    struct Transition {
        int j{}; // final level
        int k{}; // initial level, k > j; jump operator |j><k|
        double rate{};
    };
    std::vector<Transition> transitions; // relaxation channels only

    Eigen::VectorXd level_rates; // dephasing only: rate per level, jump |j><j|
};

// Downward relaxation rates for channel c = a (cavity) or sigma- (qubit).
// Pairs with Delta_kj at or below the degeneracy tolerance get rate zero.
RateTable relaxation_rates(const DressedBasis& basis, Channel channel,
                           double gamma_c);

// Dephasing rates gamma_deph |<j|sigma_z|j>|^power. The magnitude keeps every
// dissipator completely positive; power in {1, 2} selects the model variant.
RateTable dephasing_rates(const DressedBasis& basis, double gamma_deph,
                          int power = 1);

struct Superoperator {
    // Liouville-space matrices acting on column-stacked density matrices.
    Matrix l_static; // -i[diag(w_j), .] plus all dissipators
    Matrix l_drive;  // -i[(a + a†)_dressed, .]; scale by Omega cos(w_d t)
    Eigen::Index dim{}; // n_dressed^2

    // Hilbert-space form of the same generator, used by the integrator. The
    // matrix-product application is algebraically identical to l_static /
    // l_drive acting on vec(rho) and much cheaper.
    int n{}; // n_dressed
    Eigen::VectorXd energies;
    Matrix drive_op;       // (a + a†) in the dressed basis
    Matrix drive_lowering; // strictly upper-triangular part of drive_op
    Matrix lambda;         // elementwise part: -i(w_j - w_k) - (W_j + W_k)/2
    Eigen::MatrixXd pop_gain; // gain terms feeding the diagonal: d(rho_jj) += sum_k pop_gain(j,k) rho_kk

    // d(rho)/dt from the static part alone (no drive).
    void apply_static(const Matrix& rho, Matrix& out) const;
};

// l_static = -i[diag(w_j), .] + sum over tables of rate * D[jump] with
// D[O]rho = O rho O† - (O†O rho + rho O†O)/2. Throws ConfigError when a
// table's dimensions do not match the basis.
Superoperator assemble_liouvillian(const DressedBasis& basis,
                                   const std::vector<RateTable>& tables,
                                   const ModelParams& params);

// Convenience: cavity + qubit relaxation plus dephasing (when nonzero).
std::vector<RateTable> standard_rate_tables(const DressedBasis& basis,
                                            const ModelParams& params,
                                            int dephasing_power = 1);

} // namespace usc
