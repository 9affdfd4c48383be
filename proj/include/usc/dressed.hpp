// dressed.hpp — Eigenbasis of the static Hamiltonian with transition tables,
// parity labels, and the positive-frequency part of the output field.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "usc/model.hpp"

namespace usc {

// Eigenvalue ties below this spacing (in omega0 units) are treated as
// degenerate, both for sorting and for transition weights.
inline constexpr double kDegeneracyTol = 1e-10;

struct DressedBasis {
    Eigen::VectorXd energies; // ascending, absolute
    double ground_energy{};
    Matrix states;            // bare-basis eigenvectors, one column per level
    Eigen::MatrixXd delta;    // delta(k, j) = energies[k] - energies[j]
    Matrix x_elems;           // X_jk = <j|X|k>, X = -i(a - a†), X0 = 1
    Matrix c_elems_a;         // C^a_jk = -i<j|(a - a†)|k>  (equals x_elems)
    Matrix c_elems_x;         // C^x_jk = -i<j|(s- - s+)|k>
    Matrix q_elems;           // <j|(a + a†)|k>, the dressed drive operator
    Eigen::VectorXd sz_diag;  // <j|sigma_z|j>, used by the dephasing channel
    int n_dressed{};
    Eigen::Index bare_dim{};

    double delta_of(int k, int j) const { return energies[k] - energies[j]; }
};

// Lowest n_dressed eigenpairs of h0, sorted ascending. Ties (within degeneracy_tol)
// are ordered by descending |<j|P|j>|, then by the dominant bare-basis
// component index; each eigenvector's global phase makes its largest
// component real positive. Throws NumericsError if the eigensolver fails.
DressedBasis diagonalize(const Matrix& h0, const OperatorSet& ops, int n_dressed,
                         double degeneracy_tol = kDegeneracyTol);

// p_j = <j|P|j> rounded to ±1. Throws NotParityEigenstate when any kept level
// has |<j|P|j>| < 0.99 (theta away from pi/2 with g > 0).
std::vector<int> parity_labels(const DressedBasis& basis, const OperatorSet& ops);

// Xdot+ = -i sum_{j, k>j} Delta_kj X_jk |j><k| in the dressed basis: strictly
// upper triangular, annihilates the ground state. Degenerate pairs drop out
// (zero weight). Xdot- is its conjugate transpose.
Matrix positive_frequency_part(const DressedBasis& basis);

struct SpectrumSweep {
    Eigen::VectorXd g_grid;
    Eigen::MatrixXd levels; // one row per g, one column per level
    double theta{};
    bool relative{};
};

// Lowest L eigenvalues along a coupling sweep, optionally referenced to each
// point's ground energy.
SpectrumSweep spectrum_sweep(ModelParams p, const Eigen::VectorXd& g_grid, int L,
                             bool relative = true);

} // namespace usc
