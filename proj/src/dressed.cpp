#include "usc/dressed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace usc {

DressedBasis diagonalize(const Matrix& h0, const OperatorSet& ops, int n_dressed,
                         double degeneracy_tol) {
    const Eigen::Index dim = h0.rows();
    if (h0.cols() != dim) throw ConfigError("diagonalize: h0 not square");
    if (n_dressed < 2 || n_dressed > dim)
        throw ConfigError("diagonalize: n_dressed out of range");
    const double scale = std::max(1.0, h0.cwiseAbs().maxCoeff());
    if ((h0 - h0.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ConfigError("diagonalize: h0 is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(h0);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "eigensolver failed on a " << dim << "x" << dim
            << " Hamiltonian (max |h0| = " << scale << ")";
        throw NumericsError(msg.str());
    }

    Eigen::VectorXd evals = solver.eigenvalues(); // ascending
    Matrix evecs = solver.eigenvectors();

    // Tie-break within degenerate groups: descending |<j|P|j>|, then the
    // dominant bare-basis component index. Keeps tables deterministic at g=0
    // and at the theta = pi/2 level crossings.
    const Matrix parity = parity_operator(ops);
    std::vector<Eigen::Index> order(dim);
    std::iota(order.begin(), order.end(), 0);
    Eigen::Index lo = 0;
    while (lo < dim) {
        Eigen::Index hi = lo + 1;
        while (hi < dim && evals[hi] - evals[lo] <= degeneracy_tol) ++hi;
        if (hi - lo > 1) {
            std::sort(order.begin() + lo, order.begin() + hi,
                      [&](Eigen::Index ia, Eigen::Index ib) {
                          const double pa = std::abs((evecs.col(ia).adjoint() * parity * evecs.col(ia))(0).real());
                          const double pb = std::abs((evecs.col(ib).adjoint() * parity * evecs.col(ib))(0).real());
                          if (std::abs(pa - pb) > 1e-9) return pa > pb;
                          Eigen::Index da, db;
                          evecs.col(ia).cwiseAbs().maxCoeff(&da);
                          evecs.col(ib).cwiseAbs().maxCoeff(&db);
                          return da < db;
                      });
        }
        lo = hi;
    }

    DressedBasis basis;
    basis.n_dressed = n_dressed;
    basis.bare_dim = dim;
    basis.energies.resize(n_dressed);
    basis.states.resize(dim, n_dressed);
    for (int j = 0; j < n_dressed; ++j) {
        basis.energies[j] = evals[order[j]];
        Vector col = evecs.col(order[j]);
        Eigen::Index imax;
        col.cwiseAbs().maxCoeff(&imax);
        const Complex phase = col[imax] / std::abs(col[imax]);
        basis.states.col(j) = col * std::conj(phase);
    }
    basis.ground_energy = basis.energies[0];

    basis.delta.resize(n_dressed, n_dressed);
    for (int k = 0; k < n_dressed; ++k)
        for (int j = 0; j < n_dressed; ++j)
            basis.delta(k, j) = basis.energies[k] - basis.energies[j];

    const Matrix quad_a = Complex(0, -1) * (ops.a - ops.a_dag);
    const Matrix quad_x = Complex(0, -1) * (ops.sigma_minus - ops.sigma_plus);
    basis.c_elems_a = basis.states.adjoint() * quad_a * basis.states;
    basis.c_elems_x = basis.states.adjoint() * quad_x * basis.states;
    basis.x_elems = basis.c_elems_a; // X = -i(a - a†) with X0 = 1
    basis.q_elems = basis.states.adjoint() * (ops.a + ops.a_dag) * basis.states;
    basis.sz_diag = (basis.states.adjoint() * ops.sigma_z * basis.states)
                        .diagonal()
                        .real();
    return basis;
}

std::vector<int> parity_labels(const DressedBasis& basis, const OperatorSet& ops) {
    const Matrix parity = parity_operator(ops);
    std::vector<int> labels(basis.n_dressed);
    for (int j = 0; j < basis.n_dressed; ++j) {
        const double pj =
            (basis.states.col(j).adjoint() * parity * basis.states.col(j))(0).real();
        if (std::abs(pj) < 0.99) {
            std::ostringstream msg;
            msg << "level " << j << " is not a parity eigenstate (<P> = " << pj
                << "); parity labels need theta = pi/2 or g = 0";
            throw NotParityEigenstate(msg.str());
        }
        labels[j] = pj > 0 ? 1 : -1;
    }
    return labels;
}

Matrix positive_frequency_part(const DressedBasis& basis) {
    const int n = basis.n_dressed;
    Matrix xdot_plus = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            const double dkj = basis.delta(k, j);
            if (dkj <= kDegeneracyTol) continue;
            xdot_plus(j, k) = Complex(0, -1) * dkj * basis.x_elems(j, k);
        }
    return xdot_plus;
}

SpectrumSweep spectrum_sweep(ModelParams p, const Eigen::VectorXd& g_grid, int L,
                             bool relative) {
    if (g_grid.size() == 0) throw ConfigError("spectrum_sweep: empty g grid");
    for (Eigen::Index i = 1; i < g_grid.size(); ++i)
        if (g_grid[i] < g_grid[i - 1])
            throw ConfigError("spectrum_sweep: g grid must ascend");
    if (L < 1 || L > 2 * p.n_fock)
        throw ConfigError("spectrum_sweep: level count out of range");

    const OperatorSet ops = build_operators(p.n_fock);
    SpectrumSweep sweep;
    sweep.g_grid = g_grid;
    sweep.theta = p.theta;
    sweep.relative = relative;
    sweep.levels.resize(g_grid.size(), L);
    for (Eigen::Index i = 0; i < g_grid.size(); ++i) {
        p.g = g_grid[i];
        const HamiltonianPair h = build_hamiltonian(p, ops);
        const DressedBasis basis = diagonalize(h.h0, ops, std::max(L, 2));
        for (int l = 0; l < L; ++l)
            sweep.levels(i, l) =
                basis.energies[l] - (relative ? basis.ground_energy : 0.0);
    }
    return sweep;
}

} // namespace usc
