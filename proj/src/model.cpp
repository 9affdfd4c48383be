#include "usc/model.hpp"

#include <cmath>
#include <sstream>

namespace usc {

namespace {

// kron(A, B) with A the slow (TLS) factor under TLS-major ordering.
Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace

void ModelParams::validate() const {
    std::ostringstream why;
    if (!(omega0 > 0)) why << "omega0 must be > 0; ";
    if (!(omega_x > 0)) why << "omega_x must be > 0; ";
    if (g < 0) why << "g must be >= 0; ";
    if (Omega < 0) why << "Omega must be >= 0; ";
    if (gamma_a < 0 || gamma_x < 0 || gamma_deph < 0) why << "damping rates must be >= 0; ";
    if (theta < 0 || theta > M_PI) why << "theta must lie in [0, pi]; ";
    if (n_fock < 2) why << "n_fock must be >= 2; ";
    if (n_dressed < 2 || n_dressed > 2 * n_fock)
        why << "n_dressed must lie in [2, 2*n_fock]; ";
    const std::string msg = why.str();
    if (!msg.empty()) throw ConfigError("invalid model parameters: " + msg);
}

OperatorSet build_operators(int n_fock) {
    if (n_fock < 2) throw ConfigError("build_operators: n_fock must be >= 2");

    const Eigen::Index nf = n_fock;
    Matrix a_f = Matrix::Zero(nf, nf);
    for (Eigen::Index n = 1; n < nf; ++n) a_f(n - 1, n) = std::sqrt(double(n));
    const Matrix id_f = Matrix::Identity(nf, nf);

    // TLS basis order (|g>, |e>): sigma_z = diag(-1, +1), sigma+ = |e><g|.
    Matrix sp(2, 2), sm(2, 2), sx(2, 2), sy(2, 2), sz(2, 2);
    sp << 0, 0, 1, 0;
    sm << 0, 1, 0, 0;
    sx << 0, 1, 1, 0;
    sy << 0, Complex(0, 1), Complex(0, -1), 0;
    sz << -1, 0, 0, 1;
    const Matrix id_2 = Matrix::Identity(2, 2);

    OperatorSet ops;
    ops.n_fock = n_fock;
    ops.a = kron(id_2, a_f);
    ops.a_dag = ops.a.adjoint();
    ops.sigma_x = kron(sx, id_f);
    ops.sigma_y = kron(sy, id_f);
    ops.sigma_z = kron(sz, id_f);
    ops.sigma_plus = kron(sp, id_f);
    ops.sigma_minus = kron(sm, id_f);
    ops.identity = Matrix::Identity(2 * nf, 2 * nf);
    return ops;
}

HamiltonianPair build_hamiltonian(const ModelParams& p, const OperatorSet& ops) {
    p.validate();
    HamiltonianPair h;
    const Matrix quad = ops.a + ops.a_dag;
    h.h0 = p.omega0 * (ops.a_dag * ops.a) +
           p.omega_x * (ops.sigma_plus * ops.sigma_minus) +
           p.g * quad * (std::cos(p.theta) * ops.sigma_z - std::sin(p.theta) * ops.sigma_x);
    h.h_drive_op = quad;
    return h;
}

HamiltonianPair build_hamiltonian(const ModelParams& p) {
    return build_hamiltonian(p, build_operators(p.n_fock));
}

Matrix parity_operator(const OperatorSet& ops) {
    const Eigen::Index nf = ops.n_fock;
    Matrix p = Matrix::Zero(2 * nf, 2 * nf);
    for (Eigen::Index s = 0; s < 2; ++s) {
        const double qs = (s == 0) ? -1.0 : 1.0; // <g|sigma_z|g> = -1
        for (Eigen::Index n = 0; n < nf; ++n)
            p(s * nf + n, s * nf + n) = qs * ((n % 2 == 0) ? 1.0 : -1.0);
    }
    return p;
}

} // namespace usc
