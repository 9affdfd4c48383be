#include "usc/dissipation.hpp"

#include <cmath>

namespace usc {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Column-stacked vec convention: vec(A rho B) = (B^T kron A) vec(rho).
Matrix commutator_superop(const Matrix& h) {
    const Eigen::Index n = h.rows();
    const Matrix id = Matrix::Identity(n, n);
    return Complex(0, -1) * (kron(id, h) - kron(h.transpose(), id));
}

Matrix dissipator_superop(const Matrix& o) {
    const Eigen::Index n = o.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix oo = o.adjoint() * o;
    return kron(o.conjugate(), o) -
           0.5 * (kron(oo.transpose(), id) + kron(id, oo));
}

} // namespace

RateTable relaxation_rates(const DressedBasis& basis, Channel channel,
                           double gamma_c) {
    if (gamma_c < 0) throw ConfigError("relaxation_rates: negative gamma");
    if (channel == Channel::dephasing)
        throw ConfigError("relaxation_rates: use dephasing_rates for dephasing");

    const Matrix& c_elems =
        (channel == Channel::cavity) ? basis.c_elems_a : basis.c_elems_x;

    RateTable table;
    table.channel = channel;
    const int n = basis.n_dressed;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            const double dkj = basis.delta(k, j); // in omega0 units
            if (dkj <= kDegeneracyTol) continue;
            table.transitions.push_back(
                {j, k, gamma_c * dkj * std::norm(c_elems(j, k))});
        }
    return table;
}

RateTable dephasing_rates(const DressedBasis& basis, double gamma_deph,
                          int power) {
    if (gamma_deph < 0) throw ConfigError("dephasing_rates: negative gamma");
    if (power != 1 && power != 2)
        throw ConfigError("dephasing_rates: power must be 1 or 2");

    RateTable table;
    table.channel = Channel::dephasing;
    if (gamma_deph == 0.0) return table; // empty table, generator unchanged

    const int n = basis.n_dressed;
    table.level_rates.resize(n);
    for (int j = 0; j < n; ++j) {
        const double sz = std::abs(basis.sz_diag[j]);
        table.level_rates[j] = gamma_deph * (power == 1 ? sz : sz * sz);
    }
    return table;
}

std::vector<RateTable> standard_rate_tables(const DressedBasis& basis,
                                            const ModelParams& params,
                                            int dephasing_power) {
    std::vector<RateTable> tables;
    tables.push_back(relaxation_rates(basis, Channel::cavity, params.gamma_a));
    tables.push_back(relaxation_rates(basis, Channel::qubit, params.gamma_x));
    if (params.gamma_deph > 0)
        tables.push_back(dephasing_rates(basis, params.gamma_deph, dephasing_power));
    return tables;
}

void Superoperator::apply_static(const Matrix& rho, Matrix& out) const {
    out = lambda.cwiseProduct(rho);
    out.diagonal().noalias() += pop_gain * rho.diagonal();
}

Superoperator assemble_liouvillian(const DressedBasis& basis,
                                   const std::vector<RateTable>& tables,
                                   const ModelParams& params) {
    params.validate();
    const int n = basis.n_dressed;
    for (const auto& t : tables) {
        for (const auto& tr : t.transitions)
            if (tr.j < 0 || tr.k >= n || tr.k <= tr.j)
                throw ConfigError("assemble_liouvillian: transition outside basis");
        if (t.level_rates.size() != 0 && t.level_rates.size() != n)
            throw ConfigError("assemble_liouvillian: dephasing table size mismatch");
    }

    Superoperator s;
    s.n = n;
    s.dim = Eigen::Index(n) * n;
    s.energies = basis.energies;
    s.drive_op = basis.q_elems;
    s.drive_lowering = s.drive_op.triangularView<Eigen::StrictlyUpper>();

    // Structured form: out-widths per level, gain terms on the diagonal, and
    // the elementwise coefficient matrix.
    Eigen::VectorXd width = Eigen::VectorXd::Zero(n); // relaxation out-rate
    Eigen::VectorXd deph = Eigen::VectorXd::Zero(n);
    s.pop_gain = Eigen::MatrixXd::Zero(n, n);
    for (const auto& t : tables) {
        for (const auto& tr : t.transitions) {
            width[tr.k] += tr.rate;
            s.pop_gain(tr.j, tr.k) += tr.rate;
        }
        if (t.level_rates.size() == n) deph += t.level_rates;
    }
    // Dephasing jump |j><j|: coherence decay (G_j + G_k)/2, no net population
    // flow; the diagonal gain below cancels the loss folded into lambda.
    s.pop_gain.diagonal() += deph;

    s.lambda.resize(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            s.lambda(j, k) =
                Complex(0, -(basis.energies[j] - basis.energies[k])) -
                0.5 * (width[j] + width[k]) - 0.5 * (deph[j] + deph[k]);

    // Dense Liouville-space matrices (diagnostics, spectral analysis, tests).
    Eigen::VectorXd rel_energies = basis.energies.array() - basis.ground_energy;
    s.l_static = commutator_superop(rel_energies.cast<Complex>().asDiagonal());
    for (const auto& t : tables) {
        for (const auto& tr : t.transitions) {
            Matrix jump = Matrix::Zero(n, n);
            jump(tr.j, tr.k) = 1.0;
            s.l_static.noalias() += tr.rate * dissipator_superop(jump);
        }
        if (t.level_rates.size() == n)
            for (int j = 0; j < n; ++j) {
                Matrix jump = Matrix::Zero(n, n);
                jump(j, j) = 1.0;
                s.l_static.noalias() += t.level_rates[j] * dissipator_superop(jump);
            }
    }
    s.l_drive = commutator_superop(s.drive_op);
    return s;
}

} // namespace usc
