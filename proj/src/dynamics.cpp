#include "usc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "usc/parallel.hpp"

namespace usc {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double trace_real(const Matrix& m) { return m.trace().real(); }

Complex trace_of_product(const Matrix& a, const Matrix& b) {
    // Tr[a b] without forming the product.
    return (a.transpose().cwiseProduct(b)).sum();
}

// RK4 stepper over the structured generator. State is the n x n density
// matrix; applying the generator through matrix products is algebraically
// identical to l_static/l_drive acting on vec(rho).
class Stepper {
public:
    Stepper(const Superoperator& s, const ModelParams& p, bool full_cosine)
        : s_(s),
          omega_drive_(p.Omega),
          omega_d_(p.omega_d),
          full_cosine_(full_cosine),
          raising_(s.drive_lowering.adjoint()) {
        const int n = s.n;
        k1_.resize(n, n);
        k2_.resize(n, n);
        k3_.resize(n, n);
        k4_.resize(n, n);
        stage_.resize(n, n);
        drive_.resize(n, n);
        prod_.resize(n, n);
    }

    void derivative(const Matrix& rho, double t, Matrix& out) {
        s_.apply_static(rho, out);
        if (omega_drive_ == 0.0) return;
        if (full_cosine_) {
            drive_ = (omega_drive_ * std::cos(omega_d_ * t)) * s_.drive_op;
        } else {
            const Complex c =
                0.5 * omega_drive_ * std::exp(Complex(0.0, omega_d_ * t));
            drive_ = c * s_.drive_lowering;
            drive_.noalias() += std::conj(c) * raising_;
        }
        prod_.noalias() = drive_ * rho;
        prod_.noalias() -= rho * drive_;
        out.noalias() += Complex(0.0, -1.0) * prod_;
    }

    void step(Matrix& rho, double t, double dt) {
        derivative(rho, t, k1_);
        stage_ = rho + (0.5 * dt) * k1_;
        derivative(stage_, t + 0.5 * dt, k2_);
        stage_ = rho + (0.5 * dt) * k2_;
        derivative(stage_, t + 0.5 * dt, k3_);
        stage_ = rho + dt * k3_;
        derivative(stage_, t + dt, k4_);
        rho += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    }

private:
    const Superoperator& s_;
    double omega_drive_;
    double omega_d_;
    bool full_cosine_;
    Matrix raising_;
    Matrix k1_, k2_, k3_, k4_, stage_, drive_, prod_;
};

void check_state(const Matrix& rho, double t, const char* where) {
    const double tr = trace_real(rho);
    if (std::abs(tr - 1.0) > 1e-8) {
        std::ostringstream msg;
        msg << where << ": trace drift |Tr rho - 1| = " << std::abs(tr - 1.0)
            << " at t = " << t;
        throw NumericsError(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8) {
        std::ostringstream msg;
        msg << where << ": positivity violation, min eigenvalue = "
            << es.eigenvalues().minCoeff() << " at t = " << t;
        throw NumericsError(msg.str());
    }
}

double positive_gamma_min(const ModelParams& p) {
    double gm = 0.0;
    for (double g : {p.gamma_a, p.gamma_x})
        if (g > 0 && (gm == 0.0 || g < gm)) gm = g;
    return gm;
}

} // namespace

double step_bound(const Superoperator& superop, const ModelParams& params) {
    const double delta_max =
        superop.energies[superop.n - 1] - superop.energies[0];
    const double omega_fastest = std::max(delta_max, params.omega_d);
    return 0.02 * kTwoPi / omega_fastest;
}

double resolve_step(const Superoperator& superop, const ModelParams& params,
                    const NumericsOptions& opts) {
    const double bound = step_bound(superop, params);
    double target = opts.dt > 0 ? opts.dt : bound;
    if (target > bound * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "step-size violation: dt = " << target
            << " exceeds the bound " << bound;
        throw NumericsError(msg.str());
    }
    if (params.omega_d <= 0) return target;
    // Round so a drive period is an integer multiple of n_phase steps.
    const double period = kTwoPi / params.omega_d;
    const int n_phase = std::max(1, opts.n_phase);
    const long blocks =
        std::lround(std::ceil(period / (n_phase * target) - 1e-12));
    return period / double(n_phase * std::max(blocks, 1L));
}

Trajectory evolve(const Matrix& rho0, const Superoperator& superop,
                  const ModelParams& params, double t0, double t_end, double dt,
                  int store_stride) {
    if (dt <= 0) throw ConfigError("evolve: dt must be positive");
    const double bound = step_bound(superop, params);
    if (dt > bound * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "step-size violation: dt = " << dt << " exceeds the bound "
            << bound;
        throw NumericsError(msg.str());
    }
    if (t_end < t0) throw ConfigError("evolve: t_end before t0");
    if (store_stride < 1) store_stride = 1;

    const long steps = std::lround(std::ceil((t_end - t0) / dt - 1e-12));
    Stepper stepper(superop, params, /*full_cosine=*/false);

    Trajectory traj;
    const long stored = steps / store_stride + 1;
    traj.times.resize(stored);
    traj.states.reserve(size_t(stored));

    Matrix rho = rho0;
    long isto = 0;
    for (long k = 0; k <= steps; ++k) {
        const double t = t0 + double(k) * dt;
        if (k % store_stride == 0 && isto < stored) {
            check_state(rho, t, "evolve");
            traj.times[isto++] = t;
            traj.states.push_back(rho);
        }
        if (k < steps) stepper.step(rho, t, dt);
    }
    return traj;
}

QuasiSteadyState quasi_steady_state(const Superoperator& superop,
                                    const ModelParams& params,
                                    const NumericsOptions& opts) {
    params.validate();
    const double gm = positive_gamma_min(params);
    if (gm <= 0)
        throw ConfigError(
            "quasi_steady_state: needs gamma_a > 0 or gamma_x > 0");
    if (params.omega_d <= 0)
        throw ConfigError("quasi_steady_state: omega_d must be positive");

    const int n_phase = std::max(1, opts.n_phase);
    const double dt = resolve_step(superop, params, opts);
    const double period = kTwoPi / params.omega_d;
    const long steps_per_period = std::lround(period / dt);
    const long phase_stride = steps_per_period / n_phase;

    const double t_relax =
        std::max(opts.t_relax_factor / gm, opts.relax_periods * period);
    const long relax_periods = std::lround(std::ceil(t_relax / period));
    const double t_cap =
        std::max(opts.cap_factor / gm, t_relax + 20.0 * period);

    Stepper stepper(superop, params, opts.drive_full_cosine);
    const int n = superop.n;
    Matrix rho = Matrix::Zero(n, n);
    rho(0, 0) = 1.0;

    long step_count = 0;
    auto advance_one_period = [&](std::vector<Matrix>* samples) {
        for (long k = 0; k < steps_per_period; ++k) {
            if (samples && (k % phase_stride == 0)) {
                const size_t m = size_t(k / phase_stride);
                if (m < samples->size()) (*samples)[m] = rho;
            }
            stepper.step(rho, double(step_count) * dt, dt);
            ++step_count;
        }
    };

    for (long p = 0; p < relax_periods; ++p) advance_one_period(nullptr);

    const size_t n_samples = static_cast<size_t>(n_phase);
    std::vector<Matrix> previous(n_samples), current(n_samples);
    std::vector<double> sample_times(n_samples);
    advance_one_period(&previous);
    double metric = std::numeric_limits<double>::infinity();
    long periods = relax_periods + 1;
    for (;;) {
        const double t_period_start = double(step_count) * dt;
        for (int m = 0; m < n_phase; ++m)
            sample_times[size_t(m)] = t_period_start + double(m * phase_stride) * dt;
        advance_one_period(&current);
        ++periods;
        metric = 0.0;
        for (int m = 0; m < n_phase; ++m)
            metric = std::max(
                metric,
                (current[size_t(m)] - previous[size_t(m)]).cwiseAbs().maxCoeff());
        if (metric < opts.qss_tol) break;
        if (double(step_count) * dt > t_cap) {
            std::ostringstream msg;
            msg << "quasi-steady state did not converge: metric = " << metric
                << " after t = " << double(step_count) * dt
                << " (cap " << t_cap
                << "); damping too weak or drive too strong";
            throw NonConvergence(msg.str());
        }
        std::swap(previous, current);
    }

    QuasiSteadyState qss;
    qss.phase_states = std::move(current);
    qss.phase_times.assign(sample_times.begin(), sample_times.end());
    qss.convergence_metric = metric;
    qss.t_converged = double(step_count) * dt;
    qss.periods_integrated = int(periods);
    qss.dt = dt;
    qss.averaged_state = Matrix::Zero(n, n);
    for (const auto& state : qss.phase_states) {
        check_state(state, qss.t_converged, "quasi_steady_state");
        qss.averaged_state += state;
    }
    qss.averaged_state /= double(n_phase);
    return qss;
}

RegressionResult regression_two_time(const Superoperator& superop,
                                     const ModelParams& params,
                                     const QuasiSteadyState& qss,
                                     const Matrix& left_op,
                                     const std::optional<Matrix>& right_op,
                                     const Matrix& mid_op, double tau_max,
                                     double tau_step,
                                     const NumericsOptions& opts,
                                     bool with_coherent) {
    const int n = superop.n;
    if (left_op.rows() != n || mid_op.rows() != n ||
        (right_op && right_op->rows() != n))
        throw ConfigError("regression_two_time: operator dimension mismatch");
    if (tau_max <= 0 || tau_step <= 0)
        throw ConfigError("regression_two_time: tau_max and tau_step must be positive");

    const double dt = qss.dt > 0 ? qss.dt : resolve_step(superop, params, opts);
    const long stride = std::max(1L, std::lround(tau_step / dt));
    const long n_rec = long(std::floor(tau_max / (double(stride) * dt) + 1e-9)) + 1;
    const int n_phase = int(qss.phase_states.size());

    const size_t n_seeds = static_cast<size_t>(n_phase);
    std::vector<Eigen::VectorXcd> values(n_seeds);
    std::vector<Eigen::VectorXcd> coherent(n_seeds);

    parallel_for(n_phase, opts.threads, [&](int i) {
        Stepper stepper(superop, params, opts.drive_full_cosine);
        const Matrix& rho_i = qss.phase_states[size_t(i)];
        Matrix sigma = right_op ? Matrix((*right_op) * rho_i * left_op)
                                : Matrix(rho_i * left_op);
        Matrix rho_run = rho_i;
        const Complex m_left = trace_of_product(left_op, rho_i);

        Eigen::VectorXcd vals(n_rec), cohs;
        if (with_coherent) cohs.resize(n_rec);
        double t = qss.phase_times[size_t(i)];
        for (long m = 0; m < n_rec; ++m) {
            vals[m] = trace_of_product(mid_op, sigma);
            if (with_coherent)
                cohs[m] = m_left * trace_of_product(mid_op, rho_run);
            if (m + 1 < n_rec) {
                for (long k = 0; k < stride; ++k) {
                    stepper.step(sigma, t, dt);
                    if (with_coherent) stepper.step(rho_run, t, dt);
                    t += dt;
                }
            }
        }
        values[size_t(i)] = std::move(vals);
        if (with_coherent) coherent[size_t(i)] = std::move(cohs);
    });

    RegressionResult result;
    result.tau.resize(n_rec);
    for (long m = 0; m < n_rec; ++m) result.tau[m] = double(m * stride) * dt;
    result.values = Eigen::VectorXcd::Zero(n_rec);
    for (int i = 0; i < n_phase; ++i) result.values += values[size_t(i)];
    result.values /= double(n_phase);
    if (with_coherent) {
        result.coherent = Eigen::VectorXcd::Zero(n_rec);
        for (int i = 0; i < n_phase; ++i) result.coherent += coherent[size_t(i)];
        result.coherent /= double(n_phase);
    }
    return result;
}

} // namespace usc
