#include "usc/circuit.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace usc::circuit {

void CircuitParams::validate() const {
    std::ostringstream why;
    if (!(delta_gap > 0)) why << "delta_gap must be > 0; ";
    if (!(i_p > 0)) why << "i_p must be > 0; ";
    for (double f : mode_freqs)
        if (!(f > 0)) why << "mode frequencies must be > 0; ";
    for (double g : mode_couplings)
        if (!(g > 0)) why << "mode couplings must be > 0; ";
    if (!(mode_freqs[0] < mode_freqs[1] && mode_freqs[1] < mode_freqs[2]))
        why << "mode frequencies must ascend; ";
    const std::string msg = why.str();
    if (!msg.empty()) throw ConfigError("invalid circuit parameters: " + msg);
}

double qubit_frequency(const CircuitParams& cp, double dphi_freq) {
    return std::hypot(cp.delta_gap, dphi_freq);
}

MixingAngle mixing_angle(const CircuitParams& cp, double dphi_freq) {
    const double wq = qubit_frequency(cp, dphi_freq);
    return {dphi_freq / wq, cp.delta_gap / wq};
}

double flux_to_freq(const CircuitParams& cp, double dphi_milli_phi0) {
    return cp.i_p * dphi_milli_phi0;
}

double uncoupled_level(const CircuitParams& cp, double dphi_freq,
                       const std::array<int, 3>& occupations, QubitState qs) {
    double e = 0.5 * double(int(qs)) * qubit_frequency(cp, dphi_freq);
    for (int l = 0; l < 3; ++l)
        e += cp.mode_freqs[size_t(l)] * (occupations[size_t(l)] + 0.5);
    return e;
}

double mode_mixing_coupling(const CircuitParams& cp, double dphi_freq) {
    const MixingAngle ang = mixing_angle(cp, dphi_freq);
    const double wq = qubit_frequency(cp, dphi_freq);
    return cp.mode_couplings[0] * cp.mode_couplings[1] * ang.cos_theta *
           ang.sin_theta / (wq + cp.mode_freqs[1]);
}

SingleModeBound max_mixing_angle(const CircuitParams& cp, int grid_points) {
    cp.validate();
    const double w_res = cp.mode_freqs[1] - cp.mode_freqs[0];
    if (w_res <= cp.delta_gap) {
        std::ostringstream msg;
        msg << "mode splitting " << w_res
            << " GHz never reaches the qubit gap " << cp.delta_gap
            << " GHz; the single-mode bound is undefined";
        throw ResonanceUnreachable(msg.str());
    }

    SingleModeBound bound;
    bound.dphi_freq_res = std::sqrt(w_res * w_res - cp.delta_gap * cp.delta_gap);
    bound.cos_theta_max = bound.dphi_freq_res / w_res;

    if (grid_points > 1) {
        bound.margin.reserve(size_t(grid_points));
        for (int i = 0; i < grid_points; ++i) {
            MarginRow row;
            row.dphi_freq =
                bound.dphi_freq_res * double(i) / double(grid_points); // excludes the crossing
            row.cos_theta = mixing_angle(cp, row.dphi_freq).cos_theta;
            row.j_coupling = mode_mixing_coupling(cp, row.dphi_freq);
            row.delta_e =
                uncoupled_level(cp, row.dphi_freq, {1, 0, 0}, QubitState::up) -
                uncoupled_level(cp, row.dphi_freq, {0, 1, 0}, QubitState::down);
            row.margin_ratio = row.j_coupling > 0
                                   ? std::abs(row.delta_e) / row.j_coupling
                                   : std::numeric_limits<double>::infinity();
            bound.margin.push_back(row);
        }
    }
    return bound;
}

} // namespace usc::circuit
