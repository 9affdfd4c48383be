// circuit.hpp — Feasibility analysis for a flux-qubit / transmission-line
// implementation: flux-dependent qubit parameters, uncoupled multimode level
// diagram, second-order mode-mixing coupling, and the single-mode validity
// bound on the mixing angle.
//
// All frequencies are linear (GHz): qubit gap Delta/h, mode frequencies
// w_n/2pi, couplings g_n/2pi. Flux bias enters as the converted frequency
// f = 2 I_p dphi / h (GHz), which sidesteps flux-unit ambiguity; i_p holds
// the GHz-per-milli-flux-quantum conversion for convenience.

#pragma once

#include <array>
#include <vector>

#include "usc/errors.hpp"

namespace usc::circuit {

struct CircuitParams {
    double delta_gap{2.25};                            // sweet-spot gap, GHz
    double i_p{1.96608};                               // GHz per mPhi0
    std::array<double, 3> mode_freqs{2.782, 5.357, 7.777};     // GHz
    std::array<double, 3> mode_couplings{0.314, 0.636, 0.568}; // GHz

    void validate() const; // positive entries, ascending mode_freqs
};

struct MixingAngle {
    double cos_theta{};
    double sin_theta{};
};

// w_q/2pi = sqrt((Delta/h)^2 + f^2).
double qubit_frequency(const CircuitParams& cp, double dphi_freq);

// cos(theta) = f / w_q, sin(theta) = (Delta/h) / w_q.
MixingAngle mixing_angle(const CircuitParams& cp, double dphi_freq);

double flux_to_freq(const CircuitParams& cp, double dphi_milli_phi0);

enum class QubitState { down = -1, up = +1 };

// E/h = ±w_q/2 + sum_l w_l (n_l + 1/2). Only energy differences are
// meaningful; the half-splitting convention cancels in them.
double uncoupled_level(const CircuitParams& cp, double dphi_freq,
                       const std::array<int, 3>& occupations, QubitState qs);

// Second-order coupling between |up,100> and |down,010>:
// J = g1 g2 cos(theta) sin(theta) / (w_q + w_2), GHz.
double mode_mixing_coupling(const CircuitParams& cp, double dphi_freq);

struct MarginRow {
    double dphi_freq{};
    double cos_theta{};
    double j_coupling{};  // GHz
    double delta_e{};     // E(|up,100>) - E(|down,010>), GHz
    double margin_ratio{}; // |delta_e| / J
};

struct SingleModeBound {
    double cos_theta_max{};
    double dphi_freq_res{}; // flux frequency where the two states cross
    std::vector<MarginRow> margin; // sampled over [0, dphi_freq_res)
};

// The bound comes from the flux where |up,100> and |down,010> become
// resonant: cos_theta_max = sqrt(w_res^2 - (Delta/h)^2) / w_res with
// w_res = w_2 - w_1. Throws ResonanceUnreachable when w_2 - w_1 <= Delta/h.
SingleModeBound max_mixing_angle(const CircuitParams& cp, int grid_points = 201);

} // namespace usc::circuit
