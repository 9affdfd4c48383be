// config.hpp — Run configuration: one experiment per invocation, parsed from
// a single JSON document. Physical quantities are in omega0 units except the
// circuit block (GHz).

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "usc/circuit.hpp"
#include "usc/dynamics.hpp"

namespace usc {

struct GridSpec {
    double start{};
    double stop{};
    int count{};
};

Eigen::VectorXd linspace(const GridSpec& spec);

struct RunConfig {
    std::string experiment; // spectrum | g2zero-sweep | g2tau | fluorescence |
                            // circuit-check | convergence | flux-demo
    ModelParams model;
    std::string omega_d_token; // "delta_10" etc.; empty when model.omega_d is numeric
    NumericsOptions numerics;

    // experiment grids
    GridSpec omega_d{0.7, 1.3, 241};   // g2zero-sweep drive frequencies
    GridSpec g{0.0, 0.5, 101};         // spectrum coupling sweep
    int levels{6};                     // spectrum levels per point
    std::vector<double> thetas;        // spectrum; empty = {model.theta}
    bool relative{true};               // spectrum energies relative to ground
    double tau_max{0.0};               // g2tau; 0 = 5/gamma_min
    double tau_step{0.0};              // g2tau; 0 = 0.1/omega0
    GridSpec omega{0.5, 1.5, 1001};    // fluorescence frequency grid
    double spectrum_tau_max{0.0};      // fluorescence; 0 = 10/gamma_min
    double spectrum_tau_step{0.0};     // fluorescence; 0 = 0.05/omega0
    GridSpec flux{0.0, 2.0, 201};      // circuit-check flux frequencies (GHz)
    GridSpec demo_g{0.0, 0.5, 51};     // flux-demo coupling grid

    struct Rung {
        int n_fock{};
        int n_dressed{};
        double dt{}; // 0 = step bound
    };
    std::vector<Rung> ladder; // convergence experiment

    circuit::CircuitParams circuit;

    std::string out_dir{"."};
    std::string prefix{"run"};
    int threads{0}; // 0 = hardware concurrency
};

// Parses and validates. experiment_cli, when nonempty, selects the experiment
// and must agree with the config's own "experiment" key if both are present.
// Throws ConfigError.
RunConfig load_config(const std::string& path, const std::string& experiment_cli = "");
RunConfig parse_config(const std::string& json_text, const std::string& experiment_cli = "");

} // namespace usc
