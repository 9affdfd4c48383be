// experiments.hpp — Experiment orchestration: runs one configured experiment,
// emits CSV data files plus a JSON sidecar with the resolved configuration,
// timing, and convergence metrics.

#pragma once

#include <string>
#include <vector>

#include "usc/config.hpp"

namespace usc {

// Runs the configured experiment and writes
//   <out_dir>/<prefix>_<experiment>.csv   (one file per theta for spectrum,
//                                          two files for circuit-check)
//   <out_dir>/<prefix>_<experiment>.json  (sidecar)
// Throws ConfigError / NumericsError on failure.
void execute(const RunConfig& config);

// execute() wrapped into exit codes: 0 success, 1 configuration error,
// 2 numerical failure (diagnostics written to <prefix>_error.txt).
int run(const RunConfig& config);

struct ConvergenceRow {
    int n_fock{};
    int n_dressed{};
    double dt{};
    double delta_10{};
    double delta_20{};
    double g2_zero{};
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    double max_rel_delta_last{}; // largest relative change, last two rungs
    bool converged{};            // max_rel_delta_last <= 0.5%
};

// Truncation/step ladder: eigenvalue splittings and g2(0) per rung.
ConvergenceReport convergence_report(const RunConfig& config);

} // namespace usc
