#include "usc/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "usc/csv.hpp"
#include "usc/observables.hpp"
#include "usc/parallel.hpp"
#include "usc/version.hpp"

namespace usc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string base_path(const RunConfig& cfg) {
    return (fs::path(cfg.out_dir) / (cfg.prefix + "_" + cfg.experiment)).string();
}

json grid_to_json(const GridSpec& g) {
    return json{{"start", g.start}, {"stop", g.stop}, {"count", g.count}};
}

json config_to_json(const RunConfig& cfg) {
    json m{{"omega0", cfg.model.omega0},   {"omega_x", cfg.model.omega_x},
           {"g", cfg.model.g},             {"theta", cfg.model.theta},
           {"Omega", cfg.model.Omega},     {"omega_d", cfg.model.omega_d},
           {"gamma_a", cfg.model.gamma_a}, {"gamma_x", cfg.model.gamma_x},
           {"gamma_deph", cfg.model.gamma_deph},
           {"n_fock", cfg.model.n_fock},   {"n_dressed", cfg.model.n_dressed}};
    if (!cfg.omega_d_token.empty()) m["omega_d_token"] = cfg.omega_d_token;
    json n{{"dt", cfg.numerics.dt},
           {"n_phase", cfg.numerics.n_phase},
           {"t_relax_factor", cfg.numerics.t_relax_factor},
           {"relax_periods", cfg.numerics.relax_periods},
           {"cap_factor", cfg.numerics.cap_factor},
           {"qss_tol", cfg.numerics.qss_tol},
           {"drive_full_cosine", cfg.numerics.drive_full_cosine},
           {"dephasing_power", cfg.numerics.dephasing_power}};
    json grids{{"omega_d", grid_to_json(cfg.omega_d)},
               {"g", grid_to_json(cfg.g)},
               {"levels", cfg.levels},
               {"thetas", cfg.thetas},
               {"relative", cfg.relative},
               {"tau_max", cfg.tau_max},
               {"tau_step", cfg.tau_step},
               {"omega", grid_to_json(cfg.omega)},
               {"spectrum_tau_max", cfg.spectrum_tau_max},
               {"spectrum_tau_step", cfg.spectrum_tau_step},
               {"flux", grid_to_json(cfg.flux)},
               {"demo_g", grid_to_json(cfg.demo_g)}};
    if (!cfg.ladder.empty()) {
        json ladder = json::array();
        for (const auto& r : cfg.ladder)
            ladder.push_back({{"n_fock", r.n_fock},
                              {"n_dressed", r.n_dressed},
                              {"dt", r.dt}});
        grids["ladder"] = ladder;
    }
    json circuit{{"delta_gap", cfg.circuit.delta_gap},
                 {"i_p", cfg.circuit.i_p},
                 {"mode_freqs", cfg.circuit.mode_freqs},
                 {"mode_couplings", cfg.circuit.mode_couplings}};
    return json{{"experiment", cfg.experiment},
                {"model", m},
                {"numerics", n},
                {"grids", grids},
                {"circuit", circuit},
                {"output", {{"dir", cfg.out_dir}, {"prefix", cfg.prefix}}},
                {"threads", cfg.threads}};
}

int effective_threads(const RunConfig& cfg) {
    return cfg.threads > 0
               ? cfg.threads
               : int(std::max(1u, std::thread::hardware_concurrency()));
}

// Resolves a drive-frequency token against the configured model.
double resolved_omega_d(const RunConfig& cfg, const System& sys) {
    if (cfg.omega_d_token.empty()) return cfg.model.omega_d;
    return resolve_frequency_token(cfg.omega_d_token, sys.basis);
}

void run_spectrum(const RunConfig& cfg, json& metrics) {
    std::vector<double> thetas = cfg.thetas;
    if (thetas.empty()) thetas = {cfg.model.theta};
    const Eigen::VectorXd grid = linspace(cfg.g);
    for (size_t t = 0; t < thetas.size(); ++t) {
        ModelParams p = cfg.model;
        p.theta = thetas[t];
        const SpectrumSweep sweep = spectrum_sweep(p, grid, cfg.levels, cfg.relative);
        std::string path = base_path(cfg);
        if (thetas.size() > 1) path += "_theta" + std::to_string(t);
        path += ".csv";
        CsvWriter csv(path);
        std::vector<std::string> names{"g"};
        for (int l = 0; l < cfg.levels; ++l) names.push_back("E" + std::to_string(l));
        csv.header(names);
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            std::vector<double> row{grid[i]};
            for (int l = 0; l < cfg.levels; ++l) row.push_back(sweep.levels(i, l));
            csv.row(row);
        }
        metrics["files"].push_back(path);
    }
    metrics["thetas"] = thetas;
}

void run_g2zero_sweep(const RunConfig& cfg, json& metrics) {
    const Eigen::VectorXd grid = linspace(cfg.omega_d);
    const CorrelationResult result =
        g2_zero_sweep(cfg.model, grid, cfg.numerics, effective_threads(cfg));
    CsvWriter csv(base_path(cfg) + ".csv");
    csv.header({"omega_d", "g2_zero"});
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        csv.row({result.grid[i], result.values[i]});
    metrics["points"] = int(grid.size());
    Eigen::Index imax;
    result.values.maxCoeff(&imax);
    metrics["max_g2"] = result.values[imax];
    metrics["max_g2_omega_d"] = result.grid[imax];
}

void run_g2tau(const RunConfig& cfg, json& metrics) {
    NumericsOptions opts = cfg.numerics;
    opts.threads = effective_threads(cfg);
    const System sys0 = build_system(cfg.model, opts);
    ModelParams p = cfg.model;
    p.omega_d = resolved_omega_d(cfg, sys0);
    System sys = sys0;
    sys.params = p;
    const CorrelationResult result = g2_tau(sys, cfg.tau_max, cfg.tau_step, opts);
    CsvWriter csv(base_path(cfg) + ".csv");
    csv.header({"tau", "g2"});
    for (Eigen::Index i = 0; i < result.grid.size(); ++i)
        csv.row({result.grid[i], result.values[i]});
    metrics["omega_d"] = p.omega_d;
    metrics["flux_squared"] = result.normalization;
    metrics["dt"] = result.dt;
    metrics["n_phase"] = result.n_phase;
}

void run_fluorescence(const RunConfig& cfg, json& metrics) {
    NumericsOptions opts = cfg.numerics;
    opts.threads = effective_threads(cfg);
    const System sys0 = build_system(cfg.model, opts);
    ModelParams p = cfg.model;
    p.omega_d = resolved_omega_d(cfg, sys0);
    System sys = sys0;
    sys.params = p;
    const CorrelationResult result = fluorescence_spectrum(
        sys, linspace(cfg.omega), cfg.spectrum_tau_max, cfg.spectrum_tau_step, opts);
    CsvWriter csv(base_path(cfg) + ".csv");
    csv.header({"omega", "S_normalized"});
    for (Eigen::Index i = 0; i < result.grid.size(); ++i)
        csv.row({result.grid[i], result.values[i]});
    metrics["omega_d"] = p.omega_d;
    metrics["integrated_power"] = result.normalization;
    metrics["dt"] = result.dt;
}

void run_circuit_check(const RunConfig& cfg, json& metrics) {
    const circuit::CircuitParams& cp = cfg.circuit;
    const Eigen::VectorXd flux = linspace(cfg.flux);

    {
        CsvWriter csv(base_path(cfg) + "_levels.csv");
        csv.header({"dphi_freq_GHz", "E_dn000", "E_up000", "E_dn100", "E_up100",
                    "E_dn010", "E_dn001"});
        using circuit::QubitState;
        for (Eigen::Index i = 0; i < flux.size(); ++i) {
            const double f = flux[i];
            csv.row({f,
                     circuit::uncoupled_level(cp, f, {0, 0, 0}, QubitState::down),
                     circuit::uncoupled_level(cp, f, {0, 0, 0}, QubitState::up),
                     circuit::uncoupled_level(cp, f, {1, 0, 0}, QubitState::down),
                     circuit::uncoupled_level(cp, f, {1, 0, 0}, QubitState::up),
                     circuit::uncoupled_level(cp, f, {0, 1, 0}, QubitState::down),
                     circuit::uncoupled_level(cp, f, {0, 0, 1}, QubitState::down)});
        }
    }

    const circuit::SingleModeBound bound =
        circuit::max_mixing_angle(cp, cfg.flux.count);
    {
        CsvWriter csv(base_path(cfg) + "_margin.csv");
        csv.header({"dphi_freq_GHz", "cos_theta", "J_GHz", "deltaE_GHz",
                    "margin_ratio"});
        for (const auto& row : bound.margin)
            csv.row({row.dphi_freq, row.cos_theta, row.j_coupling, row.delta_e,
                     row.margin_ratio});
    }
    metrics["cos_theta_max"] = bound.cos_theta_max;
    metrics["dphi_freq_res_GHz"] = bound.dphi_freq_res;
    std::cout << "cos_theta_max = " << bound.cos_theta_max << "\n";
}

void run_flux_demo(const RunConfig& cfg, json& metrics) {
    const Eigen::VectorXd grid = linspace(cfg.demo_g);
    CsvWriter csv(base_path(cfg) + ".csv");
    csv.header({"g", "naive_photon_number", "output_flux"});
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        ModelParams p = cfg.model;
        p.g = grid[i];
        const System sys = build_system(p, cfg.numerics);
        Matrix ground = Matrix::Zero(p.n_dressed, p.n_dressed);
        ground(0, 0) = 1.0;
        csv.row({grid[i], naive_photon_number(ground, sys),
                 output_flux(ground, sys)});
    }
    metrics["points"] = int(grid.size());
}

void run_convergence(const RunConfig& cfg, json& metrics) {
    const ConvergenceReport report = convergence_report(cfg);
    CsvWriter csv(base_path(cfg) + ".csv");
    csv.header({"n_fock", "n_dressed", "dt", "delta_10", "delta_20", "g2_zero"});
    for (const auto& row : report.rows)
        csv.row({double(row.n_fock), double(row.n_dressed), row.dt, row.delta_10,
                 row.delta_20, row.g2_zero});
    metrics["max_rel_delta_last"] = report.max_rel_delta_last;
    metrics["converged"] = report.converged;
    if (!report.converged)
        std::cerr << "warning: convergence ladder not settled; last rungs differ by "
                  << report.max_rel_delta_last * 100.0 << "%\n";
}

} // namespace

ConvergenceReport convergence_report(const RunConfig& cfg) {
    if (cfg.ladder.empty())
        throw ConfigError("convergence_report: empty ladder");
    ConvergenceReport report;
    for (const auto& rung : cfg.ladder) {
        ModelParams p = cfg.model;
        p.n_fock = rung.n_fock;
        p.n_dressed = rung.n_dressed;
        NumericsOptions opts = cfg.numerics;
        opts.dt = rung.dt;
        opts.threads = 1;
        const System sys0 = build_system(p, opts);
        if (!cfg.omega_d_token.empty())
            p.omega_d = resolve_frequency_token(cfg.omega_d_token, sys0.basis);
        System sys = sys0;
        sys.params = p;
        ConvergenceRow row;
        row.n_fock = rung.n_fock;
        row.n_dressed = rung.n_dressed;
        row.dt = resolve_step(sys.superop, p, opts);
        row.delta_10 = sys.basis.delta_of(1, 0);
        row.delta_20 = sys.basis.delta_of(2, 0);
        row.g2_zero = g2_zero(sys, opts).g2;
        report.rows.push_back(row);
    }
    if (report.rows.size() >= 2) {
        const auto& a = report.rows[report.rows.size() - 2];
        const auto& b = report.rows.back();
        auto rel = [](double x, double y) {
            const double scale = std::max(std::abs(x), std::abs(y));
            return scale > 0 ? std::abs(x - y) / scale : 0.0;
        };
        report.max_rel_delta_last =
            std::max({rel(a.delta_10, b.delta_10), rel(a.delta_20, b.delta_20),
                      rel(a.g2_zero, b.g2_zero)});
        report.converged = report.max_rel_delta_last <= 5e-3;
    } else {
        report.converged = true;
    }
    return report;
}

void execute(const RunConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    const auto start = std::chrono::steady_clock::now();

    json sidecar;
    sidecar["config"] = config_to_json(cfg);
    sidecar["version"] = kVersion;
    json metrics;

    if (cfg.experiment == "spectrum")
        run_spectrum(cfg, metrics);
    else if (cfg.experiment == "g2zero-sweep")
        run_g2zero_sweep(cfg, metrics);
    else if (cfg.experiment == "g2tau")
        run_g2tau(cfg, metrics);
    else if (cfg.experiment == "fluorescence")
        run_fluorescence(cfg, metrics);
    else if (cfg.experiment == "circuit-check")
        run_circuit_check(cfg, metrics);
    else if (cfg.experiment == "convergence")
        run_convergence(cfg, metrics);
    else if (cfg.experiment == "flux-demo")
        run_flux_demo(cfg, metrics);
    else
        throw ConfigError("unknown experiment '" + cfg.experiment + "'");

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    sidecar["metrics"] = metrics;
    sidecar["wall_seconds"] = seconds;

    std::ofstream side(base_path(cfg) + ".json");
    side << sidecar.dump(2) << "\n";
}

int run(const RunConfig& cfg) {
    try {
        execute(cfg);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        try {
            fs::create_directories(cfg.out_dir);
            std::ofstream diag(base_path(cfg) + "_error.txt");
            diag << e.what() << "\n";
        } catch (...) {
        }
        return 2;
    }
}

} // namespace usc
