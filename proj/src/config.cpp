#include "usc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace usc {

using nlohmann::json;

Eigen::VectorXd linspace(const GridSpec& spec) {
    if (spec.count < 1) throw ConfigError("grid count must be >= 1");
    Eigen::VectorXd v(spec.count);
    if (spec.count == 1) {
        v[0] = spec.start;
        return v;
    }
    const double step = (spec.stop - spec.start) / double(spec.count - 1);
    for (int i = 0; i < spec.count; ++i) v[i] = spec.start + step * i;
    v[spec.count - 1] = spec.stop;
    return v;
}

namespace {

const std::set<std::string> kExperiments = {
    "spectrum",      "g2zero-sweep", "g2tau",    "fluorescence",
    "circuit-check", "convergence",  "flux-demo"};

GridSpec parse_grid(const json& j, const GridSpec& fallback, const char* name) {
    if (!j.contains(name)) return fallback;
    const json& g = j.at(name);
    GridSpec spec;
    spec.start = g.value("start", fallback.start);
    spec.stop = g.value("stop", fallback.stop);
    spec.count = g.value("count", fallback.count);
    if (spec.count < 1)
        throw ConfigError(std::string("grid '") + name + "' needs count >= 1");
    if (spec.count > 1 && spec.stop < spec.start)
        throw ConfigError(std::string("grid '") + name + "' must ascend");
    return spec;
}

void parse_model(const json& j, RunConfig& cfg) {
    if (!j.contains("model")) return;
    const json& m = j.at("model");
    ModelParams& p = cfg.model;
    p.omega0 = m.value("omega0", p.omega0);
    p.omega_x = m.value("omega_x", p.omega_x);
    p.g = m.value("g", p.g);
    p.theta = m.value("theta", p.theta);
    p.Omega = m.value("Omega", p.Omega);
    p.gamma_a = m.value("gamma_a", p.gamma_a);
    p.gamma_x = m.value("gamma_x", p.gamma_x);
    p.gamma_deph = m.value("gamma_deph", p.gamma_deph);
    p.n_fock = m.value("n_fock", p.n_fock);
    p.n_dressed = m.value("n_dressed", p.n_dressed);
    if (m.contains("omega_d")) {
        const json& wd = m.at("omega_d");
        if (wd.is_string())
            cfg.omega_d_token = wd.get<std::string>();
        else
            p.omega_d = wd.get<double>();
    }
}

void parse_numerics(const json& j, NumericsOptions& n) {
    if (!j.contains("numerics")) return;
    const json& m = j.at("numerics");
    n.dt = m.value("dt", n.dt);
    n.n_phase = m.value("n_phase", n.n_phase);
    n.t_relax_factor = m.value("t_relax_factor", n.t_relax_factor);
    n.relax_periods = m.value("relax_periods", n.relax_periods);
    n.cap_factor = m.value("cap_factor", n.cap_factor);
    n.qss_tol = m.value("qss_tol", n.qss_tol);
    n.drive_full_cosine = m.value("drive_full_cosine", n.drive_full_cosine);
    n.dephasing_power = m.value("dephasing_power", n.dephasing_power);
    if (n.n_phase < 1) throw ConfigError("numerics.n_phase must be >= 1");
    if (n.dephasing_power != 1 && n.dephasing_power != 2)
        throw ConfigError("numerics.dephasing_power must be 1 or 2");
}

void parse_circuit(const json& j, circuit::CircuitParams& cp) {
    if (!j.contains("circuit")) return;
    const json& c = j.at("circuit");
    cp.delta_gap = c.value("delta_gap", cp.delta_gap);
    cp.i_p = c.value("i_p", cp.i_p);
    if (c.contains("mode_freqs")) {
        const auto v = c.at("mode_freqs").get<std::vector<double>>();
        if (v.size() != 3) throw ConfigError("circuit.mode_freqs needs 3 entries");
        std::copy(v.begin(), v.end(), cp.mode_freqs.begin());
    }
    if (c.contains("mode_couplings")) {
        const auto v = c.at("mode_couplings").get<std::vector<double>>();
        if (v.size() != 3)
            throw ConfigError("circuit.mode_couplings needs 3 entries");
        std::copy(v.begin(), v.end(), cp.mode_couplings.begin());
    }
}

void parse_grids(const json& j, RunConfig& cfg) {
    if (!j.contains("grids")) return;
    const json& g = j.at("grids");
    cfg.omega_d = parse_grid(g, cfg.omega_d, "omega_d");
    cfg.g = parse_grid(g, cfg.g, "g");
    cfg.levels = g.value("levels", cfg.levels);
    if (g.contains("thetas")) cfg.thetas = g.at("thetas").get<std::vector<double>>();
    cfg.relative = g.value("relative", cfg.relative);
    cfg.tau_max = g.value("tau_max", cfg.tau_max);
    cfg.tau_step = g.value("tau_step", cfg.tau_step);
    cfg.omega = parse_grid(g, cfg.omega, "omega");
    cfg.spectrum_tau_max = g.value("spectrum_tau_max", cfg.spectrum_tau_max);
    cfg.spectrum_tau_step = g.value("spectrum_tau_step", cfg.spectrum_tau_step);
    cfg.flux = parse_grid(g, cfg.flux, "flux");
    cfg.demo_g = parse_grid(g, cfg.demo_g, "demo_g");
    if (g.contains("ladder")) {
        cfg.ladder.clear();
        for (const json& r : g.at("ladder")) {
            RunConfig::Rung rung;
            rung.n_fock = r.value("n_fock", cfg.model.n_fock);
            rung.n_dressed = r.value("n_dressed", cfg.model.n_dressed);
            rung.dt = r.value("dt", 0.0);
            cfg.ladder.push_back(rung);
        }
    }
}

} // namespace

RunConfig parse_config(const std::string& json_text,
                       const std::string& experiment_cli) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig cfg;
    const std::string in_file = j.value("experiment", std::string{});
    if (!experiment_cli.empty() && !in_file.empty() && experiment_cli != in_file)
        throw ConfigError("experiment '" + experiment_cli +
                          "' disagrees with config experiment '" + in_file + "'");
    cfg.experiment = !experiment_cli.empty() ? experiment_cli : in_file;
    if (cfg.experiment.empty())
        throw ConfigError("no experiment selected (CLI argument or config key)");
    if (!kExperiments.count(cfg.experiment))
        throw ConfigError("unknown experiment '" + cfg.experiment + "'");

    parse_model(j, cfg);
    parse_numerics(j, cfg.numerics);
    parse_grids(j, cfg);
    parse_circuit(j, cfg.circuit);

    if (j.contains("output")) {
        const json& o = j.at("output");
        cfg.out_dir = o.value("dir", cfg.out_dir);
        cfg.prefix = o.value("prefix", cfg.prefix);
    }
    cfg.threads = j.value("threads", cfg.threads);

    cfg.model.validate();
    if (cfg.experiment == "circuit-check") cfg.circuit.validate();
    if (cfg.experiment == "convergence" && cfg.ladder.empty())
        throw ConfigError("convergence experiment needs a grids.ladder list");
    return cfg;
}

RunConfig load_config(const std::string& path, const std::string& experiment_cli) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), experiment_cli);
}

} // namespace usc
