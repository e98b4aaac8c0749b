// plasmatune command-line driver.
//
//   plasmatune simulate  --config c.yaml [--state 01 ...] [--format RI|MA|DB] [--out prefix]
//   plasmatune coverage  --config c.yaml [--floor -2.5] [--out prefix]
//   plasmatune transient --config c.yaml --from 00 --to 01 [--out prefix]
//   plasmatune fit       --measured cell.s2p --state on|off [--config c.yaml] [--out prefix]
//   plasmatune synth     --config c.yaml [--seed 1] [--budget N] [--threads N] [--out prefix]
//
// Exit status: 0 success, 1 numerical failure, 2 usage or configuration error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plasmatune/config.hpp"
#include "plasmatune/csv.hpp"
#include "plasmatune/plasmatune.hpp"
#include "plasmatune/touchstone.hpp"

namespace pt = plasmatune;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const pt::TunerConfig& require_tuner(const pt::ArtifactConfig& cfg) {
    if (!cfg.tuner) throw UsageError("config has no 'tuner' section");
    return *cfg.tuner;
}

pt::FrequencyGrid require_sweep(const pt::ArtifactConfig& cfg) {
    if (!cfg.sweep) throw UsageError("config has no 'sweep' section");
    return cfg.sweep->grid();
}

pt::SwitchState parse_state(const std::string& text, std::size_t width) {
    pt::SwitchState s;
    try {
        s = pt::SwitchState::parse(text);
    } catch (const pt::Error& e) {
        throw UsageError(e.what());
    }
    if (s.width() != width)
        throw UsageError("state '" + text + "' has " + std::to_string(s.width()) + " bits but the tuner has " +
                         std::to_string(width) + " stubs");
    return s;
}

std::string num(double v) { return pt::format_number(v); }

int run_simulate(const std::string& config_path, std::vector<std::string> states, const std::string& format,
                 const std::string& out) {
    const auto cfg = pt::load_config(config_path);
    const auto& tuner = require_tuner(cfg);
    const auto grid = require_sweep(cfg);
    pt::TouchstoneFormat fmt;
    try {
        fmt = pt::parse_touchstone_format(format);
    } catch (const pt::Error& e) {
        throw UsageError(e.what());
    }

    std::vector<pt::SwitchState> list;
    if (states.empty()) {
        list = pt::enumerate_states(tuner.stub_count());
    } else {
        for (const auto& s : states) list.push_back(parse_state(s, tuner.stub_count()));
    }

    pt::CsvTable gain({"frequency_hz", "state", "s11_re", "s11_im", "s21_re", "s21_im", "gain_db"});
    for (const auto& st : list) {
        std::vector<pt::SMatrix2> params;
        for (double f : grid) {
            const auto s = pt::state_network(tuner, st, f);
            params.push_back(s);
            gain.row() << f << st.to_string() << s.s11.real() << s.s11.imag() << s.s21.real() << s.s21.imag()
                       << pt::to_db(pt::power_gain(s));
        }
        const std::string path = out + "_" + st.to_string() + ".s2p";
        pt::write_touchstone(pt::NetworkSweep(grid, std::move(params)), path, fmt);
        std::cout << "wrote " << path << "\n";
    }
    gain.save(out + "_gain.csv");
    std::cout << "wrote " << out << "_gain.csv\n";
    return 0;
}

int run_coverage(const std::string& config_path, double floor_db, const std::string& out) {
    const auto cfg = pt::load_config(config_path);
    const auto& tuner = require_tuner(cfg);
    const auto grid = require_sweep(cfg);
    if (!(floor_db < 0.0)) throw UsageError("--floor must be negative dB");

    const auto report = pt::coverage(tuner, grid);
    pt::CsvTable gamma({"frequency_hz", "state", "gamma_re", "gamma_im", "gain_db"});
    pt::CsvTable metrics(
        {"frequency_hz", "min_pairwise_distance", "max_pairwise_distance", "hull_area", "worst_gain_db"});
    std::vector<double> worst;
    for (const auto& slice : report.slices) {
        for (const auto& p : slice.points)
            gamma.row() << slice.frequency << p.state.to_string() << p.gamma.real() << p.gamma.imag()
                        << pt::to_db(p.gain);
        const double w = pt::to_db(pt::worst_state_gain(slice));
        worst.push_back(w);
        metrics.row() << slice.frequency << slice.metrics.min_pairwise_distance
                      << slice.metrics.max_pairwise_distance << slice.metrics.hull_area << w;
    }
    gamma.save(out + "_gamma.csv");
    metrics.save(out + "_metrics.csv");
    const auto band = pt::band_extent_from_gains(grid, worst, floor_db);
    std::cout << "wrote " << out << "_gamma.csv\n"
              << "wrote " << out << "_metrics.csv\n";
    if (band.empty) {
        std::cout << "band: empty at floor " << num(floor_db) << " dB\n";
    } else {
        std::cout << "band: " << num(band.f_lo) << " Hz to " << num(band.f_hi) << " Hz, fractional "
                  << num(band.fractional_bw) << " at floor " << num(floor_db) << " dB\n";
    }
    return 0;
}

int run_transient(const std::string& config_path, const std::string& from, const std::string& to,
                  const std::string& out) {
    const auto cfg = pt::load_config(config_path);
    const auto& tuner = require_tuner(cfg);
    const auto spec = cfg.transient.value_or(pt::TransientSpec{});
    const auto a = parse_state(from, tuner.stub_count());
    const auto b = parse_state(to, tuner.stub_count());
    try {
        spec.validate();
    } catch (const pt::Error& e) {
        throw UsageError(std::string("transient: ") + e.what());
    }

    const auto trace = pt::envelope_trace(tuner, a, b, spec);
    pt::CsvTable env({"time_s", "envelope_s21_mag"});
    for (std::size_t k = 0; k < trace.size(); ++k) env.row() << trace.time[k] << trace.value[k];
    env.save(out + "_envelope.csv");

    const auto tt = pt::tuning_time(trace, spec);
    pt::CsvTable summary({"from", "to", "tuning_time_s", "settled", "initial_s21_mag", "final_s21_mag"});
    summary.row() << a.to_string() << b.to_string() << tt.seconds << (tt.settled ? "true" : "false")
                  << trace.value.front() << trace.value.back();
    summary.save(out + "_transient.csv");
    std::cout << "wrote " << out << "_envelope.csv\n"
              << "wrote " << out << "_transient.csv\n";
    if (tt.settled)
        std::cout << "tuning time: " << num(tt.seconds) << " s\n";
    else
        std::cout << "tuning time: not settled within " << num(spec.t_end) << " s\n";
    return 0;
}

int run_fit(const std::string& config_path, const std::string& measured, const std::string& state,
            const std::string& out) {
    std::optional<pt::MicrostripSpec> fixture;
    if (!config_path.empty()) fixture = pt::load_config(config_path).fit_fixture;
    pt::CellState cs;
    if (state == "on") cs = pt::CellState::on;
    else if (state == "off") cs = pt::CellState::off;
    else throw UsageError("--state must be 'on' or 'off' for fit");

    pt::NetworkSweep data;
    try {
        data = pt::read_touchstone(measured);
    } catch (const pt::ParseError& e) {
        throw UsageError(measured + ": " + e.what());
    }
    const auto fit = pt::fit_switch_model(data, cs, fixture);

    pt::CsvTable table({"parameter", "value", "unit"});
    if (cs == pt::CellState::off) {
        table.row() << "c_off" << fit.c_off << "F";
    } else {
        table.row() << "r_on" << fit.r_on << "ohm";
        table.row() << "c_sheath" << fit.c_sheath << "F";
    }
    table.row() << "residual_norm" << fit.residual_norm << "";
    table.row() << "rms_residual" << fit.rms_residual << "";
    table.row() << "iterations" << static_cast<double>(fit.iterations) << "";
    table.save(out + "_fit.csv");
    std::cout << "wrote " << out << "_fit.csv\n";
    if (cs == pt::CellState::off)
        std::cout << "c_off: " << num(fit.c_off) << " F\n";
    else
        std::cout << "r_on: " << num(fit.r_on) << " ohm\nc_sheath: " << num(fit.c_sheath) << " F\n";
    if (fit.poor_fit) std::cerr << "warning: " << fit.warning << "\n";
    return 0;
}

int run_synth(const std::string& config_path, std::optional<std::uint64_t> seed, std::optional<std::size_t> budget,
              unsigned threads, const std::string& out) {
    auto cfg = pt::load_config(config_path);
    if (!cfg.synth) throw UsageError("config has no 'synth' section");
    auto& sp = *cfg.synth;
    if (seed) sp.seed = *seed;
    if (budget) sp.options.max_evaluations = *budget;
    sp.options.threads = threads;

    const auto r = pt::synthesize(sp.targets, sp.bounds, sp.tmpl, sp.seed, sp.options);

    cfg.tuner = r.config;
    if (!cfg.sweep) cfg.sweep = pt::SweepSpec{sp.targets.f_lo, sp.targets.f_hi, sp.options.grid_points};
    pt::save_config(cfg, out + "_config.yaml");

    pt::CsvTable metrics({"seed", "objective", "converged", "evaluations", "band_lo_hz", "band_hi_hz",
                          "fractional_bw", "worst_gain_db", "min_state_separation", "fraction_above_1db"});
    metrics.row() << std::to_string(r.seed) << r.objective_value << (r.converged ? "true" : "false")
                  << std::to_string(r.evaluations) << (r.band.empty ? 0.0 : r.band.f_lo)
                  << (r.band.empty ? 0.0 : r.band.f_hi) << (r.band.empty ? 0.0 : r.band.fractional_bw)
                  << r.worst_gain_db << r.min_state_separation << r.fraction_above_1db;
    metrics.save(out + "_metrics.csv");

    pt::CsvTable params({"name", "value_m"});
    const std::size_t n = sp.targets.stub_count;
    for (std::size_t i = 0; i < r.parameters.size(); ++i) {
        std::string name;
        if (i == 0) name = "lead_in";
        else if (i < n) name = "spacing_" + std::to_string(i);
        else if (i == n) name = "lead_out";
        else name = "stub_" + std::to_string(i - n);
        params.row() << name << r.parameters[i];
    }
    params.save(out + "_parameters.csv");

    std::cout << "wrote " << out << "_config.yaml\n"
              << "wrote " << out << "_metrics.csv\n"
              << "wrote " << out << "_parameters.csv\n"
              << "objective: " << num(r.objective_value) << (r.converged ? " (targets met)" : " (not converged)")
              << "\n";
    if (!r.band.empty) std::cout << "fractional bandwidth: " << num(r.band.fractional_bw) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plasma-switched stub tuner modeling and synthesis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "plasmatune 0.1.0");

    std::string config, out = "plasmatune", format = "RI", from, to, measured, fit_state;
    std::vector<std::string> states;
    double floor_db = -2.5;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> budget;
    unsigned threads = 1;

    auto* sim = app.add_subcommand("simulate", "S-parameters of switch states over the sweep");
    sim->add_option("--config", config, "YAML configuration")->required();
    sim->add_option("--state", states, "switch state word, e.g. 01 (default: all states)");
    sim->add_option("--format", format, "Touchstone format: RI, MA or DB");
    sim->add_option("--out", out, "output path prefix");

    auto* cov = app.add_subcommand("coverage", "reflection coefficients of every state and spread metrics");
    cov->add_option("--config", config, "YAML configuration")->required();
    cov->add_option("--floor", floor_db, "gain floor for the band report, dB");
    cov->add_option("--out", out, "output path prefix");

    auto* tr = app.add_subcommand("transient", "envelope during a state change and tuning time");
    tr->add_option("--config", config, "YAML configuration")->required();
    tr->add_option("--from", from, "initial state word")->required();
    tr->add_option("--to", to, "final state word")->required();
    tr->add_option("--out", out, "output path prefix");

    auto* fit = app.add_subcommand("fit", "fit switch parasitics to a measured .s2p");
    fit->add_option("--measured", measured, "Touchstone file of the cell in its fixture")->required();
    fit->add_option("--state", fit_state, "cell state of the measurement: on or off")->required();
    fit->add_option("--config", config, "YAML configuration (optional fit.fixture)");
    fit->add_option("--out", out, "output path prefix");

    auto* syn = app.add_subcommand("synth", "search tuner geometry against band and gain targets");
    syn->add_option("--config", config, "YAML configuration with a synth section")->required();
    syn->add_option("--seed", seed, "random seed (overrides synth.seed)");
    syn->add_option("--budget", budget, "objective evaluation budget");
    syn->add_option("--threads", threads, "worker threads for objective evaluation")->check(CLI::Range(1u, 256u));
    syn->add_option("--out", out, "output path prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*sim) return run_simulate(config, states, format, out);
        if (*cov) return run_coverage(config, floor_db, out);
        if (*tr) return run_transient(config, from, to, out);
        if (*fit) return run_fit(config, measured, fit_state, out);
        if (*syn) return run_synth(config, seed, budget, threads, out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const pt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
