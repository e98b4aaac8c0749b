#pragma once

// YAML configuration: substrate, named components, tuner geometry, sweep,
// transient and synthesis settings. Every dimensional value carries its unit
// ("7.5pF", "30mil"). Components may be referenced by id or written inline.

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include <yaml-cpp/yaml.h>

#include "plasmatune/elements.hpp"
#include "plasmatune/errors.hpp"
#include "plasmatune/plasma.hpp"
#include "plasmatune/synth.hpp"
#include "plasmatune/transient.hpp"
#include "plasmatune/tuner.hpp"
#include "plasmatune/units.hpp"

namespace plasmatune {

struct SweepSpec {
    double start = 3.0e9;
    double stop = 3.93e9;
    std::size_t count = 21;

    FrequencyGrid grid() const {
        if (!(stop >= start)) throw ConfigError("sweep stop must not be below start");
        return FrequencyGrid::linear(start, stop, count);
    }
};

struct SynthSpec {
    SynthTargets targets;
    SynthBounds bounds;
    TunerTemplate tmpl;
    SynthOptions options;
    std::uint64_t seed = 1;
};

struct ArtifactConfig {
    double z0 = kDefaultZ0;
    SubstrateSpec substrate;
    std::map<std::string, LumpedCapSpec> capacitors;
    std::map<std::string, LumpedIndSpec> inductors;
    std::map<std::string, PlasmaCellModel> cells;
    std::optional<TunerConfig> tuner;
    std::optional<SweepSpec> sweep;
    std::optional<TransientSpec> transient;
    std::optional<MicrostripSpec> fit_fixture;
    std::optional<SynthSpec> synth;
};

namespace detail {

class Fields {
public:
    Fields(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
        if (!node_.IsMap()) throw ConfigError(where() + "must be a mapping");
    }

    void allow(std::initializer_list<std::string_view> keys) const {
        std::set<std::string_view> ok(keys);
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!ok.count(key)) throw ConfigError(where() + "unknown key '" + key + "'");
        }
    }

    bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }
    YAML::Node node(const std::string& key) const { return node_[key]; }
    std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    std::string text(const std::string& key) const {
        const auto n = node_[key];
        if (!n) throw ConfigError(where() + "missing required key '" + key + "'");
        if (!n.IsScalar()) throw ConfigError(where() + "'" + key + "' must be a scalar");
        return n.as<std::string>();
    }

    double quantity(const std::string& key, Dimension d) const {
        try {
            return parse_quantity(text(key), d);
        } catch (const ConfigError& e) {
            throw ConfigError(child(key) + ": " + e.what());
        }
    }

    double quantity_or(const std::string& key, Dimension d, double fallback) const {
        return has(key) ? quantity(key, d) : fallback;
    }

    std::uint64_t integer(const std::string& key) const {
        const std::string s = text(key);
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw ConfigError(child(key) + ": '" + s + "' is not a non-negative integer");
        return v;
    }

    std::uint64_t integer_or(const std::string& key, std::uint64_t fallback) const {
        return has(key) ? integer(key) : fallback;
    }

    std::string where() const { return path_.empty() ? "" : path_ + ": "; }

private:
    YAML::Node node_;
    std::string path_;
};

inline SubstrateSpec parse_substrate(const Fields& f) {
    f.allow({"eps_r", "tan_delta", "height", "copper_thickness", "conductivity"});
    SubstrateSpec s;
    s.eps_r = f.quantity_or("eps_r", Dimension::dimensionless, s.eps_r);
    s.tan_delta = f.quantity_or("tan_delta", Dimension::dimensionless, s.tan_delta);
    s.height = f.quantity_or("height", Dimension::length, s.height);
    s.copper_thickness = f.quantity_or("copper_thickness", Dimension::length, s.copper_thickness);
    s.conductivity = f.quantity_or("conductivity", Dimension::conductivity, s.conductivity);
    return s;
}

inline LumpedCapSpec parse_capacitor(const Fields& f) {
    f.allow({"capacitance", "esl", "esr"});
    LumpedCapSpec c;
    c.capacitance = f.quantity("capacitance", Dimension::capacitance);
    c.esl = f.quantity_or("esl", Dimension::inductance, c.esl);
    c.esr = f.quantity_or("esr", Dimension::resistance, c.esr);
    return c;
}

inline LumpedIndSpec parse_inductor(const Fields& f) {
    f.allow({"inductance", "c_par", "r_series"});
    LumpedIndSpec l;
    l.inductance = f.quantity("inductance", Dimension::inductance);
    l.c_par = f.quantity_or("c_par", Dimension::capacitance, l.c_par);
    l.r_series = f.quantity_or("r_series", Dimension::resistance, l.r_series);
    return l;
}

inline PlasmaCellModel parse_cell(const Fields& f) {
    f.allow({"c_off", "r_on", "c_sheath", "gap", "area", "breakdown_voltage", "bias_fraction",
             "bias_current_limit", "plasma"});
    PlasmaCellModel c;
    c.c_off = f.quantity_or("c_off", Dimension::capacitance, c.c_off);
    c.r_on = f.quantity_or("r_on", Dimension::resistance, c.r_on);
    c.c_sheath = f.quantity_or("c_sheath", Dimension::capacitance, c.c_sheath);
    c.geometry.gap = f.quantity_or("gap", Dimension::length, c.geometry.gap);
    c.geometry.area = f.quantity_or("area", Dimension::area, c.geometry.area);
    c.breakdown_voltage = f.quantity_or("breakdown_voltage", Dimension::voltage, c.breakdown_voltage);
    c.bias_fraction = f.quantity_or("bias_fraction", Dimension::dimensionless, c.bias_fraction);
    c.bias_current_limit = f.quantity_or("bias_current_limit", Dimension::current, c.bias_current_limit);
    if (f.has("plasma")) {
        Fields p(f.node("plasma"), f.child("plasma"));
        p.allow({"n_e", "nu_m"});
        c.plasma = DrudeParams{p.quantity("n_e", Dimension::density), p.quantity("nu_m", Dimension::rate)};
    }
    return c;
}

// A component given either by id (scalar) or inline (mapping).
template <class T, class Parse>
T resolve(const Fields& f, const std::string& key, const std::map<std::string, T>& table, const char* kind,
          Parse parse) {
    const auto n = f.node(key);
    if (n.IsScalar()) {
        const auto id = n.as<std::string>();
        const auto it = table.find(id);
        if (it == table.end()) throw ConfigError(f.child(key) + ": unknown " + kind + " '" + id + "'");
        return it->second;
    }
    return parse(Fields(n, f.child(key)));
}

inline Termination parse_termination(const std::string& s, const std::string& path) {
    if (s == "short") return Termination::short_circuit;
    if (s == "open") return Termination::open_circuit;
    throw ConfigError(path + ": termination must be 'short' or 'open'");
}

inline const char* termination_name(Termination t) { return t == Termination::short_circuit ? "short" : "open"; }

inline MicrostripSpec parse_line(const Fields& f, const SubstrateSpec& sub) {
    return {f.quantity("width", Dimension::length), f.quantity("length", Dimension::length), sub};
}

inline ParameterRange parse_range(const Fields& f, const std::string& key, ParameterRange fallback) {
    if (!f.has(key)) return fallback;
    const auto n = f.node(key);
    if (!n.IsSequence() || n.size() != 2) throw ConfigError(f.child(key) + ": expected [lo, hi]");
    return {parse_quantity(n[0].as<std::string>(), Dimension::length),
            parse_quantity(n[1].as<std::string>(), Dimension::length)};
}

} // namespace detail

inline ArtifactConfig parse_config_node(const YAML::Node& root) {
    using detail::Fields;
    Fields top(root, "");
    top.allow({"z0", "substrate", "capacitors", "inductors", "cells", "tuner", "sweep", "transient", "fit", "synth"});
    ArtifactConfig cfg;
    cfg.z0 = top.quantity_or("z0", Dimension::resistance, cfg.z0);
    if (top.has("substrate")) cfg.substrate = detail::parse_substrate(Fields(top.node("substrate"), "substrate"));

    auto each = [&](const char* section, auto&& fn) {
        if (!top.has(section)) return;
        const auto n = top.node(section);
        if (!n.IsMap()) throw ConfigError(std::string(section) + ": must map ids to components");
        for (const auto& kv : n) {
            const auto id = kv.first.as<std::string>();
            fn(id, Fields(kv.second, std::string(section) + "." + id));
        }
    };
    each("capacitors", [&](const std::string& id, const Fields& f) { cfg.capacitors[id] = detail::parse_capacitor(f); });
    each("inductors", [&](const std::string& id, const Fields& f) { cfg.inductors[id] = detail::parse_inductor(f); });
    each("cells", [&](const std::string& id, const Fields& f) { cfg.cells[id] = detail::parse_cell(f); });

    auto cap = [&](const Fields& f, const char* key) {
        return detail::resolve(f, key, cfg.capacitors, "capacitor", detail::parse_capacitor);
    };
    auto ind = [&](const Fields& f, const char* key) {
        return detail::resolve(f, key, cfg.inductors, "inductor", detail::parse_inductor);
    };
    auto cell = [&](const Fields& f, const char* key) {
        return detail::resolve(f, key, cfg.cells, "cell", detail::parse_cell);
    };

    if (top.has("tuner")) {
        Fields t(top.node("tuner"), "tuner");
        t.allow({"sections", "stubs", "port_block"});
        TunerConfig tc;
        tc.z0 = cfg.z0;
        if (t.has("port_block")) tc.port_block = cap(t, "port_block");
        const auto sections = t.node("sections");
        const auto stubs = t.node("stubs");
        if (!sections || !sections.IsSequence()) throw ConfigError("tuner.sections: expected a list");
        if (!stubs || !stubs.IsSequence()) throw ConfigError("tuner.stubs: expected a list");
        for (std::size_t i = 0; i < sections.size(); ++i) {
            Fields s(sections[i], "tuner.sections[" + std::to_string(i) + "]");
            s.allow({"width", "length"});
            tc.main_sections.push_back(detail::parse_line(s, cfg.substrate));
        }
        for (std::size_t i = 0; i < stubs.size(); ++i) {
            const std::string path = "tuner.stubs[" + std::to_string(i) + "]";
            Fields s(stubs[i], path);
            s.allow({"width", "length", "cell", "dc_block", "bias_choke", "termination"});
            StubBranch b;
            b.stub_line = detail::parse_line(s, cfg.substrate);
            if (s.has("cell")) b.cell = cell(s, "cell");
            if (s.has("dc_block")) b.dc_block = cap(s, "dc_block");
            if (s.has("bias_choke")) b.bias_choke = ind(s, "bias_choke");
            if (s.has("termination")) b.termination = detail::parse_termination(s.text("termination"), path);
            tc.stubs.push_back(b);
        }
        tc.assign_positions();
        try {
            tc.validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError(std::string("tuner: ") + e.what());
        }
        cfg.tuner = std::move(tc);
    }

    if (top.has("sweep")) {
        Fields s(top.node("sweep"), "sweep");
        s.allow({"start", "stop", "count"});
        SweepSpec sw;
        sw.start = s.quantity("start", Dimension::frequency);
        sw.stop = s.quantity("stop", Dimension::frequency);
        sw.count = s.integer("count");
        if (sw.count == 0) throw ConfigError("sweep.count must be positive");
        cfg.sweep = sw;
    }

    if (top.has("transient")) {
        Fields s(top.node("transient"), "transient");
        s.allow({"tau_on", "tau_off", "n_e_on", "f_cw", "t_end", "dt", "settle_fraction"});
        TransientSpec ts;
        ts.tau_on = s.quantity_or("tau_on", Dimension::time, ts.tau_on);
        ts.tau_off = s.quantity_or("tau_off", Dimension::time, ts.tau_off);
        ts.n_e_on = s.quantity_or("n_e_on", Dimension::density, ts.n_e_on);
        ts.f_cw = s.quantity_or("f_cw", Dimension::frequency, ts.f_cw);
        ts.t_end = s.quantity_or("t_end", Dimension::time, ts.t_end);
        ts.dt = s.quantity_or("dt", Dimension::time, ts.dt);
        ts.settle_fraction = s.quantity_or("settle_fraction", Dimension::dimensionless, ts.settle_fraction);
        cfg.transient = ts;
    }

    if (top.has("fit")) {
        Fields s(top.node("fit"), "fit");
        s.allow({"fixture"});
        if (s.has("fixture")) {
            Fields fx(s.node("fixture"), "fit.fixture");
            fx.allow({"width", "length"});
            cfg.fit_fixture = detail::parse_line(fx, cfg.substrate);
        }
    }

    if (top.has("synth")) {
        Fields s(top.node("synth"), "synth");
        s.allow({"targets", "bounds", "template", "options", "seed"});
        SynthSpec sp;
        sp.seed = s.integer_or("seed", sp.seed);
        if (s.has("targets")) {
            Fields t(s.node("targets"), "synth.targets");
            t.allow({"f_lo", "f_hi", "gain_floor_db", "min_state_separation", "stub_count", "min_high_gain_fraction"});
            auto& g = sp.targets;
            g.f_lo = t.quantity_or("f_lo", Dimension::frequency, g.f_lo);
            g.f_hi = t.quantity_or("f_hi", Dimension::frequency, g.f_hi);
            g.gain_floor_db = t.quantity_or("gain_floor_db", Dimension::dimensionless, g.gain_floor_db);
            g.min_state_separation =
                t.quantity_or("min_state_separation", Dimension::dimensionless, g.min_state_separation);
            g.stub_count = t.integer_or("stub_count", g.stub_count);
            g.min_high_gain_fraction =
                t.quantity_or("min_high_gain_fraction", Dimension::dimensionless, g.min_high_gain_fraction);
        }
        if (s.has("bounds")) {
            Fields b(s.node("bounds"), "synth.bounds");
            b.allow({"lead_in", "spacing", "lead_out", "stub_length"});
            auto& r = sp.bounds;
            r.lead_in = detail::parse_range(b, "lead_in", r.lead_in);
            r.spacing = detail::parse_range(b, "spacing", r.spacing);
            r.lead_out = detail::parse_range(b, "lead_out", r.lead_out);
            r.stub_length = detail::parse_range(b, "stub_length", r.stub_length);
        }
        auto& tm = sp.tmpl;
        tm.substrate = cfg.substrate;
        tm.z0 = cfg.z0;
        if (s.has("template")) {
            Fields t(s.node("template"), "synth.template");
            t.allow({"main_width", "stub_width", "cell", "dc_block", "bias_choke", "port_block", "termination"});
            tm.main_width = t.quantity_or("main_width", Dimension::length, tm.main_width);
            tm.stub_width = t.quantity_or("stub_width", Dimension::length, tm.stub_width);
            if (t.has("cell")) tm.cell = cell(t, "cell");
            tm.dc_block = t.has("dc_block") ? std::optional(cap(t, "dc_block")) : std::nullopt;
            tm.bias_choke = t.has("bias_choke") ? std::optional(ind(t, "bias_choke")) : std::nullopt;
            tm.port_block = t.has("port_block") ? std::optional(cap(t, "port_block")) : std::nullopt;
            if (t.has("termination"))
                tm.termination = detail::parse_termination(t.text("termination"), "synth.template");
        }
        if (s.has("options")) {
            Fields o(s.node("options"), "synth.options");
            o.allow({"max_evaluations", "population_factor", "weight", "crossover", "grid_points", "threads"});
            auto& op = sp.options;
            op.max_evaluations = o.integer_or("max_evaluations", op.max_evaluations);
            op.population_factor = o.integer_or("population_factor", op.population_factor);
            op.weight = o.quantity_or("weight", Dimension::dimensionless, op.weight);
            op.crossover = o.quantity_or("crossover", Dimension::dimensionless, op.crossover);
            op.grid_points = o.integer_or("grid_points", op.grid_points);
            op.threads = static_cast<unsigned>(o.integer_or("threads", op.threads));
        }
        try {
            sp.targets.validate();
            sp.bounds.validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError(std::string("synth: ") + e.what());
        }
        cfg.synth = sp;
    }
    return cfg;
}

inline ArtifactConfig parse_config(std::string_view text) {
    try {
        return parse_config_node(YAML::Load(std::string(text)));
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("YAML: ") + e.what());
    }
}

inline ArtifactConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace detail {

inline void emit_kv(YAML::Emitter& out, const char* key, double v, Dimension d) {
    out << YAML::Key << key << YAML::Value << format_quantity(v, d);
}

inline void emit_capacitor(YAML::Emitter& out, const LumpedCapSpec& c) {
    out << YAML::BeginMap;
    emit_kv(out, "capacitance", c.capacitance, Dimension::capacitance);
    emit_kv(out, "esl", c.esl, Dimension::inductance);
    emit_kv(out, "esr", c.esr, Dimension::resistance);
    out << YAML::EndMap;
}

inline void emit_inductor(YAML::Emitter& out, const LumpedIndSpec& l) {
    out << YAML::BeginMap;
    emit_kv(out, "inductance", l.inductance, Dimension::inductance);
    emit_kv(out, "c_par", l.c_par, Dimension::capacitance);
    emit_kv(out, "r_series", l.r_series, Dimension::resistance);
    out << YAML::EndMap;
}

inline void emit_cell(YAML::Emitter& out, const PlasmaCellModel& c) {
    out << YAML::BeginMap;
    emit_kv(out, "c_off", c.c_off, Dimension::capacitance);
    emit_kv(out, "r_on", c.r_on, Dimension::resistance);
    emit_kv(out, "c_sheath", c.c_sheath, Dimension::capacitance);
    emit_kv(out, "gap", c.geometry.gap, Dimension::length);
    emit_kv(out, "area", c.geometry.area, Dimension::area);
    emit_kv(out, "breakdown_voltage", c.breakdown_voltage, Dimension::voltage);
    emit_kv(out, "bias_fraction", c.bias_fraction, Dimension::dimensionless);
    emit_kv(out, "bias_current_limit", c.bias_current_limit, Dimension::current);
    if (c.plasma) {
        out << YAML::Key << "plasma" << YAML::Value << YAML::Flow << YAML::BeginMap;
        emit_kv(out, "n_e", c.plasma->n_e, Dimension::density);
        emit_kv(out, "nu_m", c.plasma->nu_m, Dimension::rate);
        out << YAML::EndMap;
    }
    out << YAML::EndMap;
}

inline void emit_range(YAML::Emitter& out, const char* key, const ParameterRange& r) {
    out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq
        << format_quantity(r.lo, Dimension::length) << format_quantity(r.hi, Dimension::length) << YAML::EndSeq;
}

} // namespace detail

/// Deterministic YAML rendering; parse_config(emit_config(c)) reproduces c.
/// Tuner and template components are written inline.
inline std::string emit_config(const ArtifactConfig& cfg) {
    using detail::emit_kv;
    YAML::Emitter out;
    out << YAML::BeginMap;
    emit_kv(out, "z0", cfg.z0, Dimension::resistance);

    out << YAML::Key << "substrate" << YAML::Value << YAML::BeginMap;
    emit_kv(out, "eps_r", cfg.substrate.eps_r, Dimension::dimensionless);
    emit_kv(out, "tan_delta", cfg.substrate.tan_delta, Dimension::dimensionless);
    emit_kv(out, "height", cfg.substrate.height, Dimension::length);
    emit_kv(out, "copper_thickness", cfg.substrate.copper_thickness, Dimension::length);
    emit_kv(out, "conductivity", cfg.substrate.conductivity, Dimension::conductivity);
    out << YAML::EndMap;

    if (!cfg.capacitors.empty()) {
        out << YAML::Key << "capacitors" << YAML::Value << YAML::BeginMap;
        for (const auto& [id, c] : cfg.capacitors) {
            out << YAML::Key << id << YAML::Value;
            detail::emit_capacitor(out, c);
        }
        out << YAML::EndMap;
    }
    if (!cfg.inductors.empty()) {
        out << YAML::Key << "inductors" << YAML::Value << YAML::BeginMap;
        for (const auto& [id, l] : cfg.inductors) {
            out << YAML::Key << id << YAML::Value;
            detail::emit_inductor(out, l);
        }
        out << YAML::EndMap;
    }
    if (!cfg.cells.empty()) {
        out << YAML::Key << "cells" << YAML::Value << YAML::BeginMap;
        for (const auto& [id, c] : cfg.cells) {
            out << YAML::Key << id << YAML::Value;
            detail::emit_cell(out, c);
        }
        out << YAML::EndMap;
    }

    if (cfg.tuner) {
        const auto& t = *cfg.tuner;
        out << YAML::Key << "tuner" << YAML::Value << YAML::BeginMap;
        if (t.port_block) {
            out << YAML::Key << "port_block" << YAML::Value;
            detail::emit_capacitor(out, *t.port_block);
        }
        out << YAML::Key << "sections" << YAML::Value << YAML::BeginSeq;
        for (const auto& s : t.main_sections) {
            out << YAML::Flow << YAML::BeginMap;
            emit_kv(out, "width", s.width, Dimension::length);
            emit_kv(out, "length", s.length, Dimension::length);
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
        out << YAML::Key << "stubs" << YAML::Value << YAML::BeginSeq;
        for (const auto& b : t.stubs) {
            out << YAML::BeginMap;
            emit_kv(out, "width", b.stub_line.width, Dimension::length);
            emit_kv(out, "length", b.stub_line.length, Dimension::length);
            out << YAML::Key << "termination" << YAML::Value << detail::termination_name(b.termination);
            if (b.cell) {
                out << YAML::Key << "cell" << YAML::Value;
                detail::emit_cell(out, *b.cell);
            }
            if (b.dc_block) {
                out << YAML::Key << "dc_block" << YAML::Value;
                detail::emit_capacitor(out, *b.dc_block);
            }
            if (b.bias_choke) {
                out << YAML::Key << "bias_choke" << YAML::Value;
                detail::emit_inductor(out, *b.bias_choke);
            }
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
        out << YAML::EndMap;
    }

    if (cfg.sweep) {
        out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
        emit_kv(out, "start", cfg.sweep->start, Dimension::frequency);
        emit_kv(out, "stop", cfg.sweep->stop, Dimension::frequency);
        out << YAML::Key << "count" << YAML::Value << std::to_string(cfg.sweep->count);
        out << YAML::EndMap;
    }

    if (cfg.transient) {
        const auto& ts = *cfg.transient;
        out << YAML::Key << "transient" << YAML::Value << YAML::BeginMap;
        emit_kv(out, "tau_on", ts.tau_on, Dimension::time);
        emit_kv(out, "tau_off", ts.tau_off, Dimension::time);
        emit_kv(out, "n_e_on", ts.n_e_on, Dimension::density);
        emit_kv(out, "f_cw", ts.f_cw, Dimension::frequency);
        emit_kv(out, "t_end", ts.t_end, Dimension::time);
        emit_kv(out, "dt", ts.dt, Dimension::time);
        emit_kv(out, "settle_fraction", ts.settle_fraction, Dimension::dimensionless);
        out << YAML::EndMap;
    }

    if (cfg.fit_fixture) {
        out << YAML::Key << "fit" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "fixture" << YAML::Value << YAML::Flow << YAML::BeginMap;
        emit_kv(out, "width", cfg.fit_fixture->width, Dimension::length);
        emit_kv(out, "length", cfg.fit_fixture->length, Dimension::length);
        out << YAML::EndMap << YAML::EndMap;
    }

    if (cfg.synth) {
        const auto& sp = *cfg.synth;
        out << YAML::Key << "synth" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "seed" << YAML::Value << std::to_string(sp.seed);
        out << YAML::Key << "targets" << YAML::Value << YAML::BeginMap;
        emit_kv(out, "f_lo", sp.targets.f_lo, Dimension::frequency);
        emit_kv(out, "f_hi", sp.targets.f_hi, Dimension::frequency);
        emit_kv(out, "gain_floor_db", sp.targets.gain_floor_db, Dimension::dimensionless);
        emit_kv(out, "min_state_separation", sp.targets.min_state_separation, Dimension::dimensionless);
        out << YAML::Key << "stub_count" << YAML::Value << std::to_string(sp.targets.stub_count);
        emit_kv(out, "min_high_gain_fraction", sp.targets.min_high_gain_fraction, Dimension::dimensionless);
        out << YAML::EndMap;
        out << YAML::Key << "bounds" << YAML::Value << YAML::BeginMap;
        detail::emit_range(out, "lead_in", sp.bounds.lead_in);
        detail::emit_range(out, "spacing", sp.bounds.spacing);
        detail::emit_range(out, "lead_out", sp.bounds.lead_out);
        detail::emit_range(out, "stub_length", sp.bounds.stub_length);
        out << YAML::EndMap;
        out << YAML::Key << "template" << YAML::Value << YAML::BeginMap;
        emit_kv(out, "main_width", sp.tmpl.main_width, Dimension::length);
        emit_kv(out, "stub_width", sp.tmpl.stub_width, Dimension::length);
        out << YAML::Key << "termination" << YAML::Value << detail::termination_name(sp.tmpl.termination);
        out << YAML::Key << "cell" << YAML::Value;
        detail::emit_cell(out, sp.tmpl.cell);
        if (sp.tmpl.dc_block) {
            out << YAML::Key << "dc_block" << YAML::Value;
            detail::emit_capacitor(out, *sp.tmpl.dc_block);
        }
        if (sp.tmpl.bias_choke) {
            out << YAML::Key << "bias_choke" << YAML::Value;
            detail::emit_inductor(out, *sp.tmpl.bias_choke);
        }
        if (sp.tmpl.port_block) {
            out << YAML::Key << "port_block" << YAML::Value;
            detail::emit_capacitor(out, *sp.tmpl.port_block);
        }
        out << YAML::EndMap;
        out << YAML::Key << "options" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "max_evaluations" << YAML::Value << std::to_string(sp.options.max_evaluations);
        out << YAML::Key << "population_factor" << YAML::Value << std::to_string(sp.options.population_factor);
        emit_kv(out, "weight", sp.options.weight, Dimension::dimensionless);
        emit_kv(out, "crossover", sp.options.crossover, Dimension::dimensionless);
        out << YAML::Key << "grid_points" << YAML::Value << std::to_string(sp.options.grid_points);
        out << YAML::EndMap;
        out << YAML::EndMap;
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

inline void save_config(const ArtifactConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write config file '" + path + "'");
    out << emit_config(cfg);
    if (!out) throw Error("write to '" + path + "' failed");
}

} // namespace plasmatune
