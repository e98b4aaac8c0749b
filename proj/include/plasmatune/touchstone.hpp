#pragma once

// Touchstone v1.1 reader/writer for 2-port S-parameter files (.s2p).
// Data columns per row: f, S11, S21, S12, S22 (note S21 before S12).

#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "plasmatune/errors.hpp"
#include "plasmatune/network.hpp"
#include "plasmatune/units.hpp"

namespace plasmatune {

enum class TouchstoneFormat { RI, MA, DB };
enum class FrequencyUnit { Hz, kHz, MHz, GHz };

inline double unit_scale(FrequencyUnit u) {
    switch (u) {
    case FrequencyUnit::Hz: return 1.0;
    case FrequencyUnit::kHz: return 1e3;
    case FrequencyUnit::MHz: return 1e6;
    case FrequencyUnit::GHz: return 1e9;
    }
    return 1.0;
}

inline const char* to_string(FrequencyUnit u) {
    switch (u) {
    case FrequencyUnit::Hz: return "Hz";
    case FrequencyUnit::kHz: return "kHz";
    case FrequencyUnit::MHz: return "MHz";
    case FrequencyUnit::GHz: return "GHz";
    }
    return "Hz";
}

inline const char* to_string(TouchstoneFormat f) {
    switch (f) {
    case TouchstoneFormat::RI: return "RI";
    case TouchstoneFormat::MA: return "MA";
    case TouchstoneFormat::DB: return "DB";
    }
    return "RI";
}

inline TouchstoneFormat parse_touchstone_format(std::string_view s) {
    std::string u(s);
    for (auto& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (u == "RI") return TouchstoneFormat::RI;
    if (u == "MA") return TouchstoneFormat::MA;
    if (u == "DB") return TouchstoneFormat::DB;
    throw InvalidArgument("unknown Touchstone format '" + std::string(s) + "' (RI, MA or DB)");
}

struct TouchstoneFile {
    FrequencyUnit unit = FrequencyUnit::GHz; // v1.1 defaults
    TouchstoneFormat format = TouchstoneFormat::MA;
    double reference_resistance = 50.0;
    std::vector<std::string> comments; // text after '!', in file order
    NetworkSweep sweep;
};

namespace detail {

inline double deg(double rad) { return rad * 180.0 / kPi; }
inline double rad(double deg) { return deg * kPi / 180.0; }

inline Complex decode_pair(double x, double y, TouchstoneFormat f) {
    switch (f) {
    case TouchstoneFormat::RI: return {x, y};
    case TouchstoneFormat::MA: return std::polar(x, rad(y));
    case TouchstoneFormat::DB: return std::polar(std::pow(10.0, x / 20.0), rad(y));
    }
    return {};
}

inline std::array<double, 2> encode_pair(Complex z, TouchstoneFormat f) {
    switch (f) {
    case TouchstoneFormat::RI: return {z.real(), z.imag()};
    case TouchstoneFormat::MA: return {std::abs(z), deg(std::arg(z))};
    case TouchstoneFormat::DB: return {20.0 * std::log10(std::abs(z)), deg(std::arg(z))};
    }
    return {};
}

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream is{std::string(s)};
    for (std::string tok; is >> tok;) out.push_back(tok);
    return out;
}

inline std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

} // namespace detail

inline TouchstoneFile parse_touchstone(std::istream& in) {
    TouchstoneFile file;
    bool have_options = false;
    std::vector<double> freqs;
    std::vector<SMatrix2> params;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view body(line);
        if (const auto bang = body.find('!'); bang != std::string_view::npos) {
            file.comments.emplace_back(body.substr(bang + 1));
            body = body.substr(0, bang);
        }
        const auto tokens = detail::split_ws(body);
        if (tokens.empty()) continue;

        if (tokens[0].front() == '#') {
            if (have_options) throw ParseError("duplicate option line", line_no);
            have_options = true;
            std::vector<std::string> opts;
            if (tokens[0].size() > 1) opts.push_back(tokens[0].substr(1));
            opts.insert(opts.end(), tokens.begin() + 1, tokens.end());
            for (std::size_t i = 0; i < opts.size(); ++i) {
                const std::string u = detail::upper(opts[i]);
                if (u == "HZ") file.unit = FrequencyUnit::Hz;
                else if (u == "KHZ") file.unit = FrequencyUnit::kHz;
                else if (u == "MHZ") file.unit = FrequencyUnit::MHz;
                else if (u == "GHZ") file.unit = FrequencyUnit::GHz;
                else if (u == "S") continue;
                else if (u == "Y" || u == "Z" || u == "H" || u == "G")
                    throw ParseError("only S-parameter files are supported", line_no);
                else if (u == "RI") file.format = TouchstoneFormat::RI;
                else if (u == "MA") file.format = TouchstoneFormat::MA;
                else if (u == "DB") file.format = TouchstoneFormat::DB;
                else if (u == "R") {
                    if (i + 1 >= opts.size()) throw ParseError("option 'R' needs a value", line_no);
                    try {
                        std::size_t used = 0;
                        file.reference_resistance = std::stod(opts[++i], &used);
                        if (used != opts[i].size()) throw std::invalid_argument("trailing");
                    } catch (const std::exception&) {
                        throw ParseError("bad reference resistance '" + opts[i] + "'", line_no);
                    }
                    if (!(file.reference_resistance > 0.0))
                        throw ParseError("reference resistance must be positive", line_no);
                } else {
                    throw ParseError("unknown option '" + opts[i] + "'", line_no);
                }
            }
            continue;
        }

        if (tokens[0].front() == '[') throw ParseError("Touchstone 2.0 keywords are not supported", line_no);
        if (!have_options) throw ParseError("data before the option line", line_no);
        if (tokens.size() != 9)
            throw ParseError("2-port row needs 9 columns, found " + std::to_string(tokens.size()), line_no);
        std::array<double, 9> v{};
        for (std::size_t i = 0; i < 9; ++i) {
            try {
                std::size_t used = 0;
                v[i] = std::stod(tokens[i], &used);
                if (used != tokens[i].size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ParseError("bad number '" + tokens[i] + "'", line_no);
            }
        }
        const double f = v[0] * unit_scale(file.unit);
        if (!freqs.empty() && !(f > freqs.back())) throw ParseError("frequencies must be strictly increasing", line_no);
        if (!(f > 0.0)) throw ParseError("frequencies must be positive", line_no);
        SMatrix2 s;
        s.s11 = detail::decode_pair(v[1], v[2], file.format);
        s.s21 = detail::decode_pair(v[3], v[4], file.format);
        s.s12 = detail::decode_pair(v[5], v[6], file.format);
        s.s22 = detail::decode_pair(v[7], v[8], file.format);
        s.z0 = file.reference_resistance;
        freqs.push_back(f);
        params.push_back(s);
    }
    if (!have_options) throw ParseError("missing option line", 0);
    file.sweep = NetworkSweep(FrequencyGrid(std::move(freqs)), std::move(params));
    return file;
}

inline TouchstoneFile parse_touchstone(std::string_view text) {
    std::istringstream is{std::string(text)};
    return parse_touchstone(is);
}

inline NetworkSweep read_touchstone(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open Touchstone file '" + path + "'");
    return parse_touchstone(in).sweep;
}

/// Deterministic text: fixed header comment, option line, one row per point.
inline std::string format_touchstone(const NetworkSweep& sweep, TouchstoneFormat format,
                                     FrequencyUnit unit = FrequencyUnit::Hz) {
    if (sweep.empty()) throw InvalidArgument("cannot write an empty sweep");
    const double z0 = sweep.params.front().z0;
    for (const auto& s : sweep.params)
        if (s.z0 != z0) throw InvalidArgument("Touchstone v1.1 needs one reference impedance for all points");
    std::string out = "! plasmatune 2-port S-parameters\n";
    out += std::string("# ") + to_string(unit) + " S " + to_string(format) + " R " + format_number(z0) + "\n";
    const double scale = unit_scale(unit);
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const auto& s = sweep.params[i];
        out += format_number(sweep.grid[i] / scale);
        for (Complex z : {s.s11, s.s21, s.s12, s.s22}) {
            const auto p = detail::encode_pair(z, format);
            out += ' ';
            out += format_number(p[0]);
            out += ' ';
            out += format_number(p[1]);
        }
        out += '\n';
    }
    return out;
}

inline void write_touchstone(const NetworkSweep& sweep, const std::string& path,
                             TouchstoneFormat format = TouchstoneFormat::RI,
                             FrequencyUnit unit = FrequencyUnit::Hz) {
    const std::string text = format_touchstone(sweep, format, unit);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write Touchstone file '" + path + "'");
    out << text;
    if (!out) throw Error("write to '" + path + "' failed");
}

} // namespace plasmatune
