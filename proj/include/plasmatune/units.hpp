#pragma once

// Quantities with explicit unit suffixes ("7.5pF", "30mil", "3.93GHz").

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plasmatune/errors.hpp"

namespace plasmatune {

enum class Dimension {
    dimensionless,
    capacitance,
    inductance,
    resistance,
    length,
    area,
    frequency,
    time,
    voltage,
    current,
    density,
    rate,
    conductivity,
};

inline const char* si_unit(Dimension d) {
    switch (d) {
    case Dimension::dimensionless: return "";
    case Dimension::capacitance: return "F";
    case Dimension::inductance: return "H";
    case Dimension::resistance: return "ohm";
    case Dimension::length: return "m";
    case Dimension::area: return "m2";
    case Dimension::frequency: return "Hz";
    case Dimension::time: return "s";
    case Dimension::voltage: return "V";
    case Dimension::current: return "A";
    case Dimension::density: return "/m3";
    case Dimension::rate: return "/s";
    case Dimension::conductivity: return "S/m";
    }
    return "";
}

namespace detail {

inline bool metric_prefix(std::string_view p, double& scale) {
    static const std::pair<std::string_view, double> table[] = {
        {"", 1.0},    {"f", 1e-15}, {"p", 1e-12}, {"n", 1e-9}, {"u", 1e-6}, {"\xC2\xB5", 1e-6},
        {"m", 1e-3},  {"c", 1e-2},  {"k", 1e3},   {"M", 1e6},  {"G", 1e9},  {"T", 1e12},
    };
    for (const auto& [name, s] : table) {
        if (p == name) {
            scale = s;
            return true;
        }
    }
    return false;
}

inline bool prefixed(std::string_view unit, std::string_view base, double& scale) {
    if (unit.size() < base.size() || unit.substr(unit.size() - base.size()) != base) return false;
    return metric_prefix(unit.substr(0, unit.size() - base.size()), scale);
}

inline bool unit_scale(std::string_view unit, Dimension d, double& scale) {
    switch (d) {
    case Dimension::dimensionless: return false;
    case Dimension::capacitance: return prefixed(unit, "F", scale);
    case Dimension::inductance: return prefixed(unit, "H", scale);
    case Dimension::resistance:
        return prefixed(unit, "ohm", scale) || prefixed(unit, "Ohm", scale) || prefixed(unit, "\xCE\xA9", scale);
    case Dimension::length:
        if (unit == "mil") return scale = 25.4e-6, true;
        if (unit == "in") return scale = 25.4e-3, true;
        return prefixed(unit, "m", scale);
    case Dimension::area:
        if (unit.size() >= 2 && unit.substr(unit.size() - 2) == "m2" && prefixed(unit.substr(0, unit.size() - 1), "m", scale)) {
            scale *= scale;
            return true;
        }
        return false;
    case Dimension::frequency: return prefixed(unit, "Hz", scale);
    case Dimension::time: return prefixed(unit, "s", scale);
    case Dimension::voltage: return prefixed(unit, "V", scale);
    case Dimension::current: return prefixed(unit, "A", scale);
    case Dimension::density:
        if (unit == "/m3" || unit == "m^-3") return scale = 1.0, true;
        if (unit == "/cm3" || unit == "cm^-3") return scale = 1e6, true;
        return false;
    case Dimension::rate:
        if (unit == "/s" || unit == "1/s" || unit == "s^-1") return scale = 1.0, true;
        return false;
    case Dimension::conductivity: return prefixed(unit, "S/m", scale);
    }
    return false;
}

} // namespace detail

/// Parse a number with the unit suffix required by `d`. Dimensionless values
/// take no suffix; every other dimension requires one.
inline double parse_quantity(std::string_view text, Dimension d) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data())
        throw ConfigError("'" + std::string(text) + "' is not a number");
    const std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(text.data() + text.size() - ptr)));
    if (d == Dimension::dimensionless) {
        if (!unit.empty()) throw ConfigError("'" + std::string(text) + "' must be a plain number");
        return value;
    }
    if (unit.empty())
        throw ConfigError("'" + std::string(text) + "' needs an explicit unit (" + si_unit(d) + ")");
    double scale = 1.0;
    if (!detail::unit_scale(unit, d, scale))
        throw ConfigError("unit '" + std::string(unit) + "' in '" + std::string(text) + "' is not a " +
                          si_unit(d) + " unit");
    return value * scale;
}

/// Shortest-round-trip-safe decimal text (17 significant digits).
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// SI value with its base unit suffix; parse_quantity reads it back exactly.
inline std::string format_quantity(double v, Dimension d) { return format_number(v) + si_unit(d); }

} // namespace plasmatune
