#pragma once

// Two-port network algebra. ABCD (chain) matrices are the composition
// representation; S-parameters are what gets reported and stored.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "plasmatune/errors.hpp"

namespace plasmatune {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kDefaultZ0 = 50.0;

inline bool is_infinite(Complex z) { return std::isinf(z.real()) || std::isinf(z.imag()); }

/// Relative comparison when either magnitude exceeds 1e-6, absolute below.
inline bool near(Complex a, Complex b, double tol) {
    const double scale = std::max(std::abs(a), std::abs(b));
    const double diff = std::abs(a - b);
    return scale > 1e-6 ? diff <= tol * scale : diff <= tol;
}

inline bool near(double a, double b, double tol) { return near(Complex(a), Complex(b), tol); }

/// Parallel combination that treats an infinite impedance as an open.
inline Complex parallel(Complex z1, Complex z2) {
    if (is_infinite(z1)) return z2;
    if (is_infinite(z2)) return z1;
    const Complex sum = z1 + z2;
    if (sum == Complex(0.0)) return Complex(0.0);
    return z1 * z2 / sum;
}

/// Strictly increasing list of positive frequencies in Hz.
class FrequencyGrid {
public:
    FrequencyGrid() = default;

    explicit FrequencyGrid(std::vector<double> points) : points_(std::move(points)) {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (!(points_[i] > 0.0) || !std::isfinite(points_[i]))
                throw InvalidArgument("frequency grid points must be finite and positive");
            if (i > 0 && !(points_[i] > points_[i - 1]))
                throw InvalidArgument("frequency grid must be strictly increasing");
        }
    }

    /// Linearly spaced sweep; count == 1 yields just `start`.
    static FrequencyGrid linear(double start, double stop, std::size_t count) {
        if (count == 0) throw InvalidArgument("frequency sweep needs at least one point");
        std::vector<double> pts(count);
        if (count == 1) {
            pts[0] = start;
        } else {
            const double step = (stop - start) / static_cast<double>(count - 1);
            for (std::size_t i = 0; i < count; ++i) pts[i] = start + step * static_cast<double>(i);
            pts.back() = stop;
        }
        return FrequencyGrid(std::move(pts));
    }

    std::span<const double> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    double operator[](std::size_t i) const { return points_[i]; }
    double front() const { return points_.front(); }
    double back() const { return points_.back(); }
    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

private:
    std::vector<double> points_;
};

struct AbcdMatrix {
    Complex a{1.0};
    Complex b{0.0}; // ohms
    Complex c{0.0}; // siemens
    Complex d{1.0};

    static AbcdMatrix identity() { return {}; }

    Complex determinant() const { return a * d - b * c; }

    bool is_reciprocal(double tol = 1e-9) const { return near(determinant(), Complex(1.0), tol); }

    AbcdMatrix inverse() const {
        const Complex det = determinant();
        if (det == Complex(0.0)) throw NonInvertibleError("ABCD matrix is singular");
        return {d / det, -b / det, -c / det, a / det};
    }

    friend AbcdMatrix operator*(const AbcdMatrix& l, const AbcdMatrix& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
                l.c * r.b + l.d * r.d};
    }

    AbcdMatrix& operator*=(const AbcdMatrix& r) { return *this = *this * r; }
};

struct SMatrix2 {
    Complex s11{0.0};
    Complex s12{0.0};
    Complex s21{0.0};
    Complex s22{0.0};
    double z0 = kDefaultZ0;

    bool is_reciprocal(double tol = 1e-9) const { return near(s12, s21, tol); }

    /// Both column norms bounded by one.
    bool is_passive(double tol = 1e-9) const {
        return std::norm(s11) + std::norm(s21) <= 1.0 + tol &&
               std::norm(s12) + std::norm(s22) <= 1.0 + tol;
    }

    /// Deviation of S^H S from the identity (Frobenius norm).
    double unitarity_error() const {
        const Complex m11 = std::conj(s11) * s11 + std::conj(s21) * s21;
        const Complex m12 = std::conj(s11) * s12 + std::conj(s21) * s22;
        const Complex m22 = std::conj(s12) * s12 + std::conj(s22) * s22;
        return std::sqrt(std::norm(m11 - 1.0) + 2.0 * std::norm(m12) + std::norm(m22 - 1.0));
    }
};

/// One S-matrix per grid point.
struct NetworkSweep {
    FrequencyGrid grid;
    std::vector<SMatrix2> params;

    NetworkSweep() = default;
    NetworkSweep(FrequencyGrid g, std::vector<SMatrix2> p) : grid(std::move(g)), params(std::move(p)) {
        if (grid.size() != params.size())
            throw InvalidArgument("network sweep needs one parameter set per frequency");
    }

    std::size_t size() const { return params.size(); }
    bool empty() const { return params.empty(); }
};

inline SMatrix2 abcd_to_s(const AbcdMatrix& m, double z0 = kDefaultZ0) {
    if (!(z0 > 0.0)) throw InvalidArgument("reference impedance must be positive");
    const Complex bn = m.b / z0;
    const Complex cn = m.c * z0;
    const Complex den = m.a + bn + cn + m.d;
    const double scale = std::abs(m.a) + std::abs(bn) + std::abs(cn) + std::abs(m.d);
    if (std::abs(den) <= std::numeric_limits<double>::epsilon() * scale || scale == 0.0)
        throw DegenerateNetworkError("ABCD to S conversion: a*z0 + b + c*z0^2 + d*z0 = 0");
    SMatrix2 s;
    s.s11 = (m.a + bn - cn - m.d) / den;
    s.s12 = 2.0 * m.determinant() / den;
    s.s21 = 2.0 / den;
    s.s22 = (-m.a + bn - cn + m.d) / den;
    s.z0 = z0;
    return s;
}

inline AbcdMatrix s_to_abcd(const SMatrix2& s) {
    if (s.s21 == Complex(0.0)) throw NonInvertibleError("S to ABCD conversion: s21 = 0 (isolated ports)");
    const Complex p = s.s12 * s.s21;
    const Complex den = 2.0 * s.s21;
    AbcdMatrix m;
    m.a = ((1.0 + s.s11) * (1.0 - s.s22) + p) / den;
    m.b = s.z0 * ((1.0 + s.s11) * (1.0 + s.s22) - p) / den;
    m.c = ((1.0 - s.s11) * (1.0 - s.s22) - p) / (den * s.z0);
    m.d = ((1.0 - s.s11) * (1.0 + s.s22) + p) / den;
    return m;
}

inline AbcdMatrix cascade(const AbcdMatrix& left, const AbcdMatrix& right) { return left * right; }

inline AbcdMatrix cascade(std::span<const AbcdMatrix> chain) {
    AbcdMatrix acc;
    for (const auto& m : chain) acc *= m;
    return acc;
}

inline AbcdMatrix series_impedance(Complex z) { return {Complex(1.0), z, Complex(0.0), Complex(1.0)}; }

inline AbcdMatrix shunt_branch_y(Complex y) { return {Complex(1.0), Complex(0.0), y, Complex(1.0)}; }

/// Shunt element given by its impedance. An infinite impedance is an open (identity);
/// a zero impedance has no finite admittance and must go through shunt_branch_y.
inline AbcdMatrix shunt_branch(Complex z_in) {
    if (is_infinite(z_in)) return AbcdMatrix::identity();
    if (z_in == Complex(0.0))
        throw DegenerateNetworkError("shunt_branch: zero impedance short, use shunt_branch_y");
    return shunt_branch_y(1.0 / z_in);
}

/// Uniform transmission line with real characteristic impedance and propagation constant gamma.
inline AbcdMatrix tline_abcd(double z0, Complex gamma, double length) {
    if (length == 0.0) return AbcdMatrix::identity();
    const Complex gl = gamma * length;
    const Complex ch = std::cosh(gl);
    const Complex sh = std::sinh(gl);
    return {ch, z0 * sh, sh / z0, ch};
}

/// Reflection seen at port 1 when port 2 is terminated in gamma_load.
inline Complex input_reflection(const SMatrix2& s, Complex gamma_load) {
    if (std::abs(gamma_load) > 1.0 + 1e-12) throw InvalidArgument("input_reflection: |gamma_load| > 1");
    const Complex den = 1.0 - s.s22 * gamma_load;
    if (std::abs(den) <= std::numeric_limits<double>::epsilon())
        throw ResonantTerminationError("input_reflection: 1 - s22*gamma_load = 0");
    return s.s11 + s.s12 * s.s21 * gamma_load / den;
}

inline Complex reflection_from_impedance(Complex z, double z0 = kDefaultZ0) {
    if (is_infinite(z)) return Complex(1.0);
    return (z - z0) / (z + z0);
}

inline Complex impedance_from_reflection(Complex gamma, double z0 = kDefaultZ0) {
    return z0 * (1.0 + gamma) / (1.0 - gamma);
}

} // namespace plasmatune
