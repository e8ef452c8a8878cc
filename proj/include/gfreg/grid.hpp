#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace gfreg {

// Uniform periodic grid: x_j = j * period / n, frequency lattice
// xi_k = 2 pi k / period with k running over the signed FFT index.
struct GridSpec {
    std::size_t n = 4096;
    double period = 16.0 * std::numbers::pi;

    void validate() const {
        if (n < 256 || (n & (n - 1)) != 0)
            throw invalid_config("grid: n must be a power of two >= 256");
        if (!(period > 0.0))
            throw invalid_config("grid: period must be positive");
    }

    double dx() const { return period / static_cast<double>(n); }
    double dxi() const { return 2.0 * std::numbers::pi / period; }
    double x(std::size_t j) const { return static_cast<double>(j) * dx(); }

    long signed_index(std::size_t k) const {
        return k <= n / 2 ? static_cast<long>(k)
                          : static_cast<long>(k) - static_cast<long>(n);
    }
    double xi(std::size_t k) const { return static_cast<double>(signed_index(k)) * dxi(); }
    double xi_max() const { return static_cast<double>(n / 2) * dxi(); }

    // Smallest admissible mollification scale: at eps_min the band annulus
    // 1/(2 eps) <= |xi| <= 1/eps still sits strictly inside the representable
    // frequency range with a factor-4 guard before the Nyquist edge. Below it
    // the dilated profiles never leave their plateau and every scaling
    // estimate degenerates.
    double eps_min() const { return 4.0 / xi_max(); }

    double center() const { return 0.5 * period; }

    bool operator==(const GridSpec&) const = default;
};

// Half-open interval [a, b) inside the period; stands in for a relatively
// compact subwindow of the domain.
struct Window {
    double a = 0.0;
    double b = 0.0;

    void validate(const GridSpec& g) const {
        if (!(0.0 <= a && a < b && b <= g.period))
            throw invalid_config("window: need 0 <= a < b <= period");
    }
    bool contains(double x) const { return a <= x && x < b; }
    double length() const { return b - a; }

    // lattice cells whose node falls in [a, b)
    std::size_t lo_cell(const GridSpec& g) const {
        return static_cast<std::size_t>(std::ceil(a / g.dx() - 1e-9));
    }
    std::size_t hi_cell(const GridSpec& g) const {
        return std::min(g.n, static_cast<std::size_t>(std::ceil(b / g.dx() - 1e-9)));
    }

    static Window full(const GridSpec& g) { return Window{0.0, g.period}; }

    bool operator==(const Window&) const = default;
};

// count log-spaced points from `from` to `to`, endpoints inclusive.
// Scale grids in this library are generated decreasing (coarse to fine).
inline std::vector<double> log_grid(double from, double to, std::size_t count) {
    if (!(from > 0.0) || !(to > 0.0)) throw invalid_config("log_grid: endpoints must be positive");
    if (count < 2) throw invalid_config("log_grid: need at least 2 points");
    std::vector<double> out(count);
    const double la = std::log(from), lb = std::log(to);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        out[i] = std::exp(la + (lb - la) * t);
    }
    out.front() = from;
    out.back() = to;
    return out;
}

// Default scale grids. All slopes and exponents in this library are fitted on
// these; they span the admissible window [eps_min, 1) with geometric spacing.
namespace grids {

// band-scale grid for Zygmund functionals (quarter-octave or finer)
inline std::vector<double> eta_default(const GridSpec& g, std::size_t count = 32) {
    return log_grid(std::pow(2.0, -0.25), g.eps_min() * std::pow(2.0, 0.25), count);
}

// denser grid for exponent regression
inline std::vector<double> eta_exponent(const GridSpec& g, std::size_t count = 48) {
    return log_grid(std::pow(2.0, -0.25), g.eps_min() * std::pow(2.0, 0.25), count);
}

// mollification-scale grid for membership slope tests
inline std::vector<double> eps_membership(const GridSpec& g, std::size_t count = 16) {
    return log_grid(0.5, g.eps_min(), count);
}

// mollification-scale grid for calibration fits
inline std::vector<double> eps_calibration(const GridSpec& g, std::size_t count = 32) {
    return log_grid(0.5, g.eps_min(), count);
}

// wavelet scale grid for decay maps
inline std::vector<double> y_decay(const GridSpec& g, std::size_t count = 24) {
    return log_grid(0.5, g.eps_min(), count);
}

// mollification-scale grid for the smoothness dichotomy; starts where the
// lacunary catalog member's base mode (xi = 8) already sits inside the
// mollifier plateau, so every bank member responds at every scale
inline std::vector<double> eps_smoothness(const GridSpec& g, std::size_t count = 16) {
    return log_grid(1.0 / 16.0, g.eps_min(), count);
}

}

}
