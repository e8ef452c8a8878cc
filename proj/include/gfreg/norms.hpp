#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"
#include "lp_frame.hpp"
#include "sampled.hpp"

namespace gfreg {

// Lebesgue norm on a window; p = inf is the sup norm, finite p a Riemann sum.
inline double lp_norm(const SampledFunction& f, double p, const Window& w) {
    w.validate(f.grid);
    const std::size_t lo = w.lo_cell(f.grid), hi = w.hi_cell(f.grid);
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t j = lo; j < hi; ++j) m = std::max(m, std::abs(f.values[j]));
        return m;
    }
    if (!(p >= 1.0)) throw invalid_config("lp_norm: p must be >= 1 or inf");
    double acc = 0.0;
    for (std::size_t j = lo; j < hi; ++j) acc += std::pow(std::abs(f.values[j]), p);
    return std::pow(acc * f.grid.dx(), 1.0 / p);
}

inline double lp_norm(const SampledFunction& f, double p = std::numeric_limits<double>::infinity()) {
    return lp_norm(f, p, Window::full(f.grid));
}

// max over derivative orders 0..m of the L^p norm
inline double sobolev_norm(const SampledFunction& f, int m, double p, const Window& w) {
    if (m < 0) throw invalid_config("sobolev_norm: order must be >= 0");
    double best = lp_norm(f, p, w);
    SampledFunction d = f;
    for (int i = 1; i <= m; ++i) {
        d = derivative(d, 1);
        best = std::max(best, lp_norm(d, p, w));
    }
    return best;
}

inline double sobolev_norm(const SampledFunction& f, int m,
                           double p = std::numeric_limits<double>::infinity()) {
    return sobolev_norm(f, m, p, Window::full(f.grid));
}

namespace detail {

// sup over window-interior pairs of |g(x) - g(x')| / |x - x'|^tau, scanned
// per lattice gap so the pow() count stays linear in the gap bound
inline double hoelder_quotient(const std::vector<cplx>& v, const GridSpec& g, double tau,
                               const Window& w, std::size_t gap_cells) {
    const std::size_t lo = w.lo_cell(g), hi = w.hi_cell(g);
    double semi = 0.0;
    for (std::size_t d = 1; d <= gap_cells; ++d) {
        if (lo + d >= hi) break;
        double best = 0.0;
        for (std::size_t j = lo; j + d < hi; ++j)
            best = std::max(best, std::norm(v[j + d] - v[j]));
        semi = std::max(semi, std::sqrt(best) / std::pow(static_cast<double>(d) * g.dx(), tau));
    }
    return semi;
}

}

// Default pair separation for the Hoelder quotient: a quarter period, except
// at tau = 1 where the Lipschitz quotient of a kink is only attained locally
// and long gaps just dilute it.
inline double hoelder_default_gap(const GridSpec& g, double tau) {
    return tau >= 1.0 - 1e-12 ? 8.0 * g.dx() : 0.25 * g.period;
}

inline double hoelder_seminorm(const SampledFunction& f, int k, double tau, const Window& w,
                               double max_gap = 0.0) {
    if (!(tau > 0.0 && tau <= 1.0)) throw invalid_config("hoelder: tau must be in (0, 1]");
    if (k < 0) throw invalid_config("hoelder: k must be >= 0");
    w.validate(f.grid);
    if (max_gap <= 0.0) max_gap = hoelder_default_gap(f.grid, tau);
    const auto gap_cells = static_cast<std::size_t>(
        std::max(1.0, std::floor(max_gap / f.grid.dx() + 1e-9)));
    const SampledFunction g = k == 0 ? f : derivative(f, k);
    return detail::hoelder_quotient(g.values, f.grid, tau, w, gap_cells);
}

inline double hoelder_seminorm(const SampledFunction& f, int k, double tau) {
    return hoelder_seminorm(f, k, tau, Window::full(f.grid));
}

// C^{k,tau} norm: W^{k,inf} part plus the top-order quotient
inline double hoelder_norm(const SampledFunction& f, int k, double tau, const Window& w,
                           double max_gap = 0.0) {
    return sobolev_norm(f, k, std::numeric_limits<double>::infinity(), w) +
           hoelder_seminorm(f, k, tau, w, max_gap);
}

inline double hoelder_norm(const SampledFunction& f, int k, double tau) {
    return hoelder_norm(f, k, tau, Window::full(f.grid));
}

// Frame-based Zygmund-type functional of order r: low-pass part at unit scale
// plus the worst weighted band response over the eta grid.
inline double zygmund_functional(const SampledFunction& u, double r, const LPFrame& frame,
                                 const std::vector<double>& eta_grid) {
    if (eta_grid.empty()) throw invalid_config("zygmund_functional: empty eta grid");
    double out = mollify(u, 1.0, frame).sup_abs();
    for (const double eta : eta_grid) {
        frame.require_scale(eta);
        out = std::max(out, std::pow(eta, -r) * band_project(u, eta, frame).sup_abs());
    }
    return out;
}

inline double zygmund_functional(const SampledFunction& u, double r, const LPFrame& frame) {
    return zygmund_functional(u, r, frame, grids::eta_default(frame.grid));
}

}
