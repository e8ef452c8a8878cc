#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "errors.hpp"
#include "fit.hpp"
#include "grid.hpp"
#include "sampled.hpp"

namespace gfreg {

// C-infinity smoothstep built from the classic bump quotient
//   s(t) = g(t) / (g(t) + g(1-t)),   g(t) = exp(-a / t),
// rewritten as a logistic in h(t) = a/t - a/(1-t):
//   s(t) = 1 / (1 + e^{h(t)}),
// which gives stable closed forms for s' and s'' (both needed analytically:
// s' for the band profile, s'' for endpoint-corrected quadrature of it).
// The sharpness a steepens the transition; larger a pushes the profile's
// derivatives at the band edges down faster, which is what keeps the wavelet
// moment defects at the 1e-11 level on a 4096-point grid.
struct Smoothstep {
    double a = 2.0;

    double s(double t) const {
        if (t <= 1e-12) return 0.0;
        if (t >= 1.0 - 1e-12) return 1.0;
        const double h = a / t - a / (1.0 - t);
        return 1.0 / (1.0 + std::exp(h));
    }

    double s1(double t) const {
        if (t <= 1e-12 || t >= 1.0 - 1e-12) return 0.0;
        const double S = s(t);
        const double hp = -a * (1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t)));
        return -hp * S * (1.0 - S);
    }

    double s2(double t) const {
        if (t <= 1e-12 || t >= 1.0 - 1e-12) return 0.0;
        const double S = s(t);
        const double u = 1.0 - t;
        const double hp = -a * (1.0 / (t * t) + 1.0 / (u * u));
        const double hpp = 2.0 * a / (t * t * t) - 2.0 * a / (u * u * u);
        const double sp = -hp * S * (1.0 - S);
        return -hpp * S * (1.0 - S) - hp * sp * (1.0 - 2.0 * S);
    }
};

// Low-pass profile theta and band profile zeta = -xi * theta'(xi), evaluated
// analytically at any frequency. theta is 1 on |xi| <= 1/2, 0 on |xi| >= 1,
// C-infinity in between; zeta is even and supported on 1/2 <= |xi| <= 1.
struct LPProfile {
    Smoothstep ss;

    double theta(double u) const {
        const double au = std::abs(u);
        if (au <= 0.5) return 1.0;
        if (au >= 1.0) return 0.0;
        return ss.s(2.0 * (1.0 - au));
    }

    // d theta / du, odd in u, analytic (never finite-differenced)
    double theta_prime(double u) const {
        const double au = std::abs(u);
        if (au <= 0.5 || au >= 1.0) return 0.0;
        const double d = -2.0 * ss.s1(2.0 * (1.0 - au));
        return u >= 0.0 ? d : -d;
    }

    double zeta(double u) const {
        const double au = std::abs(u);
        if (au <= 0.5 || au >= 1.0) return 0.0;
        return 2.0 * au * ss.s1(2.0 * (1.0 - au));
    }

    // d zeta / du, odd in u
    double zeta_prime(double u) const {
        const double au = std::abs(u);
        if (au <= 0.5 || au >= 1.0) return 0.0;
        const double d = 2.0 * ss.s1(2.0 * (1.0 - au)) - 4.0 * au * ss.s2(2.0 * (1.0 - au));
        return u >= 0.0 ? d : -d;
    }
};

// The frame: analytic profiles plus their lattice samples and the two
// spatial kernels. phi is the mollifier (inverse transform of theta), psi
// the band kernel (inverse transform of zeta). All operations are pure; a
// built frame is immutable and safe to share.
struct LPFrame {
    GridSpec grid;
    double transition_sharpness = 2.0;
    LPProfile profile;

    std::vector<double> theta_xi;  // theta at lattice frequencies
    std::vector<double> zeta_xi;   // zeta at lattice frequencies
    SampledFunction phi_spatial;
    SampledFunction psi_spatial;

    double eps_floor = 0.0;  // admissible scales are [eps_floor, 1]

    double theta(double u) const { return profile.theta(u); }
    double zeta(double u) const { return profile.zeta(u); }

    void require_scale(double e) const {
        if (!(e >= eps_floor - 1e-15 && e <= 1.0 + 1e-15))
            throw scale_window_error("scale outside admissible window [" +
                                     std::to_string(eps_floor) + ", 1]");
    }
};

inline LPFrame build_frame(const GridSpec& grid, double transition_sharpness = 2.0) {
    grid.validate();
    if (!(transition_sharpness > 0.0))
        throw invalid_config("build_frame: transition sharpness must be positive");

    LPFrame fr;
    fr.grid = grid;
    fr.transition_sharpness = transition_sharpness;
    fr.profile.ss.a = transition_sharpness;
    fr.eps_floor = grid.eps_min();

    // The stored profile is applied as theta(eps xi), so at scale eps its
    // transition band covers xi in [1/(2 eps), 1/eps] and is sampled at
    // spacing dxi. Require >= 64 lattice samples across that band at the
    // finest admissible scale; coarser grids cannot resolve the transition.
    const double band_samples = 1.0 / (2.0 * fr.eps_floor * grid.dxi());
    if (band_samples < 64.0)
        throw resolution_error("build_frame: grid too coarse to resolve the transition band");

    fr.theta_xi.resize(grid.n);
    fr.zeta_xi.resize(grid.n);
    std::vector<cplx> ctheta(grid.n), czeta(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double u = grid.xi(k);
        fr.theta_xi[k] = fr.profile.theta(u);
        fr.zeta_xi[k] = fr.profile.zeta(u);
        ctheta[k] = cplx(fr.theta_xi[k] / grid.period, 0.0);
        czeta[k] = cplx(fr.zeta_xi[k] / grid.period, 0.0);
    }
    fr.phi_spatial = SampledFunction::from_spectrum(grid, std::move(ctheta));
    fr.psi_spatial = SampledFunction::from_spectrum(grid, std::move(czeta));
    return fr;
}

// Apply a frequency multiplier to a sampled function (one spectral pass).
template <class Mult>
inline SampledFunction apply_multiplier(const SampledFunction& u, Mult&& mult) {
    auto c = u.spectrum();
    for (std::size_t k = 0; k < u.grid.n; ++k) c[k] *= mult(u.grid.xi(k));
    return SampledFunction::from_spectrum(u.grid, std::move(c));
}

template <class Mult>
inline SampledFunction apply_multiplier_spectrum(const GridSpec& g, const std::vector<cplx>& coeffs,
                                                 Mult&& mult) {
    std::vector<cplx> c(coeffs);
    for (std::size_t k = 0; k < g.n; ++k) c[k] *= mult(g.xi(k));
    return SampledFunction::from_spectrum(g, std::move(c));
}

// u * phi_eps, realized as multiplication by theta(eps xi). Exact for inputs
// carrying analytic spectra; convolution on the periodic grid is spectral
// multiplication.
inline SampledFunction mollify(const SampledFunction& u, double eps, const LPFrame& fr) {
    fr.require_scale(eps);
    return apply_multiplier(u, [&](double xi) { return fr.theta(eps * xi); });
}

inline SampledFunction mollify_spectrum(const std::vector<cplx>& coeffs, double eps,
                                        const LPFrame& fr) {
    fr.require_scale(eps);
    return apply_multiplier_spectrum(fr.grid, coeffs, [&](double xi) { return fr.theta(eps * xi); });
}

// u * psi_eta, multiplication by zeta(eta xi)
inline SampledFunction band_project(const SampledFunction& u, double eta, const LPFrame& fr) {
    fr.require_scale(eta);
    return apply_multiplier(u, [&](double xi) { return fr.zeta(eta * xi); });
}

inline SampledFunction band_project_spectrum(const std::vector<cplx>& coeffs, double eta,
                                             const LPFrame& fr) {
    fr.require_scale(eta);
    return apply_multiplier_spectrum(fr.grid, coeffs, [&](double xi) { return fr.zeta(eta * xi); });
}

// Right-hand side of the reconstruction identity
//   u * phi_eps = u * phi + int_eps^1 u * psi_eta  d eta / eta
// by log-spaced trapezoid quadrature (the measure is uniform in log eta).
// The whole quadrature collapses into one composite frequency multiplier,
// so a single inverse transform produces the result.
inline SampledFunction lp_reconstruct(const SampledFunction& u, double eps, const LPFrame& fr,
                                      std::size_t quad_nodes = 512) {
    fr.require_scale(eps);
    if (quad_nodes < 64) throw invalid_config("lp_reconstruct: need at least 64 quadrature nodes");

    auto c = u.spectrum();
    const double lo = std::log(eps);
    const double h = (0.0 - lo) / static_cast<double>(quad_nodes - 1);

    for (std::size_t k = 0; k < u.grid.n; ++k) {
        const double xi = u.grid.xi(k);
        double m = fr.theta(xi);
        if (h > 0.0) {
            double acc = 0.0;
            for (std::size_t i = 0; i < quad_nodes; ++i) {
                const double eta = std::exp(lo + h * static_cast<double>(i));
                const double w = (i == 0 || i + 1 == quad_nodes) ? 0.5 : 1.0;
                acc += w * fr.zeta(eta * xi);
            }
            m += h * acc;
        }
        c[k] *= m;
    }
    return SampledFunction::from_spectrum(u.grid, std::move(c));
}

// Moment defects of the spatial kernels at the finest admissible scale,
// the kernels the frame actually applies: entry m holds
// |int t^m phi_eps(t) dt - [m == 0]| for the mollifier and
// |int t^m psi_eps(t) dt| for the band kernel, eps = eps_floor.
// Scale 1 would be hopeless here, not as a precision matter: the scale-1
// profile has ~17 lattice modes, so its periodization cannot have small
// high-order moments over a full period (its tails are still O(1e-4) at the
// seam, where t^6 reaches 2e8). At eps_floor the kernels localize to a few
// hundred cells and the seam wrap is below round-off. The samples are
// rebuilt from the defining cosine series in extended precision; the cached
// spatial fields carry double-precision FFT rounding that a 1e-8
// certification at order 6 would inherit.
struct MomentDefects {
    std::vector<double> phi;
    std::vector<double> psi;
};

namespace detail {

inline std::vector<long double> kernel_samples_extended(const LPFrame& fr, bool band) {
    const GridSpec& g = fr.grid;
    const double eps = fr.eps_floor;
    // collect the nonvanishing modes of the compactly supported dilated profile
    std::vector<std::pair<long double, long double>> modes;  // (xi, weight)
    for (std::size_t k = 0; k <= g.n / 2; ++k) {
        const double xi = static_cast<double>(k) * g.dxi();
        if (eps * xi > 1.0) break;
        const double w = band ? fr.zeta(eps * xi) : fr.theta(eps * xi);
        if (w != 0.0) modes.emplace_back(xi, w);
    }
    std::vector<long double> vals(g.n, 0.0L);
    const long double invL = 1.0L / static_cast<long double>(g.period);
    for (std::size_t j = 0; j < g.n; ++j) {
        const long double x = static_cast<long double>(g.x(j));
        long double acc = 0.0L;
        for (const auto& [xi, w] : modes) {
            if (xi == 0.0L)
                acc += w;
            else
                acc += 2.0L * w * std::cos(xi * x);
        }
        vals[j] = acc * invL;
    }
    return vals;
}

inline long double kernel_moment(const std::vector<long double>& vals, const GridSpec& g, int m) {
    // signed coordinate centered at 0; the seam sample at +L/2 represents
    // both ends of the interval, so odd powers average to zero there
    const long double dx = static_cast<long double>(g.dx());
    const long double L = static_cast<long double>(g.period);
    long double acc = 0.0L;
    for (std::size_t j = 0; j < g.n; ++j) {
        long double t = static_cast<long double>(g.x(j));
        if (j > g.n / 2) t -= L;
        long double tp;
        if (j == g.n / 2 && (m % 2 == 1))
            tp = 0.0L;
        else {
            tp = 1.0L;
            for (int i = 0; i < m; ++i) tp *= t;
        }
        acc += vals[j] * tp;
    }
    return acc * dx;
}

}

inline MomentDefects moment_defect(const LPFrame& fr, int max_order) {
    if (max_order < 0) throw invalid_config("moment_defect: max_order must be >= 0");
    MomentDefects out;
    const auto phi = detail::kernel_samples_extended(fr, false);
    const auto psi = detail::kernel_samples_extended(fr, true);
    for (int m = 0; m <= max_order; ++m) {
        const long double mp = detail::kernel_moment(phi, fr.grid, m);
        const long double ms = detail::kernel_moment(psi, fr.grid, m);
        const long double target = (m == 0) ? 1.0L : 0.0L;
        out.phi.push_back(static_cast<double>(std::abs(mp - target)));
        out.psi.push_back(static_cast<double>(std::abs(ms)));
    }
    return out;
}

// Residual of the Littlewood-Paley partition identity
//   theta(y) + int_0^1 zeta(eta y) d eta / eta = 1
// at one probe frequency, integrating over the integrand's support with a
// log-trapezoid rule plus first-order Euler-Maclaurin endpoint corrections
// (the analytic zeta' makes those corrections exact; they matter when the
// support is clipped at eta = 1).
inline double lp_identity_residual(const LPFrame& fr, double y, std::size_t nodes = 512) {
    y = std::abs(y);
    if (y <= 0.5) return 0.0;  // theta(y) = 1 and the integrand vanishes

    const double lo = std::log(1.0 / (2.0 * y));
    const double hi = std::min(std::log(1.0 / y), 0.0);
    const double h = (hi - lo) / static_cast<double>(nodes - 1);

    double acc = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
        const double eta = std::exp(lo + h * static_cast<double>(i));
        const double w = (i == 0 || i + 1 == nodes) ? 0.5 : 1.0;
        acc += w * fr.zeta(eta * y);
    }
    double integral = h * acc;

    // d/du [zeta(e^u y)] at the endpoints (u = log eta)
    const auto dG = [&](double u) {
        const double eta = std::exp(u);
        return eta * y * fr.profile.zeta_prime(eta * y);
    };
    integral -= h * h / 12.0 * (dG(hi) - dG(lo));

    return std::abs(fr.theta(y) + integral - 1.0);
}

}
