#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace gfreg {

// Result of an ordinary least-squares fit of log(value) against log(eps).
// slope is d log(value) / d log(eps); a response decaying like eps^p has
// slope p, a response growing like eps^{-c} has slope -c.
struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    double residual_max = 0.0;
    std::size_t n_points = 0;
};

namespace detail {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    double rss = 0.0;
    double residual_max = 0.0;
};

inline LineFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxx > 0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    double rss = 0, sst = 0, rmax = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        rss += r * r;
        rmax = std::max(rmax, std::abs(r));
        sst += (y[i] - my) * (y[i] - my);
    }
    f.rss = rss;
    f.residual_max = rmax;
    f.r_squared = sst > 0 ? std::max(0.0, 1.0 - rss / sst) : 1.0;
    return f;
}

}

// OLS on (log eps, log value). Values must be positive; a constant response
// gets slope 0 and r_squared 1 by convention.
inline ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 8)
        throw insufficiency_error("fit_scaling: need at least 8 points");
    std::vector<double> lx, ly;
    lx.reserve(pairs.size());
    ly.reserve(pairs.size());
    for (const auto& [e, v] : pairs) {
        if (!(e > 0.0)) throw fit_domain_error("fit_scaling: nonpositive scale");
        if (!(v > 0.0)) throw fit_domain_error("fit_scaling: nonpositive value");
        lx.push_back(std::log(e));
        ly.push_back(std::log(v));
    }
    const auto f = detail::ols(lx, ly);
    return ScalingFit{f.slope, f.intercept, f.r_squared, f.residual_max, pairs.size()};
}

inline ScalingFit fit_scaling(const std::vector<double>& eps, const std::vector<double>& values) {
    std::vector<std::pair<double, double>> p(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) p[i] = {eps[i], values[i]};
    return fit_scaling(p);
}

// Moving octave leaders: replace each response by its max over a log-scale
// window of half-width `half_width` (default: half an octave, so the full
// window is one octave wide). Points whose window is truncated by the grid
// edge are dropped. Lacunary inputs produce comb-shaped responses whose raw
// OLS slope is biased by the comb phase; leaders restore the envelope that
// the sup in the definitions actually refers to.
inline void octave_leaders(const std::vector<double>& scales,
                           const std::vector<double>& values,
                           std::vector<double>& out_scales,
                           std::vector<double>& out_leaders,
                           double half_width = 0.5 * std::numbers::ln2) {
    out_scales.clear();
    out_leaders.clear();
    const std::size_t n = scales.size();
    if (n == 0) return;
    double lmin = std::numeric_limits<double>::infinity();
    double lmax = -std::numeric_limits<double>::infinity();
    std::vector<double> ls(n);
    for (std::size_t i = 0; i < n; ++i) {
        ls[i] = std::log(scales[i]);
        lmin = std::min(lmin, ls[i]);
        lmax = std::max(lmax, ls[i]);
    }
    const double pad = 1e-12;
    for (std::size_t i = 0; i < n; ++i) {
        if (ls[i] - half_width < lmin - pad || ls[i] + half_width > lmax + pad) continue;
        double m = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(ls[j] - ls[i]) <= half_width + pad) m = std::max(m, values[j]);
        out_scales.push_back(scales[i]);
        out_leaders.push_back(m);
    }
}

namespace detail {

// Least-squares fit of a saturating model F(eps) ~ A - B eps^gamma at fixed
// gamma, returning the residual sum of squares measured in log space so it is
// directly comparable with the pure power-law rss. Two variants are tried:
// the model fitted to F itself and to log F. Inadmissible fits (A <= 0,
// B < 0, or nonpositive predictions) return +inf.
inline double saturation_rss(const std::vector<double>& eps,
                             const std::vector<double>& F,
                             const std::vector<double>& logF,
                             double gamma) {
    const std::size_t n = eps.size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::pow(eps[i], gamma);

    // normal equations for y ~ A - B g
    const auto solve = [&](const std::vector<double>& y, double& A, double& B) {
        double s1 = static_cast<double>(n), sg = 0, sgg = 0, sy = 0, sgy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sg += g[i];
            sgg += g[i] * g[i];
            sy += y[i];
            sgy += g[i] * y[i];
        }
        const double det = s1 * sgg - sg * sg;
        if (std::abs(det) < 1e-300) { A = 0; B = -1; return; }
        // minimize sum (y - A + B g)^2 -> [A, B] from the 2x2 system
        A = (sgg * sy - sg * sgy) / det;
        B = -(s1 * sgy - sg * sy) / det;
    };

    double best = std::numeric_limits<double>::infinity();

    double A = 0, B = 0;
    solve(F, A, B);
    if (A > 0 && B >= 0) {
        double rss = 0;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            const double pred = A - B * g[i];
            if (!(pred > 0)) { ok = false; break; }
            const double r = logF[i] - std::log(pred);
            rss += r * r;
        }
        if (ok) best = std::min(best, rss);
    }

    double a2 = 0, b2 = 0;
    solve(logF, a2, b2);
    if (b2 >= 0) {
        double rss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = logF[i] - (a2 - b2 * g[i]);
            rss += r * r;
        }
        best = std::min(best, rss);
    }

    return best;
}

}

}
