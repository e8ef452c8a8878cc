#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "calibration.hpp"
#include "errors.hpp"
#include "fit.hpp"
#include "grid.hpp"
#include "lp_frame.hpp"
#include "norms.hpp"
#include "sampled.hpp"
#include "signal_model.hpp"
#include "zygmund_hoelder.hpp"

namespace gfreg {

// |W(x, y)| for the moment-killing analyzer of order k, multiplier
// (-(y xi)^2)^k theta(y xi). Rows run over the scale grid, columns over x.
struct WaveletMap {
    GridSpec grid;
    int psi_order = 1;
    std::vector<double> y_grid;
    std::vector<std::vector<double>> abs_values;  // [scale][position]
};

inline WaveletMap wavelet_transform(const SampledFunction& u, const LPFrame& frame, int k,
                                    const std::vector<double>& y_grid) {
    if (k < 1) throw invalid_config("wavelet_transform: analyzer order must be >= 1");
    if (y_grid.empty()) throw invalid_config("wavelet_transform: empty scale grid");
    WaveletMap map;
    map.grid = u.grid;
    map.psi_order = k;
    map.y_grid = y_grid;
    for (const double y : y_grid) {
        frame.require_scale(y);
        const SampledFunction w = apply_multiplier(u, [&](double xi) {
            const double q = -(y * xi) * (y * xi);
            double p = 1.0;
            for (int i = 0; i < k; ++i) p *= q;
            return p * frame.theta(y * xi);
        });
        std::vector<double> row(u.grid.n);
        for (std::size_t j = 0; j < u.grid.n; ++j) row[j] = std::abs(w.values[j]);
        map.abs_values.push_back(std::move(row));
    }
    return map;
}

inline WaveletMap wavelet_transform(const SampledFunction& u, const LPFrame& frame, int k = 1) {
    return wavelet_transform(u, frame, k, grids::y_decay(u.grid));
}

namespace detail {

// circular sliding maximum with half-width h, monotone deque scan
inline std::vector<double> circular_window_max(const std::vector<double>& v, std::size_t h) {
    const std::size_t n = v.size();
    const std::size_t w = 2 * h + 1;
    if (w >= n) {
        double m = 0.0;
        for (const double x : v) m = std::max(m, x);
        return std::vector<double>(n, m);
    }
    std::vector<double> out(n);
    std::deque<std::size_t> dq;  // indices into the wrapped scan, values decreasing
    const std::size_t total = n + 2 * h;
    const auto at = [&](std::size_t i) { return v[i % n]; };
    for (std::size_t i = 0; i < total; ++i) {
        while (!dq.empty() && at(dq.back()) <= at(i)) dq.pop_back();
        dq.push_back(i);
        if (dq.front() + w <= i) dq.pop_front();  // fell out of the window
        if (i + 1 >= w) out[(i - h) % n] = at(dq.front());
    }
    return out;
}

}

struct LocalDecayMap {
    std::vector<double> p_hat;       // per-position cone decay exponent
    std::vector<bool> capped;        // fit ran into the measurable ceiling
    std::vector<double> y_used;      // scales that survived the resolution trim
    double min_exponent = 0.0;
    std::size_t argmin = 0;          // grid index of the most singular position
    bool all_capped = false;         // nothing singular anywhere at this order
};

// Pointwise decay exponents from cone suprema: S_x(y) = sup over the cone
// |x' - x| <= 4y + 4dx of |W(x', y)|, fitted per position against y. Scales
// under 8 cells are dropped; the cone padding keeps a jump's influence from
// escaping the column while y shrinks. The measurable ceiling with an
// order-k analyzer is y^{2k} (2k vanishing moments), so fits at or above
// that rate are flagged as capped.
inline LocalDecayMap local_decay_map(const WaveletMap& map, double r_cap) {
    const GridSpec& g = map.grid;
    LocalDecayMap out;

    std::vector<std::vector<double>> cones;
    for (std::size_t r = 0; r < map.y_grid.size(); ++r) {
        const double y = map.y_grid[r];
        if (y < 8.0 * g.dx()) continue;
        const auto h = static_cast<std::size_t>(std::llround(4.0 * y / g.dx())) + 4;
        cones.push_back(detail::circular_window_max(map.abs_values[r], h));
        out.y_used.push_back(y);
    }
    if (out.y_used.size() < 8)
        throw insufficiency_error("local_decay_map: fewer than 8 usable scales");

    const std::size_t rows = out.y_used.size();
    double sx = 0.0, sxx = 0.0;
    std::vector<double> lx(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        lx[r] = std::log(out.y_used[r]);
        sx += lx[r];
        sxx += lx[r] * lx[r];
    }
    const double denom = sxx - sx * sx / static_cast<double>(rows);

    out.p_hat.resize(g.n);
    out.capped.assign(g.n, false);
    double min_p = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < g.n; ++j) {
        bool dead = false;
        double sy = 0.0, sxy = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            const double v = cones[r][j];
            if (v <= 1e-300) {
                dead = true;
                break;
            }
            const double ly = std::log(v);
            sy += ly;
            sxy += lx[r] * ly;
        }
        if (dead) {
            // no response in the cone at some scale: nothing singular here
            out.p_hat[j] = r_cap;
            out.capped[j] = true;
        } else {
            out.p_hat[j] = (sxy - sx * sy / static_cast<double>(rows)) / denom;
            out.capped[j] = out.p_hat[j] >= r_cap - 0.05;
        }
        min_p = std::min(min_p, out.p_hat[j]);
    }
    out.min_exponent = min_p;

    out.all_capped = true;
    for (std::size_t j = 0; j < g.n; ++j)
        if (!out.capped[j]) out.all_capped = false;

    // argmin among near-ties: prefer positions whose raw response at the
    // finest fitted scale is largest. Every column within a cone half-width
    // of a response peak sees the same supremum, so the winners form an
    // exactly tied plateau; resolve it to its middle, which sits on the
    // singularity for symmetric kernels.
    const std::vector<double>& fine_raw = cones[rows - 1];
    double best_resp = -1.0;
    for (std::size_t j = 0; j < g.n; ++j)
        if (out.p_hat[j] <= min_p + 0.01) best_resp = std::max(best_resp, fine_raw[j]);
    std::vector<char> tied(g.n, 0);
    for (std::size_t j = 0; j < g.n; ++j)
        tied[j] = out.p_hat[j] <= min_p + 0.01 &&
                  fine_raw[j] >= best_resp - 1e-12 * std::max(1.0, best_resp);
    std::size_t best_start = 0, best_len = 0, run_start = 0, run_len = 0;
    for (std::size_t i = 0; i < 2 * g.n && best_len < g.n; ++i) {
        if (tied[i % g.n]) {
            if (run_len == 0) run_start = i;
            run_len = std::min(run_len + 1, g.n);
            if (run_len > best_len) {
                best_len = run_len;
                best_start = run_start;
            }
        } else {
            run_len = 0;
        }
    }
    out.argmin = (best_start + best_len / 2) % g.n;
    return out;
}

inline LocalDecayMap local_decay_map(const WaveletMap& map) {
    return local_decay_map(map, 2.0 * map.psi_order);
}

struct SmoothnessVerdict {
    bool smooth = false;
    int witness_order = -1;  // first order breaking the single-exponent bound
    double base = 0.0;       // calibration at order 0
    double worst = 0.0;      // max calibration over the measured orders
    double slack = 0.25;
    std::vector<OrderCalibration> orders;
};

// Global smoothness test: a net consistent with a smooth limit admits a
// single growth exponent valid for every derivative order, so its
// calibration ladder stays flat. The first order exceeding the order-0
// level by more than the slack witnesses a singular point.
inline SmoothnessVerdict g_infinity_test(const GeneralizedNet& net, int max_order,
                                         const Window& window,
                                         const std::vector<double>& eps_grid,
                                         double slack = 0.25) {
    if (max_order < 3) throw invalid_config("g_infinity_test: need max_order >= 3");
    SmoothnessVerdict v;
    v.slack = slack;
    v.orders = estimate_calibration(net, max_order, eps_grid, window,
                                    std::numeric_limits<double>::infinity());
    v.base = v.orders.front().zero_response ? 0.0 : v.orders.front().c_hat;
    v.worst = v.base;
    v.smooth = true;
    for (const auto& oc : v.orders) {
        if (oc.zero_response) continue;
        v.worst = std::max(v.worst, oc.c_hat);
        if (v.smooth && oc.c_hat > v.base + slack) {
            v.smooth = false;
            v.witness_order = oc.order;
        }
    }
    return v;
}

inline SmoothnessVerdict g_infinity_test(const GeneralizedNet& net, int max_order = 3,
                                         double slack = 0.25) {
    return g_infinity_test(net, max_order, Window::full(net.grid),
                           grids::eps_smoothness(net.grid), slack);
}

enum class QuasiAt { origin, infinity };

struct QuasiResult {
    double alpha_hat = 0.0;
    ScalingFit fit;
    std::vector<double> scales;
    std::vector<double> abs_pairing;
};

namespace detail {

inline QuasiResult quasi_fit(std::vector<double> scales, std::vector<double> vals) {
    QuasiResult q;
    for (double& v : vals) v = std::max(v, 1e-300);
    q.fit = fit_scaling(scales, vals);
    q.alpha_hat = q.fit.slope;
    q.scales = std::move(scales);
    q.abs_pairing = std::move(vals);
    return q;
}

inline std::vector<double> quasi_scale_grid(const GridSpec& g, QuasiAt at) {
    return at == QuasiAt::origin ? grids::eps_membership(g) : log_grid(1.0, 64.0, 16);
}

}

// Quasiasymptotic order from pairings against a dilated Gaussian test
// function: V(eps) = sum_k c_k rho_hat(eps xi_k) e^{i xi_k xc} is the exact
// lattice pairing <f, rho_eps> with rho_eps centered at the domain center.
inline QuasiResult quasiasymptotic_exponent(const std::vector<cplx>& coeffs, const GridSpec& g,
                                            QuasiAt at = QuasiAt::origin,
                                            double sigma_rho = 2.0) {
    if (coeffs.size() != g.n) throw invalid_config("quasiasymptotic: spectrum length mismatch");
    const std::vector<double> scales = detail::quasi_scale_grid(g, at);
    const double xc = g.center();
    std::vector<double> vals;
    for (const double e : scales) {
        cplx acc(0.0, 0.0);
        for (std::size_t k = 0; k < g.n; ++k) {
            const double w = e * g.xi(k);
            const double rh = sigma_rho * std::sqrt(2.0 * std::numbers::pi) *
                              std::exp(-0.5 * sigma_rho * sigma_rho * w * w);
            acc += coeffs[k] * rh * std::polar(1.0, g.xi(k) * xc);
        }
        vals.push_back(std::abs(acc));
    }
    return detail::quasi_fit(scales, vals);
}

inline QuasiResult quasiasymptotic_exponent(const DistributionSpec& spec, const GridSpec& g,
                                            QuasiAt at = QuasiAt::origin,
                                            double sigma_rho = 2.0) {
    return quasiasymptotic_exponent(spectrum(spec, g), g, at, sigma_rho);
}

// Same pairing driven by a sampled test function: the dilated copies are
// rebuilt by linear interpolation around the center and paired spectrally.
inline QuasiResult quasiasymptotic_exponent(const std::vector<cplx>& coeffs,
                                            const SampledFunction& rho,
                                            QuasiAt at = QuasiAt::origin) {
    const GridSpec& g = rho.grid;
    if (coeffs.size() != g.n) throw invalid_config("quasiasymptotic: spectrum length mismatch");
    const std::vector<double> scales = detail::quasi_scale_grid(g, at);
    const double xc = g.center();
    std::vector<double> vals;
    for (const double e : scales) {
        std::vector<cplx> dil(g.n, cplx(0.0, 0.0));
        for (std::size_t j = 0; j < g.n; ++j) {
            double t = g.x(j) - xc;
            if (t > 0.5 * g.period) t -= g.period;
            const double srcx = xc + t / e;
            if (srcx < 0.0 || srcx >= g.period) continue;
            const double cell = srcx / g.dx();
            const auto j0 = static_cast<std::size_t>(cell);
            const double fr = cell - static_cast<double>(j0);
            const cplx a = rho.values[j0 % g.n];
            const cplx b = rho.values[(j0 + 1) % g.n];
            dil[j] = (a * (1.0 - fr) + b * fr) / e;
        }
        const auto cd = SampledFunction(g, std::move(dil)).spectrum();
        cplx acc(0.0, 0.0);
        for (std::size_t k = 0; k < g.n; ++k) acc += coeffs[k] * std::conj(cd[k]);
        vals.push_back(std::abs(acc) * g.period);
    }
    return detail::quasi_fit(scales, vals);
}

struct FourierDecayResult {
    double slope = 0.0;
    ScalingFit fit;
    std::vector<double> band_centers;
    std::vector<double> envelopes;
    double tol = 0.1;

    // does the dyadic envelope certify |c(xi)| <~ |xi|^{-k}
    bool decay_order_at_least(double k) const { return slope <= -k + tol; }
};

// Dyadic Fourier envelope fit: band i collects |xi| in [2^{i-1}, 2^i) and
// contributes its peak magnitude at the geometric band center. Bands align
// with the analyzer's octave decomposition, coarsest edge at 1/2.
inline FourierDecayResult fourier_decay_check(const std::vector<cplx>& coeffs,
                                              const GridSpec& g) {
    if (coeffs.size() != g.n) throw invalid_config("fourier_decay: spectrum length mismatch");
    FourierDecayResult res;
    for (double b = 0.5; b < g.xi_max(); b *= 2.0) {
        double env = 0.0;
        for (std::size_t k = 1; k < g.n; ++k) {
            const double axi = std::abs(g.xi(k));
            if (axi >= b && axi < 2.0 * b) env = std::max(env, std::abs(coeffs[k]));
        }
        if (env > 1e-300) {
            res.band_centers.push_back(b * std::sqrt(2.0));
            res.envelopes.push_back(env);
        }
    }
    if (res.band_centers.size() < 8)
        throw insufficiency_error("fourier_decay: fewer than 8 live bands");
    res.fit = fit_scaling(res.band_centers, res.envelopes);
    res.slope = res.fit.slope;
    return res;
}

inline FourierDecayResult fourier_decay_check(const SampledFunction& u) {
    return fourier_decay_check(u.spectrum(), u.grid);
}

// Scale exponent for the approximation budget trade-off between a smoothing
// error eps^b X^r and a growth term eps^{-a} X^{-k}.
inline double exponent_select(double a, double b, double k, double r) {
    if (!(a > 0.0) || !(b > 0.0))
        throw invalid_config("exponent_select: a and b must be positive");
    if (!(k >= 0.0) || !(r >= 0.0) || !(k + r > 0.0))
        throw invalid_config("exponent_select: k and r must be nonnegative, not both zero");
    return a * (k + r) / b;
}

struct AssociationResult {
    bool associated = false;
    double strong_rate = std::numeric_limits<double>::infinity();
    std::vector<double> initial_abs;  // per test function, coarsest scale
    std::vector<double> final_abs;    // per test function, finest scale
    std::vector<double> rates;
};

inline std::vector<DistributionSpec> make_association_bank(const GridSpec& g) {
    const double xc = g.center();
    return {
        DistributionSpec::gaussian(1.0), DistributionSpec::gaussian(2.0),
        DistributionSpec::gaussian(1.5, xc + 2.0), DistributionSpec::gaussian(2.5, xc - 3.0),
        DistributionSpec::gaussian(3.0, xc + 5.0), DistributionSpec::gaussian(1.0, xc - 1.5),
    };
}

// Does the net converge weakly to the target? The residual pairing
// d(eps) = L sum_k (c_net(eps) - c_T) conj(c_rho) must die for every test
// function; the reported rate is the worst fitted decay order.
inline AssociationResult association_check(const GeneralizedNet& net,
                                           const DistributionSpec& target,
                                           const std::vector<DistributionSpec>& bank,
                                           const std::vector<double>& eps_grid) {
    if (bank.empty()) throw invalid_config("association_check: empty test bank");
    if (eps_grid.size() < 8) throw insufficiency_error("association_check: need >= 8 scales");
    const GridSpec& g = net.grid;
    const auto ct = spectrum(target, g);
    std::vector<std::vector<cplx>> rho_spectra;
    for (const auto& r : bank) rho_spectra.push_back(spectrum(r, g));

    std::vector<std::vector<double>> d(bank.size());
    for (const double eps : eps_grid) {
        const auto cu = net(eps).spectrum();
        for (std::size_t r = 0; r < bank.size(); ++r) {
            cplx acc(0.0, 0.0);
            for (std::size_t k = 0; k < g.n; ++k)
                acc += (cu[k] - ct[k]) * std::conj(rho_spectra[r][k]);
            d[r].push_back(std::abs(acc) * g.period);
        }
    }

    AssociationResult res;
    res.associated = true;
    for (std::size_t r = 0; r < bank.size(); ++r) {
        double peak = 0.0;
        for (const double v : d[r]) peak = std::max(peak, v);
        res.initial_abs.push_back(d[r].front());
        res.final_abs.push_back(d[r].back());
        if (peak < 1e-14) {
            res.rates.push_back(std::numeric_limits<double>::infinity());
            continue;  // already identical to the target under this pairing
        }
        if (!(d[r].back() < 1e-6 * d[r].front())) res.associated = false;
        std::vector<double> vals = d[r];
        for (double& v : vals) v = std::max(v, 1e-300);
        const double rate = fit_scaling(eps_grid, vals).slope;
        res.rates.push_back(rate);
        res.strong_rate = std::min(res.strong_rate, rate);
    }
    return res;
}

inline AssociationResult association_check(const GeneralizedNet& net,
                                           const DistributionSpec& target) {
    return association_check(net, target, make_association_bank(net.grid),
                             grids::eps_membership(net.grid));
}

}
