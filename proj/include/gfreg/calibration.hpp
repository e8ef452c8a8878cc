#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "fit.hpp"
#include "grid.hpp"
#include "norms.hpp"
#include "sampled.hpp"
#include "signal_model.hpp"

namespace gfreg {

inline constexpr double default_plateau_tol = 0.1;
inline constexpr double negligibility_witness = 6.0;

// Growth calibration of one derivative order: c_hat(j) is minus the fitted
// slope of log ||d^j u_eps|| against log eps. A net whose response is
// identically zero at this order gets the -inf marker instead of a fit.
struct OrderCalibration {
    int order = 0;
    double c_hat = 0.0;
    bool zero_response = false;
    ScalingFit fit;
};

struct InferredClass {
    int k = 0;
    bool k_is_lower_bound = false;
    double s = 0.0;
    double sigma_hat = 0.0;  // distance from s up to the next integer
};

struct CalibrationReport {
    std::vector<OrderCalibration> orders;
    std::vector<double> eps_grid;
    Window window;
    double p = std::numeric_limits<double>::infinity();
    InferredClass inferred;
    std::vector<double> convexity_defects;  // c(j) + c(j+2) - 2 c(j+1); NaN if any side vanished
    bool nonmonotone = false;
};

inline std::vector<OrderCalibration> estimate_calibration(const GeneralizedNet& net, int max_order,
                                                          const std::vector<double>& eps_grid,
                                                          const Window& window, double p) {
    if (max_order < 0) throw invalid_config("calibration: max_order must be >= 0");
    window.validate(net.grid);

    std::vector<std::vector<double>> norms(static_cast<std::size_t>(max_order) + 1);
    for (const double eps : eps_grid) {
        SampledFunction u = net(eps);
        for (int j = 0; j <= max_order; ++j) {
            norms[static_cast<std::size_t>(j)].push_back(lp_norm(u, p, window));
            if (j < max_order) u = derivative(u, 1);
        }
    }

    std::vector<OrderCalibration> out;
    for (int j = 0; j <= max_order; ++j) {
        OrderCalibration oc;
        oc.order = j;
        const auto& v = norms[static_cast<std::size_t>(j)];
        double peak = 0.0;
        for (const double x : v) peak = std::max(peak, x);
        if (peak < 1e-300) {
            oc.zero_response = true;
            oc.c_hat = -std::numeric_limits<double>::infinity();
        } else {
            oc.fit = fit_scaling(eps_grid, v);
            oc.c_hat = -oc.fit.slope;
        }
        out.push_back(oc);
    }
    return out;
}

// Largest plateau prefix of the calibration sequence determines k; the level
// of the plateau determines s. Running to the end of the measured orders only
// certifies a lower bound on k.
inline InferredClass classify(const std::vector<OrderCalibration>& orders,
                              double plateau_tol = default_plateau_tol) {
    if (orders.empty()) throw invalid_config("classify: no calibration orders");
    InferredClass cls;
    const double base = orders.front().c_hat;
    const int M = orders.back().order;

    if (std::isinf(base) && base < 0.0) {
        cls.k = M;
        cls.k_is_lower_bound = true;
        cls.s = base;
        cls.sigma_hat = 0.0;
        return cls;
    }

    int k = 0;
    double s = base;
    for (const auto& oc : orders) {
        if (oc.c_hat <= base + plateau_tol) {
            k = oc.order;
            s = std::max(s, oc.c_hat);
        } else {
            break;
        }
    }
    cls.k = k;
    cls.k_is_lower_bound = (k == M);
    cls.s = s;
    const double frac = std::ceil(s - 1e-9) - s;
    cls.sigma_hat = std::isfinite(frac) ? std::min(std::max(frac, 0.0), 1.0 - 1e-12) : 0.0;
    return cls;
}

inline CalibrationReport growth_function(const GeneralizedNet& net, int max_order,
                                         const std::vector<double>& eps_grid, const Window& window,
                                         double p = std::numeric_limits<double>::infinity(),
                                         double plateau_tol = default_plateau_tol) {
    CalibrationReport rep;
    rep.orders = estimate_calibration(net, max_order, eps_grid, window, p);
    rep.eps_grid = eps_grid;
    rep.window = window;
    rep.p = p;
    rep.inferred = classify(rep.orders, plateau_tol);

    const auto finite = [&](int j) {
        const double c = rep.orders[static_cast<std::size_t>(j)].c_hat;
        return std::isfinite(c);
    };
    for (int j = 0; j + 2 <= max_order; ++j) {
        if (finite(j) && finite(j + 1) && finite(j + 2)) {
            rep.convexity_defects.push_back(rep.orders[static_cast<std::size_t>(j)].c_hat +
                                            rep.orders[static_cast<std::size_t>(j + 2)].c_hat -
                                            2.0 * rep.orders[static_cast<std::size_t>(j + 1)].c_hat);
        } else {
            rep.convexity_defects.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    for (int j = 0; j + 1 <= max_order; ++j) {
        if (finite(j) && finite(j + 1) &&
            rep.orders[static_cast<std::size_t>(j + 1)].c_hat <
                rep.orders[static_cast<std::size_t>(j)].c_hat - 0.05)
            rep.nonmonotone = true;
    }
    return rep;
}

inline CalibrationReport growth_function(const GeneralizedNet& net, int max_order = 3) {
    return growth_function(net, max_order, grids::eps_calibration(net.grid),
                           Window::full(net.grid));
}

struct NegligibilityResult {
    bool negligible = false;
    double min_slope = std::numeric_limits<double>::infinity();  // over non-vanishing orders
};

// A net is declared negligible (at desk scale) when every measured order
// decays at least like eps^b for the witness exponent b.
inline NegligibilityResult negligibility_test(const GeneralizedNet& net, int max_order = 2,
                                              double b_witness = negligibility_witness) {
    const auto orders = estimate_calibration(net, max_order, grids::eps_calibration(net.grid),
                                             Window::full(net.grid),
                                             std::numeric_limits<double>::infinity());
    NegligibilityResult res;
    res.negligible = true;
    for (const auto& oc : orders) {
        if (oc.zero_response) continue;
        const double slope = -oc.c_hat;  // of log-norm against log-eps
        res.min_slope = std::min(res.min_slope, slope);
        if (slope < b_witness) res.negligible = false;
    }
    return res;
}

}
