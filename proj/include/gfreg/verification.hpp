#pragma once

#include <cmath>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "calibration.hpp"
#include "errors.hpp"
#include "fit.hpp"
#include "grid.hpp"
#include "lp_frame.hpp"
#include "norms.hpp"
#include "report.hpp"
#include "sampled.hpp"
#include "signal_model.hpp"
#include "tauberian.hpp"
#include "zygmund_hoelder.hpp"

namespace gfreg {

// One verified property: either a worked numerical example re-measured from
// scratch or a structural invariant of the estimators. Comparison kinds:
// "abs" |m - e| <= tol, "ge" m >= e - tol, "le" m <= e + tol, "bool" m == e.
struct VerifyRow {
    std::string id;
    std::string property;
    std::string kind;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

inline bool verify_pass(const std::string& kind, double m, double e, double tol) {
    if (!std::isfinite(m)) return false;
    if (kind == "abs") return std::abs(m - e) <= tol;
    if (kind == "ge") return m >= e - tol;
    if (kind == "le") return m <= e + tol;
    return m == e;
}

inline ordered_json to_json(const VerifyRow& r) {
    return ordered_json{{"id", r.id},           {"property", r.property},
                        {"kind", r.kind},       {"measured", json_number(r.measured)},
                        {"expected", json_number(r.expected)},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass},       {"detail", r.detail}};
}

namespace detail {

inline std::string fmt(double v, int prec = 4) {
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    return os.str();
}

// expected sharp Hoelder exponent of the catalog element; deltas go negative
// so that no (k, tau) admits them
inline double sharp_exponent(const DistributionSpec& s) {
    switch (s.kind) {
        case DistributionSpec::Kind::delta_derivative: return -1.0 - s.m;
        case DistributionSpec::Kind::heaviside: return 0.0;
        case DistributionSpec::Kind::triangle_wave: return 1.0;
        case DistributionSpec::Kind::cusp: return s.tau;
        case DistributionSpec::Kind::weierstrass: return s.tau;
        default: return std::numeric_limits<double>::infinity();
    }
}

inline SampledFunction bump(const GridSpec& g, double radius) {
    std::vector<cplx> v(g.n, cplx(0.0, 0.0));
    const double xc = g.center();
    for (std::size_t j = 0; j < g.n; ++j) {
        double t = std::abs(g.x(j) - xc);
        t = std::min(t, g.period - t);
        const double s = t / radius;
        if (s < 1.0) v[j] = std::exp(-1.0 / (1.0 - s * s));
    }
    return SampledFunction(g, std::move(v));
}

inline SampledFunction sine_mode(const GridSpec& g, double xi) {
    const auto k = static_cast<std::size_t>(std::llround(xi / g.dxi()));
    std::vector<cplx> c(g.n, cplx(0.0, 0.0));
    c[k] = cplx(0.0, -0.5);
    c[g.n - k] = cplx(0.0, 0.5);
    return SampledFunction::from_spectrum(g, c);
}

}

inline std::vector<VerifyRow> run_verify(const AnalysisConfig& cfg,
                                         const std::string& filter = "") {
    cfg.validate();
    const GridSpec g = cfg.grid;
    const LPFrame fr = build_frame(g, cfg.sharpness);
    std::vector<VerifyRow> rows;

    const auto want = [&](const std::string& id) {
        return filter.empty() || id.find(filter) != std::string::npos;
    };
    std::string cur_id, cur_prop;
    const auto add = [&](const char* kind, double m, double e, double tol,
                         const std::string& detail = "") {
        VerifyRow r;
        r.id = cur_id;
        r.property = cur_prop;
        r.kind = kind;
        r.measured = m;
        r.expected = e;
        r.tolerance = tol;
        r.pass = verify_pass(kind, m, e, tol);
        r.detail = detail;
        rows.push_back(r);
    };
    const auto run = [&](const std::string& id, const std::string& prop, auto&& fn) {
        if (!want(id)) return;
        cur_id = id;
        cur_prop = prop;
        try {
            fn();
        } catch (const std::exception& e) {
            VerifyRow r;
            r.id = id;
            r.property = prop;
            r.kind = "error";
            r.measured = std::numeric_limits<double>::quiet_NaN();
            r.pass = false;
            r.detail = e.what();
            rows.push_back(r);
        }
    };

    const auto dirac = DistributionSpec::delta(0);
    const auto dprime = DistributionSpec::delta(1);
    const auto heav = DistributionSpec::heaviside_jump();
    const auto tri = DistributionSpec::triangle();
    const auto cusp05 = DistributionSpec::cusp_at(0.5);
    const auto w03 = DistributionSpec::weierstrass_sum(0.3);
    const auto w06 = DistributionSpec::weierstrass_sum(0.6);
    const auto gauss = DistributionSpec::gaussian(4.0);

    // ---- frame ----

    run("frame.moments_phi", "low-pass kernel moments 0..6 vanish above order 0", [&] {
        const auto md = moment_defect(fr, 6);
        double worst = 0.0;
        int arg = 0;
        for (int m = 0; m <= 6; ++m)
            if (md.phi[static_cast<std::size_t>(m)] > worst) {
                worst = md.phi[static_cast<std::size_t>(m)];
                arg = m;
            }
        add("le", worst, 0.0, 1e-8, "worst order " + std::to_string(arg));
    });

    run("frame.moments_psi", "band kernel moments 0..6 vanish", [&] {
        const auto md = moment_defect(fr, 6);
        double worst = 0.0;
        int arg = 0;
        for (int m = 0; m <= 6; ++m)
            if (md.psi[static_cast<std::size_t>(m)] > worst) {
                worst = md.psi[static_cast<std::size_t>(m)];
                arg = m;
            }
        add("le", worst, 0.0, 1e-8, "worst order " + std::to_string(arg));
    });

    run("frame.lp_identity", "scale partition identity residual across 16 probes", [&] {
        const auto probes = log_grid(0.55, 200.0, 16);
        double worst = 0.0;
        double arg = probes.front();
        for (const double y : probes) {
            const double r = std::abs(lp_identity_residual(fr, y, 512));
            if (r > worst) {
                worst = r;
                arg = y;
            }
        }
        add("le", worst, 0.0, 1e-6, "worst probe y=" + detail::fmt(arg));
    });

    run("frame.reconstruction", "band reconstruction matches mollification, 10 random inputs",
        [&] {
            std::mt19937 rng(42);
            std::uniform_real_distribution<double> uni(-1.0, 1.0);
            double worst = 0.0;
            for (int t = 0; t < 10; ++t) {
                std::vector<cplx> c(g.n, cplx(0.0, 0.0));
                c[0] = cplx(uni(rng), 0.0);
                for (std::size_t k = 1; k <= 32; ++k) {
                    const cplx v(uni(rng), uni(rng));
                    c[k] = v;
                    c[g.n - k] = std::conj(v);
                }
                const auto u = SampledFunction::from_spectrum(g, c);
                const double eps = 1.0 / 16.0;
                const auto rec = lp_reconstruct(u, eps, fr, 512);
                const auto ref = mollify(u, eps, fr);
                double err = 0.0;
                for (std::size_t j = 0; j < g.n; ++j)
                    err = std::max(err, std::abs(rec.values[j] - ref.values[j]));
                worst = std::max(worst, err / ref.sup_abs());
            }
            add("le", worst, 0.0, 1e-3);
        });

    run("frame.refinement_stability", "band functional is stable under eta-grid refinement", [&] {
        const auto u = embed(w03, fr)(fr.eps_floor);
        const double z32 = zygmund_functional(u, 0.3, fr, grids::eta_default(g, 32));
        const double z64 = zygmund_functional(u, 0.3, fr,
                                              log_grid(std::pow(2.0, -0.25),
                                                       g.eps_min() * std::pow(2.0, 0.25), 64));
        add("abs", z64 / z32, 1.0, 0.05);
    });

    run("frame.scale_guard", "scales outside the admissible window are rejected", [&] {
        const auto u = realize(gauss, g);
        bool threw = false;
        try {
            (void)mollify(u, fr.eps_floor / 2.0, fr);
        } catch (const scale_window_error&) {
            threw = true;
        }
        bool ok_inside = true;
        try {
            (void)mollify(u, 1.0, fr);
        } catch (const scale_window_error&) {
            ok_inside = false;
        }
        add("bool", threw && ok_inside ? 1.0 : 0.0, 1.0, 0.0);
    });

    // ---- calibration ----

    run("calibration.delta_ladder", "delta derivative growth orders follow m+1+j", [&] {
        double worst = 0.0;
        std::string at;
        for (int m = 0; m <= 2; ++m) {
            const auto net = embed(DistributionSpec::delta(m), fr);
            const auto cal = estimate_calibration(net, 2, grids::eps_calibration(g),
                                                  Window::full(g), cfg.p);
            for (int j = 0; j <= 2; ++j) {
                const double dev =
                    std::abs(cal[static_cast<std::size_t>(j)].c_hat - (m + 1 + j));
                if (dev > worst) {
                    worst = dev;
                    at = "m=" + std::to_string(m) + ",j=" + std::to_string(j);
                }
            }
        }
        add("le", worst, 0.0, 0.05, "worst at " + at);
    });

    run("calibration.catalog_classes", "inferred classes of the four reference inputs", [&] {
        int good = 0;
        std::string bad;
        const auto check = [&](const DistributionSpec& s, int k, double sval, bool lower) {
            const auto rep = growth_function(embed(s, fr), 3, grids::eps_calibration(g),
                                             Window::full(g), cfg.p, cfg.plateau_tol);
            const bool ok = rep.inferred.k == k && rep.inferred.k_is_lower_bound == lower &&
                            std::abs(rep.inferred.s - sval) <= 0.1;
            if (ok)
                ++good;
            else
                bad += s.describe() + " ";
        };
        check(dirac, 0, 1.0, false);
        check(dprime, 0, 2.0, false);
        check(heav, 0, 0.0, false);
        check(gauss, 3, 0.0, true);
        add("bool", good == 4 ? 1.0 : 0.0, 1.0, 0.0, bad.empty() ? "" : "mismatch: " + bad);
    });

    run("calibration.cusp_ladder", "cusp(0.5) orders follow 0, j - tau", [&] {
        const auto cal = estimate_calibration(embed(cusp05, fr), 3, grids::eps_calibration(g),
                                              Window::full(g), cfg.p);
        const double want[4] = {0.0, 0.5, 1.5, 2.5};
        double worst = 0.0;
        for (int j = 0; j <= 3; ++j)
            worst = std::max(worst, std::abs(cal[static_cast<std::size_t>(j)].c_hat - want[j]));
        add("le", worst, 0.0, 0.05);
    });

    run("calibration.jump_ladders", "heaviside and triangle growth ladders", [&] {
        const auto ch = estimate_calibration(embed(heav, fr), 3, grids::eps_calibration(g),
                                             Window::full(g), cfg.p);
        const auto ct = estimate_calibration(embed(tri, fr), 3, grids::eps_calibration(g),
                                             Window::full(g), cfg.p);
        const double wh[4] = {0.0, 1.0, 2.0, 3.0};
        const double wt[4] = {0.0, 0.0, 1.0, 2.0};
        double worst = 0.0;
        for (int j = 0; j <= 3; ++j) {
            worst = std::max(worst, std::abs(ch[static_cast<std::size_t>(j)].c_hat - wh[j]));
            worst = std::max(worst, std::abs(ct[static_cast<std::size_t>(j)].c_hat - wt[j]));
        }
        add("le", worst, 0.0, 0.05);
    });

    run("calibration.convexity", "growth sequences are convex up to tolerance", [&] {
        double worst = std::numeric_limits<double>::infinity();
        std::string at;
        for (const auto* s : {&dirac, &dprime, &heav, &tri, &cusp05, &w03, &gauss}) {
            const auto rep = growth_function(embed(*s, fr), 3, grids::eps_calibration(g),
                                             Window::full(g), cfg.p, cfg.plateau_tol);
            for (const double d : rep.convexity_defects) {
                if (std::isnan(d)) continue;
                if (d < worst) {
                    worst = d;
                    at = s->describe();
                }
            }
        }
        add("ge", worst, -0.15, 0.0, "worst at " + at);
    });

    run("calibration.scale_shift", "power reweighting shifts every growth order by -s", [&] {
        double worst = 0.0;
        for (const auto* s : {&dirac, &heav, &cusp05, &gauss}) {
            const auto net = embed(*s, fr);
            const auto base = estimate_calibration(net, 2, grids::eps_calibration(g),
                                                   Window::full(g), cfg.p);
            for (const double shift : {-2.0, 1.0}) {
                const auto moved = estimate_calibration(scale_net(net, shift), 2,
                                                        grids::eps_calibration(g),
                                                        Window::full(g), cfg.p);
                for (int j = 0; j <= 2; ++j) {
                    const double b = base[static_cast<std::size_t>(j)].c_hat;
                    const double m = moved[static_cast<std::size_t>(j)].c_hat;
                    if (std::isfinite(b) && std::isfinite(m))
                        worst = std::max(worst, std::abs(m - (b - shift)));
                }
            }
        }
        add("le", worst, 0.0, 0.1);
    });

    run("calibration.negligibility", "eps^10-weighted smooth net is negligible, delta is not",
        [&] {
            const auto neg = negligibility_test(scale_net(embed(gauss, fr), 10.0));
            const auto del = negligibility_test(embed(dirac, fr));
            add("bool", neg.negligible && neg.min_slope >= 6.0 && !del.negligible ? 1.0 : 0.0,
                1.0, 0.0, "weighted min slope " + detail::fmt(neg.min_slope));
        });

    // ---- zygmund / hoelder ----

    const auto exp_row = [&](const std::string& id, const DistributionSpec& s, double expect) {
        run(id, "fine-scale exponent of " + s.describe(), [&] {
            const auto r = zygmund_exponent(realize(s, g), fr);
            add("abs", r.r_hat, expect, 0.06, "usable scales " + std::to_string(r.usable));
        });
    };
    exp_row("zygmund.exponent_w03", w03, 0.3);
    exp_row("zygmund.exponent_w06", w06, 0.6);
    exp_row("zygmund.exponent_cusp05", cusp05, 0.5);
    exp_row("zygmund.exponent_jump", heav, 0.0);
    exp_row("zygmund.exponent_triangle", tri, 1.0);

    run("zygmund.exponent_dw03", "fine-scale exponent of the differentiated lacunary sum", [&] {
        const auto dw = DistributionSpec::sum_of_derivatives({{1, w03}});
        const auto r = zygmund_exponent(realize(dw, g), fr);
        add("abs", r.r_hat, -0.7, 0.06);
    });

    run("zygmund.membership_agreement",
        "band and direct membership tests agree with the true classes", [&] {
            struct MRow {
                const DistributionSpec* spec;
                int k;
                double tau;
            };
            const MRow table[] = {
                {&w03, 0, 0.3},    {&w03, 0, 0.6},  {&w03, 1, 0.3},  {&w06, 0, 0.5},
                {&cusp05, 0, 0.3}, {&cusp05, 0, 0.5}, {&cusp05, 0, 0.9}, {&heav, 0, 0.3},
                {&gauss, 1, 0.5},  {&tri, 0, 0.9},  {&tri, 1, 0.3},  {&dirac, 0, 0.5},
            };
            int good = 0;
            std::string bad;
            for (const auto& row : table) {
                const bool expect =
                    row.k + row.tau <= detail::sharp_exponent(*row.spec) + 1e-9;
                const auto net = embed(*row.spec, fr);
                const auto zr = generalized_zygmund_membership(net, row.k + row.tau, 0.0, fr);
                const auto hr = hoelder_class_membership(net, row.k, row.tau, 0.0);
                if (zr.member == expect && hr.member == expect)
                    ++good;
                else
                    bad += row.spec->describe() + "@k" + std::to_string(row.k) + ",tau" +
                           detail::fmt(row.tau) + " ";
            }
            add("bool", good == 12 ? 1.0 : 0.0, 1.0, 0.0,
                bad.empty() ? "12/12" : "mismatch: " + bad);
        });

    run("zygmund.membership_delta_shift", "delta sits below order -1 on the band side", [&] {
        const auto r = generalized_zygmund_membership(embed(dirac, fr), -1.05, 0.0, fr);
        add("bool", r.member ? 1.0 : 0.0, 1.0, 0.0, "margin " + detail::fmt(r.margin));
    });

    run("hoelder.membership_triangle", "triangle wave passes the Lipschitz membership test",
        [&] {
            const auto r = hoelder_class_membership(embed(tri, fr), 0, 1.0, 0.0);
            add("bool", r.member ? 1.0 : 0.0, 1.0, 0.0, "margin " + detail::fmt(r.margin));
        });

    run("zygmund.hoermann_growth", "derivative growth along the net matches eps^(r-order)", [&] {
        const auto net = embed(w03, fr);
        double worst = 0.0;
        for (const int order : {1, 2, 3}) {
            const auto h = hoermann_order_check(net, 0.3, order, fr);
            worst = std::max(worst, std::abs(h.slope - h.expected));
        }
        add("le", worst, 0.0, 0.1);
    });

    run("zygmund.hoermann_bounded", "orders below the regularity stay bounded", [&] {
        // four levels enter fully by 1/32; the sup saturates below that
        const auto w4 = DistributionSpec::weierstrass_sum(0.3, 4);
        const auto sat = log_grid(1.0 / 32.0, g.eps_min(), 12);
        const auto h = hoermann_order_check(embed(w4, fr), 0.3, 0, fr, sat);
        add("ge", h.slope, 0.0, 0.1, "regime " + h.regime);
    });

    run("zygmund.hoermann_log", "crossover order shows only logarithmic growth", [&] {
        const auto w0 = DistributionSpec::weierstrass_sum(0.0, 6);
        const auto h = hoermann_order_check(embed(w0, fr), 0.0, 0, fr);
        add("abs", h.slope, 0.0, 0.1, "regime " + h.regime);
    });

    run("zygmund.hoermann_gtilde", "re-mollified net keeps the functional bounded", [&] {
        const auto h = hoermann_gtilde_check(embed(w03, fr), 0.3, fr);
        add("ge", h.slope, 0.0, 0.05);
    });

    run("zygmund.product_exponent", "product with a smooth factor keeps the worse exponent",
        [&] {
            const auto u = pointwise_product(realize(w03, g), realize(gauss, g));
            std::vector<double> deep;
            for (const double eta : grids::eta_exponent(g))
                if (eta <= 0.14) deep.push_back(eta);
            const auto r = zygmund_exponent(u, fr, deep);
            add("abs", r.r_hat, 0.3, 0.05);
        });

    // ---- tauberian ----

    run("tauberian.decay_delta", "cone decay exponent of the point mass", [&] {
        const auto map = wavelet_transform(realize(dirac, g), fr, 1);
        const auto dec = local_decay_map(map);
        add("abs", dec.min_exponent, -1.0, 0.05);
    });

    run("tauberian.decay_cusp", "cone decay exponent of the half-power cusp", [&] {
        const auto map = wavelet_transform(realize(cusp05, g), fr, 1);
        const auto dec = local_decay_map(map);
        add("abs", dec.min_exponent, 0.5, 0.05,
            "argmin cell " + std::to_string(dec.argmin));
    });

    run("tauberian.cusp_location", "cusp singularity is located at the center cell", [&] {
        const auto map = wavelet_transform(realize(cusp05, g), fr, 1);
        const auto dec = local_decay_map(map);
        const double off = std::abs(static_cast<double>(dec.argmin) -
                                    static_cast<double>(g.n / 2));
        add("le", off, 0.0, 2.0);
    });

    run("tauberian.jump_location", "worst decay sits at one of the jump cells", [&] {
        const auto map = wavelet_transform(realize(heav, g), fr, 1);
        const auto dec = local_decay_map(map);
        const double a = std::abs(static_cast<double>(dec.argmin) -
                                  static_cast<double>(g.n / 4));
        const double b = std::abs(static_cast<double>(dec.argmin) -
                                  static_cast<double>(3 * g.n / 4));
        add("le", std::min(a, b), 0.0, 4.0,
            "argmin cell " + std::to_string(dec.argmin) + ", p_hat " +
                detail::fmt(dec.min_exponent));
    });

    run("tauberian.smooth_bank", "global smoothness verdicts across seven inputs", [&] {
        int good = 0;
        std::string bad;
        const auto check = [&](const GeneralizedNet& net, bool smooth, const char* name) {
            const auto v = g_infinity_test(net);
            if (v.smooth == smooth)
                ++good;
            else
                bad += std::string(name) + " ";
        };
        check(embed(gauss, fr), true, "gaussian");
        check(embed(detail::sine_mode(g, 3.0), fr), true, "sine");
        check(embed(dirac, fr), false, "delta");
        check(embed(dprime, fr), false, "dprime");
        check(embed(heav, fr), false, "heaviside");
        check(embed(cusp05, fr), false, "cusp");
        check(embed(w03, fr), false, "weierstrass");
        add("bool", good == 7 ? 1.0 : 0.0, 1.0, 0.0,
            bad.empty() ? "7/7" : "wrong verdict: " + bad);
    });

    run("tauberian.quasi_delta", "dilation pairing order of the point mass is exactly -1", [&] {
        const auto q = quasiasymptotic_exponent(dirac, g);
        add("abs", q.alpha_hat, -1.0, 1e-6);
    });

    run("tauberian.quasi_const", "dilation pairing order of a constant is exactly 0", [&] {
        const auto q = quasiasymptotic_exponent(DistributionSpec::constant_fn(1.0), g);
        add("abs", q.alpha_hat, 0.0, 1e-6);
    });

    run("tauberian.quasi_cusp", "dilation pairing order of the half-power cusp", [&] {
        const auto q = quasiasymptotic_exponent(cusp05, g);
        add("abs", q.alpha_hat, 0.5, 0.05);
    });

    run("tauberian.fourier_delta", "flat coefficient envelope of the point mass", [&] {
        add("abs", fourier_decay_check(spectrum(dirac, g), g).slope, 0.0, 0.1);
    });

    run("tauberian.fourier_ddelta", "growing envelope of the second delta derivative", [&] {
        add("abs", fourier_decay_check(spectrum(DistributionSpec::delta(2), g), g).slope, 2.0,
            0.1);
    });

    run("tauberian.fourier_heaviside", "first-order coefficient decay of the jump", [&] {
        add("abs", fourier_decay_check(spectrum(heav, g), g).slope, -1.0, 0.1);
    });

    run("tauberian.fourier_triangle", "second-order coefficient decay of the kink", [&] {
        add("abs", fourier_decay_check(spectrum(tri, g), g).slope, -2.0, 0.1);
    });

    run("tauberian.fourier_verdict", "decay verdicts separate kink from jump", [&] {
        const bool tri_ok = fourier_decay_check(spectrum(tri, g), g).decay_order_at_least(2.0);
        const bool heav_no =
            !fourier_decay_check(spectrum(heav, g), g).decay_order_at_least(2.0);
        add("bool", tri_ok && heav_no ? 1.0 : 0.0, 1.0, 0.0);
    });

    run("tauberian.exponent_select", "budget-balancing exponent against brute-force minima",
        [&] {
            std::mt19937 rng(7);
            std::uniform_real_distribution<double> uab(0.3, 3.0);
            std::uniform_real_distribution<double> ukr(0.3, 4.0);
            double worst = 0.0;
            for (int t = 0; t < 10; ++t) {
                const double a = uab(rng), b = uab(rng), k = ukr(rng), r = ukr(rng);
                const double eta = exponent_select(a, b, k, r);
                std::vector<double> xs, es;
                for (int p = 4; p <= 12; ++p) {
                    const double X = std::pow(2.0, p);
                    const double cap = std::pow(1.0 + X, -(k + r) / b);
                    double best = std::numeric_limits<double>::infinity();
                    for (int i = 0; i < 4000; ++i) {
                        const double e =
                            cap * std::pow(1e-3, 1.0 - static_cast<double>(i) / 3999.0);
                        best = std::min(best, std::pow(e, b) * std::pow(X, r) +
                                                  std::pow(e, -a) * std::pow(X, -k));
                    }
                    // the residual bound is a power of (1+X): regress there
                    xs.push_back(1.0 + X);
                    es.push_back(best);
                }
                worst = std::max(worst, std::abs(fit_scaling(xs, es).slope + k - eta));
            }
            add("le", worst, 0.0, 0.05);
        });

    run("tauberian.association_embed", "mollification net converges back to the jump", [&] {
        const auto r = association_check(embed(heav, fr), heav);
        add("bool", r.associated ? 1.0 : 0.0, 1.0, 0.0,
            "strong rate " + detail::fmt(r.strong_rate));
    });

    run("tauberian.association_rate", "eps^2-weighted point mass dies at second order", [&] {
        const auto net = scale_net(embed(dirac, fr), 2.0);
        const auto r = association_check(net, DistributionSpec::constant_fn(0.0));
        add("abs", r.strong_rate, 2.0, 0.05,
            std::string("associated ") + (r.associated ? "yes" : "no"));
    });

    // ---- counterexample ----

    run("counterexample.tail_identity", "translate family L1 mass equals the active tail sum",
        [&] {
            const auto rho = detail::bump(g, 0.45);
            const double rho1 = lp_norm(rho, 1.0);
            const auto [step, sites] = detail::counterexample_layout(g);
            (void)step;
            double worst = 0.0;
            for (const double eps : {0.6, 0.3, 0.125, 1.0 / 16.0, 1.0 / 24.0}) {
                const auto f = counterexample_net_1(rho, eps);
                const auto n_min = static_cast<std::size_t>(
                    std::max(0.0, std::ceil(1.0 / eps - 1.0 - 1e-12)));
                double expect = 0.0;
                for (std::size_t n = n_min; n < sites; ++n)
                    expect += rho1 / static_cast<double>((n + 1) * (n + 1));
                worst = std::max(worst, std::abs(lp_norm(f, 1.0) - expect) / expect);
            }
            add("le", worst, 0.0, 1e-12);
        });

    run("counterexample.window_vanishing",
        "fixed window empties once its translate leaves the active tail", [&] {
            const auto rho = detail::bump(g, 0.45);
            const auto [step, sites] = detail::counterexample_layout(g);
            (void)sites;
            const std::size_t c5 = (g.n / 2 + 5 * step) % g.n;
            const Window w{g.x(c5 - 45), g.x(c5 + 45)};
            const double off1 = lp_norm(counterexample_net_1(rho, 1.0 / 7.0),
                                        std::numeric_limits<double>::infinity(), w);
            const double off2 = lp_norm(counterexample_net_1(rho, 1.0 / 10.0),
                                        std::numeric_limits<double>::infinity(), w);
            const double on = lp_norm(counterexample_net_1(rho, 1.0 / 5.0),
                                      std::numeric_limits<double>::infinity(), w);
            add("bool", off1 == 0.0 && off2 == 0.0 && on > 1e-6 ? 1.0 : 0.0, 1.0, 0.0,
                "active sup " + detail::fmt(on));
        });

    return rows;
}

inline ordered_json verify_report(const AnalysisConfig& cfg, const std::vector<VerifyRow>& rows) {
    ordered_json jr = ordered_json::array();
    std::size_t passed = 0;
    for (const auto& r : rows) {
        jr.push_back(to_json(r));
        if (r.pass) ++passed;
    }
    ordered_json out = report_header(cfg);
    out["rows"] = jr;
    out["summary"] = ordered_json{{"total", rows.size()}, {"passed", passed},
                                  {"all_pass", passed == rows.size()}};
    return out;
}

}
