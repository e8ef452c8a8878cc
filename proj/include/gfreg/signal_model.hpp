#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"
#include "lp_frame.hpp"
#include "sampled.hpp"

namespace gfreg {

// Catalog of test distributions. Every kind carries an exact spectrum;
// point masses are never sampled in space, they exist only as coefficients.
struct DistributionSpec {
    enum class Kind {
        delta_derivative,  // delta^(m) at the domain center
        heaviside,         // periodic jump pair: indicator of the centered half period
        cusp,              // |x - center|^tau
        weierstrass,       // sum_{j<=J} 2^{-j tau} cos(2^j x)
        smooth_gaussian,   // unit-mass Gaussian bump, width sigma
        triangle_wave,     // mean-zero antiderivative of the centered square wave
        constant,          // c
        sampled,           // arbitrary grid data
        finite_sum,        // sum of spectral derivatives of other specs
    };

    Kind kind = Kind::constant;
    int m = 0;                   // delta derivative order
    double tau = 0.5;            // cusp / weierstrass regularity
    double center = -1.0;        // cusp center; negative means domain center
    int J = 6;                   // weierstrass truncation level
    double sigma = 4.0;          // gaussian width
    double value = 1.0;          // constant value
    std::shared_ptr<const SampledFunction> data;  // sampled kind
    std::vector<std::pair<int, std::shared_ptr<const DistributionSpec>>> terms;  // finite_sum

    static DistributionSpec delta(int order = 0) {
        DistributionSpec s;
        s.kind = Kind::delta_derivative;
        s.m = order;
        return s;
    }
    static DistributionSpec heaviside_jump() {
        DistributionSpec s;
        s.kind = Kind::heaviside;
        return s;
    }
    static DistributionSpec cusp_at(double tau, double center = -1.0) {
        DistributionSpec s;
        s.kind = Kind::cusp;
        s.tau = tau;
        s.center = center;
        return s;
    }
    static DistributionSpec weierstrass_sum(double tau, int J = 6) {
        DistributionSpec s;
        s.kind = Kind::weierstrass;
        s.tau = tau;
        s.J = J;
        return s;
    }
    static DistributionSpec gaussian(double sigma = 4.0, double center = -1.0) {
        DistributionSpec s;
        s.kind = Kind::smooth_gaussian;
        s.sigma = sigma;
        s.center = center;
        return s;
    }
    static DistributionSpec triangle() {
        DistributionSpec s;
        s.kind = Kind::triangle_wave;
        return s;
    }
    static DistributionSpec constant_fn(double c = 1.0) {
        DistributionSpec s;
        s.kind = Kind::constant;
        s.value = c;
        return s;
    }
    static DistributionSpec from_samples(SampledFunction f) {
        DistributionSpec s;
        s.kind = Kind::sampled;
        s.data = std::make_shared<const SampledFunction>(std::move(f));
        return s;
    }
    static DistributionSpec sum_of_derivatives(
        std::vector<std::pair<int, DistributionSpec>> parts) {
        DistributionSpec s;
        s.kind = Kind::finite_sum;
        for (auto& [ord, sp] : parts)
            s.terms.emplace_back(ord, std::make_shared<const DistributionSpec>(std::move(sp)));
        return s;
    }

    void validate(const GridSpec& g) const {
        switch (kind) {
            case Kind::delta_derivative:
                if (m < 0) throw invalid_config("delta: order must be >= 0");
                break;
            case Kind::cusp:
                if (!(tau > 0.0 && tau <= 1.0)) throw invalid_config("cusp: tau must be in (0, 1]");
                if (center >= 0.0 && !(center < g.period))
                    throw invalid_config("cusp: center outside the period");
                break;
            case Kind::weierstrass: {
                if (!(tau >= 0.0 && tau <= 1.0))
                    throw invalid_config("weierstrass: tau must be in [0, 1]");
                if (J < 0) throw invalid_config("weierstrass: J must be >= 0");
                const long top = std::lround(std::pow(2.0, J) / g.dxi());
                if (top < 1 || top >= static_cast<long>(g.n / 4))
                    throw invalid_config("weierstrass: 2^J must stay below a quarter of Nyquist");
                break;
            }
            case Kind::smooth_gaussian:
                if (!(sigma > 0.0)) throw invalid_config("gaussian: sigma must be positive");
                if (center >= 0.0 && !(center < g.period))
                    throw invalid_config("gaussian: center outside the period");
                break;
            case Kind::sampled:
                if (!data || data->grid.n != g.n)
                    throw invalid_config("sampled: data missing or grid mismatch");
                break;
            case Kind::finite_sum:
                for (const auto& [ord, sp] : terms) {
                    if (ord < 0) throw invalid_config("finite_sum: negative derivative order");
                    sp->validate(g);
                }
                break;
            default:
                break;
        }
    }

    std::string describe() const {
        std::ostringstream os;
        switch (kind) {
            case Kind::delta_derivative: os << "delta:m=" << m; break;
            case Kind::heaviside: os << "heaviside"; break;
            case Kind::cusp: os << "cusp:tau=" << tau; break;
            case Kind::weierstrass: os << "weierstrass:tau=" << tau << ",J=" << J; break;
            case Kind::smooth_gaussian: os << "gaussian:sigma=" << sigma; break;
            case Kind::triangle_wave: os << "triangle"; break;
            case Kind::constant: os << "const:c=" << value; break;
            case Kind::sampled: os << "sampled"; break;
            case Kind::finite_sum: os << "finite_sum[" << terms.size() << "]"; break;
        }
        return os.str();
    }
};

namespace detail {

// Euler-Maclaurin tail of sum_{k > K} k^{-s}
inline double power_tail(double K, double s) {
    return std::pow(K, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(K, -s) -
           s * std::pow(K, -s - 1.0) / 12.0;
}

}

// Exact Fourier coefficients of a catalog element on the grid, in FFT index
// order with the forward 1/N convention (so realize() is one inverse FFT).
inline std::vector<cplx> spectrum(const DistributionSpec& spec, const GridSpec& g) {
    spec.validate(g);
    const double L = g.period;
    const double xc = g.center();
    std::vector<cplx> c(g.n, cplx(0.0, 0.0));

    switch (spec.kind) {
        case DistributionSpec::Kind::delta_derivative: {
            for (std::size_t k = 0; k < g.n; ++k) {
                const double xi = g.xi(k);
                cplx p(1.0, 0.0);
                for (int i = 0; i < spec.m; ++i) p *= cplx(0.0, xi);
                c[k] = p * std::polar(1.0 / L, -xi * xc);
            }
            break;
        }
        case DistributionSpec::Kind::heaviside: {
            // indicator of [xc - L/4, xc + L/4): jumps in pairs as periodicity demands
            c[0] = cplx(0.5, 0.0);
            for (std::size_t k = 1; k < g.n; ++k) {
                const long sk = g.signed_index(k);
                const double xi = g.xi(k);
                const double amp =
                    std::sin(0.5 * std::numbers::pi * static_cast<double>(sk)) /
                    (std::numbers::pi * static_cast<double>(sk));
                c[k] = amp * std::polar(1.0, -xi * xc);
            }
            break;
        }
        case DistributionSpec::Kind::triangle_wave: {
            const auto sq = spectrum(DistributionSpec::heaviside_jump(), g);
            for (std::size_t k = 1; k < g.n; ++k) c[k] = sq[k] / cplx(0.0, g.xi(k));
            c[0] = cplx(0.0, 0.0);
            break;
        }
        case DistributionSpec::Kind::cusp: {
            // |x - x0|^tau. The continuum transform of |x|^tau has coefficients
            // -amp |xi|^{-1-tau}; the zero mode is chosen so the truncated
            // lattice object pairs like the continuum one: the spectral mass
            // beyond the Nyquist edge is folded into c_0 via an
            // Euler-Maclaurin tail estimate. Without that compensation every
            // scaling pairing against this input overshoots its exponent.
            const double tau = spec.tau;
            const double x0 = spec.center < 0.0 ? xc : spec.center;
            const double amp =
                2.0 * std::tgamma(1.0 + tau) * std::sin(0.5 * std::numbers::pi * tau) / L;
            double lattice_sum = 0.0;
            for (std::size_t k = 1; k < g.n; ++k) {
                const double xi = g.xi(k);
                const double mag = std::pow(std::abs(xi), -1.0 - tau);
                c[k] = -amp * mag * std::polar(1.0, -xi * x0);
                lattice_sum += mag;
            }
            const double tail = 2.0 * std::pow(g.dxi(), -1.0 - tau) *
                                detail::power_tail(static_cast<double>(g.n / 2), 1.0 + tau);
            c[0] = cplx(amp * (lattice_sum + tail), 0.0);
            break;
        }
        case DistributionSpec::Kind::weierstrass: {
            for (int j = 0; j <= spec.J; ++j) {
                const long idx = std::lround(std::pow(2.0, j) / g.dxi());
                const double w = 0.5 * std::pow(2.0, -static_cast<double>(j) * spec.tau);
                c[static_cast<std::size_t>(idx)] += cplx(w, 0.0);
                c[g.n - static_cast<std::size_t>(idx)] += cplx(w, 0.0);
            }
            break;
        }
        case DistributionSpec::Kind::smooth_gaussian: {
            const double x0 = spec.center < 0.0 ? xc : spec.center;
            for (std::size_t k = 0; k < g.n; ++k) {
                const double xi = g.xi(k);
                c[k] = std::exp(-0.5 * spec.sigma * spec.sigma * xi * xi) *
                       std::polar(1.0 / L, -xi * x0);
            }
            break;
        }
        case DistributionSpec::Kind::constant: {
            c[0] = cplx(spec.value, 0.0);
            break;
        }
        case DistributionSpec::Kind::sampled: {
            c = spec.data->spectrum();
            break;
        }
        case DistributionSpec::Kind::finite_sum: {
            for (const auto& [ord, sp] : spec.terms) {
                const auto part = spectrum(*sp, g);
                for (std::size_t k = 0; k < g.n; ++k) {
                    const double xi = g.xi(k);
                    cplx p(1.0, 0.0);
                    for (int i = 0; i < ord; ++i) p *= cplx(0.0, xi);
                    c[k] += p * part[k];
                }
            }
            break;
        }
    }
    return c;
}

inline SampledFunction realize(const DistributionSpec& spec, const GridSpec& g) {
    return SampledFunction::from_spectrum(g, spectrum(spec, g));
}

// Exact calibration exponents where the catalog knows them; used as oracles.
inline std::map<int, double> known_calibration(const DistributionSpec& spec) {
    std::map<int, double> c;
    switch (spec.kind) {
        case DistributionSpec::Kind::delta_derivative:
            for (int j = 0; j <= 8; ++j) c[j] = spec.m + 1 + j;
            break;
        case DistributionSpec::Kind::smooth_gaussian:
        case DistributionSpec::Kind::constant:
            for (int j = 0; j <= 8; ++j) c[j] = 0.0;
            break;
        case DistributionSpec::Kind::cusp:
            c[0] = 0.0;
            for (int j = 1; j <= 8; ++j) c[j] = j - spec.tau;
            break;
        case DistributionSpec::Kind::heaviside:
            for (int j = 0; j <= 8; ++j) c[j] = j;
            break;
        case DistributionSpec::Kind::triangle_wave:
            c[0] = 0.0;
            c[1] = 0.0;
            for (int j = 2; j <= 8; ++j) c[j] = j - 1;
            break;
        case DistributionSpec::Kind::weierstrass:
            // only meaningful while enough lacunary levels survive truncation
            if (spec.J >= 4) {
                c[0] = 0.0;
                for (int j = 1; j <= 8; ++j) c[j] = j - spec.tau;
            }
            break;
        default:
            break;
    }
    return c;
}

// epsilon-indexed net of smooth functions. The evaluator is pure; nets built
// by embed() evaluate to mollify(spec, eps) by construction.
struct GeneralizedNet {
    GridSpec grid;
    std::function<SampledFunction(double)> evaluator;
    std::string provenance;
    std::map<int, double> known_exponents;  // empty when unknown

    SampledFunction operator()(double eps) const { return evaluator(eps); }
};

inline GeneralizedNet embed(const DistributionSpec& spec, const LPFrame& frame) {
    auto coeffs = std::make_shared<const std::vector<cplx>>(spectrum(spec, frame.grid));
    GeneralizedNet net;
    net.grid = frame.grid;
    net.provenance = "embedding(" + spec.describe() + ")";
    net.known_exponents = known_calibration(spec);
    const LPFrame* fr = &frame;
    net.evaluator = [coeffs, fr](double eps) { return mollify_spectrum(*coeffs, eps, *fr); };
    return net;
}

inline GeneralizedNet embed(const SampledFunction& u, const LPFrame& frame) {
    auto coeffs = std::make_shared<const std::vector<cplx>>(u.spectrum());
    GeneralizedNet net;
    net.grid = u.grid;
    net.provenance = "embedding(sampled)";
    const LPFrame* fr = &frame;
    net.evaluator = [coeffs, fr](double eps) { return mollify_spectrum(*coeffs, eps, *fr); };
    return net;
}

inline GeneralizedNet scale_net(const GeneralizedNet& base, double s) {
    if (s == 0.0) return base;
    GeneralizedNet net;
    net.grid = base.grid;
    net.provenance = "scaled(" + base.provenance + ", s=" + std::to_string(s) + ")";
    for (const auto& [j, cj] : base.known_exponents) net.known_exponents[j] = cj - s;
    auto ev = base.evaluator;
    net.evaluator = [ev, s](double eps) {
        return scaled(ev(eps), std::pow(eps, s));
    };
    return net;
}

/// Translate-family net: rho is repeated at sites 2, 4, 6, ... units from its
// own center with weights (n+1)^{-2}, but a term enters only once
// eps >= 1/(n+1). On any fixed window the active terms eventually march out
// of sight as eps shrinks, yet the summed norm stays of order eps.
namespace detail {

struct CounterexampleLayout {
    std::size_t step_cells;   // translate spacing snapped to the lattice
    std::size_t n_sites;      // how many non-overlapping sites the period holds
};

inline CounterexampleLayout counterexample_layout(const GridSpec& g) {
    const auto step = static_cast<std::size_t>(std::llround(2.0 / g.dx()));
    if (step == 0) throw domain_size_error("counterexample net: grid cannot hold unit translates");
    return {step, g.n / step};
}

}

inline void require_counterexample_support(const SampledFunction& rho) {
    const GridSpec& g = rho.grid;
    const double xc = g.center();
    double peak = rho.sup_abs();
    for (std::size_t j = 0; j < g.n; ++j) {
        double d = std::abs(g.x(j) - xc);
        d = std::min(d, g.period - d);
        if (d > 0.5 && std::abs(rho.values[j]) > 1e-13 * peak)
            throw invalid_config("counterexample net: rho must vanish beyond radius 1/2 of center");
    }
}

inline SampledFunction counterexample_net_1(const SampledFunction& rho, double eps) {
    if (!(eps > 0.0 && eps <= 1.0))
        throw scale_window_error("counterexample net: eps must lie in (0, 1]");
    require_counterexample_support(rho);
    const GridSpec& g = rho.grid;
    const auto [step, sites] = detail::counterexample_layout(g);

    const auto needed = static_cast<std::size_t>(std::ceil(1.0 / eps - 1e-12));
    if (needed > sites)
        throw domain_size_error("counterexample net: period too short for ceil(1/eps) translates");

    // active terms: (n+1)^{-1} <= eps
    const auto n_min = static_cast<std::size_t>(
        std::max(0.0, std::ceil(1.0 / eps - 1.0 - 1e-12)));

    std::vector<cplx> out(g.n, cplx(0.0, 0.0));
    for (std::size_t n = n_min; n < sites; ++n) {
        const double w = 1.0 / static_cast<double>((n + 1) * (n + 1));
        const std::size_t shift = (n * step) % g.n;
        for (std::size_t j = 0; j < g.n; ++j) out[(j + shift) % g.n] += w * rho.values[j];
    }
    return SampledFunction(g, std::move(out));
}

inline GeneralizedNet make_counterexample_net(const SampledFunction& rho) {
    require_counterexample_support(rho);
    GeneralizedNet net;
    net.grid = rho.grid;
    net.provenance = "counterexample_1";
    auto r = std::make_shared<const SampledFunction>(rho);
    net.evaluator = [r](double eps) { return counterexample_net_1(*r, eps); };
    return net;
}

// (k, s) class bookkeeping. k may be infinite (nullopt); s may be -inf.
struct ClassPair {
    std::optional<int> k;  // nullopt = infinite
    double s = 0.0;
};

enum class CombineOp { sum, product };

// Bound pair for sums and products of nets of known class: the combined net
// is of class (r, p) for some r >= min(k1, k2) and p <= max(s1, s2) for sums,
// p <= s1 + s2 for products. Lattice conventions: min(inf, k) = k,
// max(-inf, s) = s.
inline ClassPair class_combine(const ClassPair& a, const ClassPair& b, CombineOp op) {
    ClassPair out;
    if (!a.k)
        out.k = b.k;
    else if (!b.k)
        out.k = a.k;
    else
        out.k = std::min(*a.k, *b.k);
    out.s = op == CombineOp::sum ? std::max(a.s, b.s) : a.s + b.s;
    return out;
}

// Spec-string grammar: name[:key=value,...]. Unknown names, unknown keys and
// malformed pairs are parse errors (CLI exit code 2).
inline DistributionSpec parse_spec(const std::string& text) {
    std::string name = text;
    std::string args;
    if (const auto pos = text.find(':'); pos != std::string::npos) {
        name = text.substr(0, pos);
        args = text.substr(pos + 1);
    }

    std::map<std::string, double> kv;
    if (!args.empty()) {
        std::istringstream as(args);
        std::string item;
        while (std::getline(as, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
                throw parse_error("spec: malformed key=value pair '" + item + "'");
            const std::string key = item.substr(0, eq);
            try {
                std::size_t used = 0;
                const double v = std::stod(item.substr(eq + 1), &used);
                if (used != item.size() - eq - 1)
                    throw parse_error("spec: bad numeric value in '" + item + "'");
                kv[key] = v;
            } catch (const parse_error&) {
                throw;
            } catch (...) {
                throw parse_error("spec: bad numeric value in '" + item + "'");
            }
        }
    }

    const auto take = [&](const char* key, double fallback) {
        if (const auto it = kv.find(key); it != kv.end()) {
            const double v = it->second;
            kv.erase(it);
            return v;
        }
        return fallback;
    };
    const auto finish = [&](DistributionSpec s) {
        if (!kv.empty()) throw parse_error("spec: unknown key '" + kv.begin()->first + "'");
        return s;
    };

    if (name == "delta" || name == "delta_derivative")
        return finish(DistributionSpec::delta(static_cast<int>(take("m", 0.0))));
    if (name == "heaviside" || name == "square")
        return finish(DistributionSpec::heaviside_jump());
    if (name == "cusp")
        return finish(DistributionSpec::cusp_at(take("tau", 0.5), take("center", -1.0)));
    if (name == "weierstrass")
        return finish(DistributionSpec::weierstrass_sum(take("tau", 0.3),
                                                        static_cast<int>(take("J", 6.0))));
    if (name == "gaussian" || name == "smooth_gaussian")
        return finish(DistributionSpec::gaussian(take("sigma", 4.0), take("center", -1.0)));
    if (name == "triangle" || name == "triangle_wave")
        return finish(DistributionSpec::triangle());
    if (name == "const" || name == "constant")
        return finish(DistributionSpec::constant_fn(take("c", 1.0)));
    throw parse_error("spec: unknown catalog name '" + name + "'");
}

}
