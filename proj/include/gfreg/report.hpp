#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "calibration.hpp"
#include "errors.hpp"
#include "fit.hpp"
#include "grid.hpp"
#include "lp_frame.hpp"
#include "signal_model.hpp"
#include "tauberian.hpp"
#include "version.hpp"
#include "zygmund_hoelder.hpp"

namespace gfreg {

using ordered_json = nlohmann::ordered_json;

// JSON cannot carry inf/nan; keep them readable instead of dropping to null
inline ordered_json json_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

inline ordered_json to_json(const ScalingFit& f) {
    return ordered_json{{"slope", json_number(f.slope)},
                        {"intercept", json_number(f.intercept)},
                        {"r_squared", json_number(f.r_squared)},
                        {"residual_max", json_number(f.residual_max)},
                        {"n_points", f.n_points}};
}

inline ordered_json to_json(const OrderCalibration& oc) {
    ordered_json j{{"order", oc.order},
                   {"c_hat", json_number(oc.c_hat)},
                   {"zero_response", oc.zero_response}};
    if (!oc.zero_response) j["fit"] = to_json(oc.fit);
    return j;
}

inline ordered_json to_json(const InferredClass& c) {
    return ordered_json{{"k", c.k},
                        {"k_is_lower_bound", c.k_is_lower_bound},
                        {"s", json_number(c.s)},
                        {"sigma_hat", json_number(c.sigma_hat)}};
}

inline ordered_json to_json(const CalibrationReport& r) {
    ordered_json orders = ordered_json::array();
    for (const auto& oc : r.orders) orders.push_back(to_json(oc));
    ordered_json defects = ordered_json::array();
    for (const double d : r.convexity_defects) defects.push_back(json_number(d));
    return ordered_json{{"orders", orders},
                        {"inferred_class", to_json(r.inferred)},
                        {"convexity_defects", defects},
                        {"nonmonotone", r.nonmonotone},
                        {"p", json_number(r.p)},
                        {"eps_grid_size", r.eps_grid.size()}};
}

inline ordered_json to_json(const ExponentResult& e) {
    return ordered_json{{"r_hat", json_number(e.r_hat)},
                        {"capped", e.capped},
                        {"usable_scales", e.usable},
                        {"fit", to_json(e.fit)}};
}

inline ordered_json to_json(const MembershipPart& p) {
    return ordered_json{{"name", p.name},
                        {"pass", p.pass},
                        {"mode", p.mode},
                        {"slope", json_number(p.slope)},
                        {"sat_ratio", json_number(p.sat_ratio)}};
}

inline ordered_json to_json(const MembershipResult& m) {
    ordered_json parts = ordered_json::array();
    for (const auto& p : m.parts) parts.push_back(to_json(p));
    return ordered_json{{"member", m.member}, {"margin", json_number(m.margin)}, {"parts", parts}};
}

inline ordered_json to_json(const HoermannOrder& h) {
    return ordered_json{{"order", h.order},
                        {"regime", h.regime},
                        {"slope", json_number(h.slope)},
                        {"expected", json_number(h.expected)},
                        {"pass", h.pass}};
}

inline ordered_json to_json(const HoermannReport& rep) {
    ordered_json orders = ordered_json::array();
    for (const auto& h : rep.orders) orders.push_back(to_json(h));
    return ordered_json{{"r", json_number(rep.r)},
                        {"tol", rep.tol},
                        {"orders", orders},
                        {"all_pass", rep.all_pass}};
}

inline ordered_json to_json(const ProductCheck& p) {
    return ordered_json{{"z1", json_number(p.z1)},
                        {"z2", json_number(p.z2)},
                        {"zw", json_number(p.zw)},
                        {"order_w", json_number(p.order_w)},
                        {"K", json_number(p.K)}};
}

inline ordered_json to_json(const SmoothnessVerdict& v) {
    ordered_json ladder = ordered_json::array();
    for (const auto& oc : v.orders)
        ladder.push_back(oc.zero_response ? ordered_json(nullptr) : json_number(oc.c_hat));
    return ordered_json{{"smooth", v.smooth},
                        {"witness_order", v.witness_order},
                        {"base", json_number(v.base)},
                        {"worst", json_number(v.worst)},
                        {"slack", v.slack},
                        {"c_hat", ladder}};
}

inline ordered_json to_json(const QuasiResult& q) {
    return ordered_json{{"alpha_hat", json_number(q.alpha_hat)}, {"fit", to_json(q.fit)}};
}

inline ordered_json to_json(const FourierDecayResult& f) {
    return ordered_json{{"slope", json_number(f.slope)},
                        {"bands", f.band_centers.size()},
                        {"fit", to_json(f.fit)}};
}

inline ordered_json to_json(const AssociationResult& a) {
    ordered_json rates = ordered_json::array();
    for (const double r : a.rates) rates.push_back(json_number(r));
    return ordered_json{{"associated", a.associated},
                        {"strong_rate", json_number(a.strong_rate)},
                        {"rates", rates}};
}

inline ordered_json to_json(const MomentDefects& m) {
    ordered_json phi = ordered_json::array(), psi = ordered_json::array();
    for (const double v : m.phi) phi.push_back(json_number(v));
    for (const double v : m.psi) psi.push_back(json_number(v));
    return ordered_json{{"phi", phi}, {"psi", psi}};
}

inline ordered_json to_json(const NegligibilityResult& n) {
    return ordered_json{{"negligible", n.negligible}, {"min_slope", json_number(n.min_slope)}};
}

inline ordered_json to_json(const GridSpec& g) {
    return ordered_json{{"n", g.n}, {"period", g.period}};
}

// Run-wide knobs; everything else is an explicit argument of some operation.
struct AnalysisConfig {
    GridSpec grid;
    double sharpness = 2.0;
    int max_order = 3;
    double p = std::numeric_limits<double>::infinity();
    double plateau_tol = default_plateau_tol;
    double slope_tol = default_slope_tol;
    std::string out_dir;

    void validate() const {
        grid.validate();
        if (!(sharpness > 0.0)) throw invalid_config("config: sharpness must be positive");
        if (max_order < 0 || max_order > 8) throw invalid_config("config: max_order out of range");
        if (!std::isinf(p) && !(p >= 1.0)) throw invalid_config("config: p must be >= 1 or inf");
        if (!(plateau_tol > 0.0) || !(slope_tol > 0.0))
            throw invalid_config("config: tolerances must be positive");
    }
};

inline AnalysisConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("config: cannot open '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw parse_error(std::string("config: bad JSON: ") + e.what());
    }
    AnalysisConfig cfg;
    for (const auto& [key, val] : j.items()) {
        try {
            if (key == "grid") {
                if (val.contains("n")) cfg.grid.n = val.at("n").get<std::size_t>();
                if (val.contains("period")) cfg.grid.period = val.at("period").get<double>();
                for (const auto& [gk, gv] : val.items()) {
                    (void)gv;
                    if (gk != "n" && gk != "period")
                        throw parse_error("config: unknown grid key '" + gk + "'");
                }
            } else if (key == "sharpness") {
                cfg.sharpness = val.get<double>();
            } else if (key == "max_order") {
                cfg.max_order = val.get<int>();
            } else if (key == "p") {
                cfg.p = val.is_string() ? std::numeric_limits<double>::infinity()
                                        : val.get<double>();
                if (val.is_string() && val.get<std::string>() != "inf")
                    throw parse_error("config: p must be a number or \"inf\"");
            } else if (key == "plateau_tol") {
                cfg.plateau_tol = val.get<double>();
            } else if (key == "slope_tol") {
                cfg.slope_tol = val.get<double>();
            } else if (key == "out_dir") {
                cfg.out_dir = val.get<std::string>();
            } else {
                throw parse_error("config: unknown key '" + key + "'");
            }
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception& e) {
            throw parse_error("config: bad value for '" + key + "': " + e.what());
        }
    }
    try {
        cfg.validate();
    } catch (const invalid_config& e) {
        throw parse_error(e.what());
    }
    return cfg;
}

inline ordered_json to_json(const AnalysisConfig& c) {
    return ordered_json{{"grid", to_json(c.grid)},
                        {"sharpness", c.sharpness},
                        {"max_order", c.max_order},
                        {"p", json_number(c.p)},
                        {"plateau_tol", c.plateau_tol},
                        {"slope_tol", c.slope_tol}};
}

inline std::string config_hash(const AnalysisConfig& c) {
    const std::string s = to_json(c).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

inline ordered_json report_header(const AnalysisConfig& cfg) {
    return ordered_json{{"tool", "gfreg"},
                        {"version", version_string},
                        {"config", to_json(cfg)},
                        {"config_hash", config_hash(cfg)}};
}

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write '" + path + "'");
    out << content;
}

// two-column CSV (y, then one column per requested position) of a wavelet map
inline std::string wavelet_map_csv(const WaveletMap& map, const std::vector<std::size_t>& cols) {
    std::ostringstream os;
    os << "y";
    for (const std::size_t c : cols) os << ",x_" << map.grid.x(c);
    os << "\n";
    for (std::size_t r = 0; r < map.y_grid.size(); ++r) {
        os << map.y_grid[r];
        for (const std::size_t c : cols) os << "," << map.abs_values[r][c % map.grid.n];
        os << "\n";
    }
    return os.str();
}

// CSV ingestion for sampled data: two columns x,value over one uniform period,
// resampled onto the working grid by trigonometric interpolation.
inline SampledFunction read_samples_csv(const std::string& path, const GridSpec& g) {
    std::ifstream in(path);
    if (!in) throw parse_error("csv: cannot open '" + path + "'");
    std::vector<double> xs, vs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string a, b;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b))
            throw parse_error("csv: line " + std::to_string(lineno) + ": expected x,value");
        if (lineno == 1 && !a.empty() &&
            !(std::isdigit(static_cast<unsigned char>(a[0])) || a[0] == '-' || a[0] == '+' ||
              a[0] == '.'))
            continue;  // header row
        try {
            xs.push_back(std::stod(a));
            vs.push_back(std::stod(b));
        } catch (...) {
            throw parse_error("csv: line " + std::to_string(lineno) + ": bad number");
        }
    }
    const std::size_t m = xs.size();
    if (m < 16 || (m & (m - 1)) != 0)
        throw parse_error("csv: need a power-of-two sample count >= 16, got " +
                          std::to_string(m));
    const double step = xs.size() > 1 ? xs[1] - xs[0] : 0.0;
    for (std::size_t i = 1; i < m; ++i)
        if (std::abs(xs[i] - xs[i - 1] - step) > 1e-9 * std::max(1.0, std::abs(step)))
            throw parse_error("csv: sample positions must be uniformly spaced");
    if (std::abs(step * static_cast<double>(m) - g.period) > 1e-6 * g.period)
        throw parse_error("csv: samples must cover exactly one period of the working grid");

    // trig resample: pad or truncate the centered spectrum to the grid size
    std::vector<cplx> raw(m);
    for (std::size_t i = 0; i < m; ++i) raw[i] = cplx(vs[i], 0.0);
    const auto cs = fft_forward(std::move(raw));
    std::vector<cplx> out(g.n, cplx(0.0, 0.0));
    const std::size_t half = std::min(m, g.n) / 2;
    for (std::size_t k = 0; k < half; ++k) out[k] = cs[k];
    for (std::size_t k = 1; k <= half; ++k) out[g.n - k] = cs[m - k];
    return SampledFunction::from_spectrum(g, out);
}

}
