#include <cmath>
#include <cstddef>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <gfreg/gfreg.hpp>

namespace {

using namespace gfreg;

void emit(const ordered_json& doc, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text(out_path, text);
}

DistributionSpec input_spec(const std::string& spec_str, const std::string& csv_path,
                            const GridSpec& g) {
    if (!csv_path.empty()) return DistributionSpec::from_samples(read_samples_csv(csv_path, g));
    if (spec_str.empty()) throw parse_error("no input: pass --spec or --csv");
    return parse_spec(spec_str);
}

int cmd_frame_check(const AnalysisConfig& cfg, const std::string& out_path,
                    const std::string& kernel_csv) {
    const LPFrame fr = build_frame(cfg.grid, cfg.sharpness);
    const auto md = moment_defect(fr, 6);
    double worst_moment = 0.0;
    for (int m = 0; m <= 6; ++m) {
        worst_moment = std::max(worst_moment, md.phi[static_cast<std::size_t>(m)]);
        worst_moment = std::max(worst_moment, md.psi[static_cast<std::size_t>(m)]);
    }
    double worst_residual = 0.0;
    for (const double y : log_grid(0.55, 200.0, 16))
        worst_residual = std::max(worst_residual, std::abs(lp_identity_residual(fr, y, 512)));

    const bool ok = worst_moment <= 1e-8 && worst_residual <= 1e-6;
    ordered_json doc = report_header(cfg);
    doc["moment_defects"] = to_json(md);
    doc["worst_moment_defect"] = json_number(worst_moment);
    doc["identity_residual_max"] = json_number(worst_residual);
    doc["pass"] = ok;
    emit(doc, out_path);

    if (!kernel_csv.empty()) {
        std::ostringstream os;
        os << "x,phi,psi\n";
        for (std::size_t j = 0; j < cfg.grid.n; ++j)
            os << cfg.grid.x(j) << "," << fr.phi_spatial.values[j].real() << ","
               << fr.psi_spatial.values[j].real() << "\n";
        write_text(kernel_csv, os.str());
    }
    return ok ? 0 : 3;
}

int cmd_analyze(const AnalysisConfig& cfg, const std::string& out_path,
                const std::string& spec_str, const std::string& csv_path) {
    const DistributionSpec spec = input_spec(spec_str, csv_path, cfg.grid);
    const LPFrame fr = build_frame(cfg.grid, cfg.sharpness);
    const auto net = embed(spec, fr);
    const auto u = realize(spec, cfg.grid);

    ordered_json doc = report_header(cfg);
    doc["input"] = spec.describe();
    doc["calibration"] = to_json(growth_function(net, cfg.max_order,
                                                 grids::eps_calibration(cfg.grid),
                                                 Window::full(cfg.grid), cfg.p,
                                                 cfg.plateau_tol));
    doc["fine_scale_exponent"] = to_json(zygmund_exponent(u, fr));
    doc["fourier_decay"] = to_json(fourier_decay_check(spectrum(spec, cfg.grid), cfg.grid));
    doc["quasiasymptotic"] = to_json(quasiasymptotic_exponent(spec, cfg.grid));
    doc["smoothness"] = to_json(g_infinity_test(net, std::max(3, cfg.max_order)));
    emit(doc, out_path);
    return 0;
}

int cmd_zygmund(const AnalysisConfig& cfg, const std::string& out_path,
                const std::string& spec_str, const std::string& csv_path, double r, double s) {
    const DistributionSpec spec = input_spec(spec_str, csv_path, cfg.grid);
    const LPFrame fr = build_frame(cfg.grid, cfg.sharpness);
    const auto net = embed(spec, fr);

    ordered_json doc = report_header(cfg);
    doc["input"] = spec.describe();
    doc["order"] = r;
    doc["weight"] = s;
    doc["fine_scale_exponent"] = to_json(zygmund_exponent(realize(spec, cfg.grid), fr));
    doc["zygmund_membership"] = to_json(generalized_zygmund_membership(
        net, r, s, fr, grids::eps_membership(cfg.grid), grids::eta_default(cfg.grid),
        cfg.slope_tol));

    if (r > 1e-12) {
        // split r into k + tau with tau in (0, 1]
        int k = static_cast<int>(std::floor(r - 1e-12));
        double tau = r - k;
        if (tau <= 1e-12) {
            k -= 1;
            tau = 1.0;
        }
        doc["hoelder_order"] = ordered_json{{"k", k}, {"tau", tau}};
        doc["hoelder_membership"] = to_json(hoelder_class_membership(
            net, k, tau, s, grids::eps_membership(cfg.grid), Window::full(cfg.grid), 0.0,
            cfg.slope_tol));
    }
    emit(doc, out_path);
    return 0;
}

int cmd_wavelet_map(const AnalysisConfig& cfg, const std::string& out_path,
                    const std::string& spec_str, const std::string& csv_path, int k,
                    const std::string& map_csv) {
    const DistributionSpec spec = input_spec(spec_str, csv_path, cfg.grid);
    const LPFrame fr = build_frame(cfg.grid, cfg.sharpness);
    const auto map = wavelet_transform(realize(spec, cfg.grid), fr, k);
    const auto dec = local_decay_map(map, 2.0 * k);

    ordered_json doc = report_header(cfg);
    doc["input"] = spec.describe();
    doc["psi_order"] = k;
    doc["scales"] = map.y_grid.size();
    doc["scales_used"] = dec.y_used.size();
    doc["min_exponent"] = json_number(dec.min_exponent);
    doc["argmin_index"] = dec.argmin;
    doc["argmin_x"] = json_number(cfg.grid.x(dec.argmin));
    doc["all_capped"] = dec.all_capped;
    emit(doc, out_path);

    if (!map_csv.empty()) {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < cfg.grid.n; j += 32) cols.push_back(j);
        write_text(map_csv, wavelet_map_csv(map, cols));
    }
    return 0;
}

int cmd_smooth_test(const AnalysisConfig& cfg, const std::string& out_path,
                    const std::string& spec_str, const std::string& csv_path) {
    const DistributionSpec spec = input_spec(spec_str, csv_path, cfg.grid);
    const LPFrame fr = build_frame(cfg.grid, cfg.sharpness);
    const auto v = g_infinity_test(embed(spec, fr), std::max(3, cfg.max_order));

    ordered_json doc = report_header(cfg);
    doc["input"] = spec.describe();
    doc["verdict"] = to_json(v);
    emit(doc, out_path);
    return 0;
}

int cmd_verify(const AnalysisConfig& cfg, const std::string& out_path,
               const std::string& filter) {
    const auto rows = run_verify(cfg, filter);
    emit(verify_report(cfg, rows), out_path);
    for (const auto& r : rows)
        if (!r.pass) return 3;
    return 0;
}

}

int main(int argc, char** argv) {
    CLI::App app{"regularity analysis for mollification nets on periodic grids"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::size_t grid_n = 0;
    double period = 0.0;
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out", out_path, "write the JSON report to this file instead of stdout");
    app.add_option("--grid-n", grid_n, "override the grid size (power of two, >= 256)");
    app.add_option("--period", period, "override the period length");

    auto* frame_cmd = app.add_subcommand("frame", "mollifier frame diagnostics");
    frame_cmd->require_subcommand(1);
    auto* frame_check = frame_cmd->add_subcommand("check", "moment and partition checks");
    std::string kernel_csv;
    frame_check->add_option("--kernel-csv", kernel_csv, "also dump kernel samples as CSV");

    std::string a_spec, a_csv;
    auto* analyze = app.add_subcommand("analyze", "full regularity report for one input");
    analyze->add_option("--spec", a_spec, "catalog input, name[:key=value,...]");
    analyze->add_option("--csv", a_csv, "sampled input, two-column x,value CSV");

    std::string z_spec, z_csv;
    double z_r = 0.0, z_s = 0.0;
    auto* zyg = app.add_subcommand("zygmund", "class membership tests at one order");
    zyg->add_option("--spec", z_spec, "catalog input");
    zyg->add_option("--csv", z_csv, "sampled input");
    zyg->add_option("--r", z_r, "class order r (split as k + tau for the direct test)")
        ->required();
    zyg->add_option("--s", z_s, "weight exponent s");

    std::string w_spec, w_csv, map_csv;
    int w_k = 1;
    auto* wmap = app.add_subcommand("wavelet-map", "cone decay map of one input");
    wmap->add_option("--spec", w_spec, "catalog input");
    wmap->add_option("--csv", w_csv, "sampled input");
    wmap->add_option("--k", w_k, "analyzer moment order (>= 1)");
    wmap->add_option("--map-csv", map_csv, "dump the |W(x, y)| map as CSV");

    std::string s_spec, s_csv;
    auto* smooth = app.add_subcommand("smooth-test", "global smoothness verdict");
    smooth->add_option("--spec", s_spec, "catalog input");
    smooth->add_option("--csv", s_csv, "sampled input");

    std::string filter;
    auto* verify = app.add_subcommand("verify", "re-measure the recorded properties");
    verify->add_option("--filter", filter, "run only rows whose id contains this tag");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        gfreg::AnalysisConfig cfg;
        if (!config_path.empty()) cfg = gfreg::load_config(config_path);
        if (grid_n != 0) cfg.grid.n = grid_n;
        if (period > 0.0) cfg.grid.period = period;
        try {
            cfg.validate();
        } catch (const gfreg::invalid_config& e) {
            throw gfreg::parse_error(e.what());
        }

        if (frame_check->parsed()) return cmd_frame_check(cfg, out_path, kernel_csv);
        if (analyze->parsed()) return cmd_analyze(cfg, out_path, a_spec, a_csv);
        if (zyg->parsed()) return cmd_zygmund(cfg, out_path, z_spec, z_csv, z_r, z_s);
        if (wmap->parsed()) return cmd_wavelet_map(cfg, out_path, w_spec, w_csv, w_k, map_csv);
        if (smooth->parsed()) return cmd_smooth_test(cfg, out_path, s_spec, s_csv);
        if (verify->parsed()) return cmd_verify(cfg, out_path, filter);
        std::cerr << "gfreg: no subcommand\n";
        return 2;
    } catch (const gfreg::parse_error& e) {
        std::cerr << "gfreg: " << e.what() << "\n";
        return 2;
    } catch (const gfreg::numeric_error& e) {
        std::cerr << "gfreg: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "gfreg: " << e.what() << "\n";
        return 3;
    }
}
