#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include <gfreg/grid.hpp>
#include <gfreg/lp_frame.hpp>
#include <gfreg/sampled.hpp>

using namespace gfreg;

namespace {

const GridSpec g{};
const LPFrame& frame() {
    static const LPFrame fr = build_frame(g);
    return fr;
}

}

TEST_CASE("low-pass profile has the right plateau and support") {
    const auto& fr = frame();
    REQUIRE(fr.theta(0.0) == 1.0);
    REQUIRE(fr.theta(0.3) == 1.0);
    REQUIRE(fr.theta(0.5) == 1.0);
    REQUIRE(fr.theta(1.0) == 0.0);
    REQUIRE(fr.theta(1.5) == 0.0);
    REQUIRE(fr.theta(-0.4) == 1.0);

    double prev = 1.0;
    for (int i = 1; i <= 100; ++i) {
        const double v = fr.theta(0.5 + 0.005 * i);
        REQUIRE(v <= prev + 1e-15);
        REQUIRE(v >= 0.0);
        REQUIRE(v <= 1.0);
        prev = v;
    }
}

TEST_CASE("profile derivatives agree with finite differences") {
    const LPProfile prof;
    const double h = 1e-6;
    for (const double t : {0.55, 0.6, 0.75, 0.9, 0.97}) {
        const double fd1 = (prof.theta(t + h) - prof.theta(t - h)) / (2.0 * h);
        REQUIRE(std::abs(prof.theta_prime(t) - fd1) < 1e-5 * (1.0 + std::abs(fd1)));

        const double fdz = (prof.zeta(t + h) - prof.zeta(t - h)) / (2.0 * h);
        REQUIRE(std::abs(prof.zeta_prime(t) - fdz) < 1e-5 * (1.0 + std::abs(fdz)));
    }
    // zeta is even, its derivative odd
    REQUIRE(prof.zeta(0.7) == prof.zeta(-0.7));
    REQUIRE(prof.zeta_prime(-0.7) == -prof.zeta_prime(0.7));
}

TEST_CASE("kernel moments vanish to certification depth") {
    const auto md = moment_defect(frame(), 6);
    for (int m = 0; m <= 6; ++m) {
        INFO("order " << m);
        REQUIRE(md.phi[static_cast<std::size_t>(m)] < 1e-8);
        REQUIRE(md.psi[static_cast<std::size_t>(m)] < 1e-8);
    }
}

TEST_CASE("scale partition identity holds across probe frequencies") {
    for (const double y : {0.55, 1.0, 3.7, 21.0, 200.0}) {
        INFO("probe " << y);
        REQUIRE(std::abs(lp_identity_residual(frame(), y, 512)) < 1e-6);
    }
    // inside the plateau there is nothing to integrate
    REQUIRE(lp_identity_residual(frame(), 0.4) == 0.0);
}

TEST_CASE("mollification is the identity on coarse band-limited inputs") {
    std::vector<cplx> c(g.n, cplx(0.0, 0.0));
    c[8] = cplx(0.7, 0.2);   // xi = 1
    c[g.n - 8] = std::conj(c[8]);
    const auto u = SampledFunction::from_spectrum(g, c);
    const auto m = mollify(u, 1.0 / 16.0, frame());  // theta(xi/16) = 1 up to xi = 8
    double worst = 0.0;
    for (std::size_t j = 0; j < g.n; ++j)
        worst = std::max(worst, std::abs(m.values[j] - u.values[j]));
    REQUIRE(worst < 1e-13);
}

TEST_CASE("spectral multipliers commute") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<cplx> c(g.n, cplx(0.0, 0.0));
    for (std::size_t k = 1; k <= 200; ++k) {
        c[k] = cplx(uni(rng), uni(rng));
        c[g.n - k] = std::conj(c[k]);
    }
    const auto u = SampledFunction::from_spectrum(g, c);
    const auto a = band_project(mollify(u, 0.125, frame()), 0.25, frame());
    const auto b = mollify(band_project(u, 0.25, frame()), 0.125, frame());
    double worst = 0.0;
    for (std::size_t j = 0; j < g.n; ++j)
        worst = std::max(worst, std::abs(a.values[j] - b.values[j]));
    REQUIRE(worst < 1e-12);
}

TEST_CASE("reconstruction error shrinks as quadrature refines") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<cplx> c(g.n, cplx(0.0, 0.0));
    c[0] = cplx(uni(rng), 0.0);
    for (std::size_t k = 1; k <= 32; ++k) {
        c[k] = cplx(uni(rng), uni(rng));
        c[g.n - k] = std::conj(c[k]);
    }
    const auto u = SampledFunction::from_spectrum(g, c);
    const double eps = 1.0 / 16.0;
    const auto ref = mollify(u, eps, frame());

    const auto err_at = [&](std::size_t nodes) {
        const auto rec = lp_reconstruct(u, eps, frame(), nodes);
        double e = 0.0;
        for (std::size_t j = 0; j < g.n; ++j)
            e = std::max(e, std::abs(rec.values[j] - ref.values[j]));
        return e / ref.sup_abs();
    };
    const double e256 = err_at(256);
    const double e512 = err_at(512);
    REQUIRE(e512 < 1e-3);
    REQUIRE((e256 >= 1.8 * e512 || e512 < 1e-10));
}

TEST_CASE("scales outside the admissible window are rejected") {
    const auto& fr = frame();
    std::vector<cplx> c(g.n, cplx(0.0, 0.0));
    c[0] = cplx(1.0, 0.0);
    const auto u = SampledFunction::from_spectrum(g, c);
    REQUIRE_THROWS_AS(mollify(u, fr.eps_floor / 2.0, fr), scale_window_error);
    REQUIRE_THROWS_AS(mollify(u, 1.5, fr), scale_window_error);
    REQUIRE_THROWS_AS(band_project(u, 0.0, fr), scale_window_error);
    REQUIRE_NOTHROW(mollify(u, fr.eps_floor, fr));
    REQUIRE_NOTHROW(mollify(u, 1.0, fr));
}

TEST_CASE("frames on under-resolved grids are refused") {
    GridSpec tiny;
    tiny.n = 512;
    REQUIRE_THROWS_AS(build_frame(tiny), resolution_error);
}
