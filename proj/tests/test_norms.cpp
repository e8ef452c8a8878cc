#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include <gfreg/lp_frame.hpp>
#include <gfreg/norms.hpp>
#include <gfreg/signal_model.hpp>

using namespace gfreg;

namespace {

const GridSpec g{};

SampledFunction unit_mode(double xi0) {
    std::vector<cplx> v(g.n);
    for (std::size_t j = 0; j < g.n; ++j) v[j] = std::exp(cplx(0.0, xi0 * g.x(j)));
    return SampledFunction(g, std::move(v));
}

}  // namespace

TEST_CASE("lebesgue norms of a unit-modulus mode") {
    const auto u = unit_mode(3.0);
    REQUIRE(std::abs(lp_norm(u) - 1.0) < 1e-12);
    REQUIRE(std::abs(lp_norm(u, 2.0) - std::sqrt(g.period)) < 1e-9);
    REQUIRE(std::abs(lp_norm(u, 1.0) - g.period) < 1e-9);
    REQUIRE_THROWS_AS(lp_norm(u, 0.5), invalid_config);
    REQUIRE_THROWS_AS(lp_norm(u, 2.0, Window{3.0, 2.0}), invalid_config);
}

TEST_CASE("windowed sup norm localizes") {
    const auto u = realize(DistributionSpec::gaussian(1.0), g);
    const double xc = g.center();
    const double peak = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    REQUIRE(lp_norm(u, std::numeric_limits<double>::infinity(), Window{0.0, 1.0}) < 1e-10);
    REQUIRE(std::abs(lp_norm(u, std::numeric_limits<double>::infinity(),
                             Window{xc - 0.5, xc + 0.5}) -
                     peak) < 1e-9);
    REQUIRE(std::abs(lp_norm(u, 1.0) - 1.0) < 1e-6);
}

TEST_CASE("sobolev norm picks the dominant derivative order") {
    std::vector<cplx> v(g.n);
    for (std::size_t j = 0; j < g.n; ++j) v[j] = std::cos(3.0 * g.x(j));
    const SampledFunction u(g, std::move(v));
    REQUIRE(std::abs(sobolev_norm(u, 0) - 1.0) < 1e-12);
    REQUIRE(std::abs(sobolev_norm(u, 2) - 9.0) < 1e-9);
    REQUIRE_THROWS_AS(sobolev_norm(u, -1), invalid_config);
}

TEST_CASE("triangle wave has Lipschitz constant one half on its linear branch") {
    const auto u = realize(DistributionSpec::triangle(), g);
    const Window w{0.45 * g.period, 0.55 * g.period};
    const double semi = hoelder_seminorm(u, 0, 1.0, w);
    REQUIRE(std::abs(semi - 0.5) < 0.005);
}

TEST_CASE("half-power cusp has unit Hoelder seminorm at its own exponent") {
    const auto u = realize(DistributionSpec::cusp_at(0.5), g);
    const double xc = g.center();
    const double semi = hoelder_seminorm(u, 0, 0.5, Window{xc - 1.0, xc + 1.0});
    REQUIRE(std::abs(semi - 1.0) < 0.1);
}

TEST_CASE("hoelder parameter validation") {
    const auto u = realize(DistributionSpec::gaussian(2.0), g);
    REQUIRE_THROWS_AS(hoelder_seminorm(u, 0, 0.0), invalid_config);
    REQUIRE_THROWS_AS(hoelder_seminorm(u, 0, 1.2), invalid_config);
    REQUIRE_THROWS_AS(hoelder_seminorm(u, -1, 0.5), invalid_config);
}

TEST_CASE("zygmund functional of a pure mode matches the closed form") {
    const LPFrame fr = build_frame(g);
    const auto grid_eta = grids::eta_default(g);

    for (const double xi0 : {3.0, 0.25}) {
        const auto u = unit_mode(xi0);
        for (const double r : {-0.5, 0.5, 1.5}) {
            double expect = fr.theta(xi0);
            for (const double eta : grid_eta)
                expect = std::max(expect, std::pow(eta, -r) * fr.zeta(eta * xi0));
            const double got = zygmund_functional(u, r, fr, grid_eta);
            REQUIRE(std::abs(got - expect) < 1e-10 * (1.0 + expect));
        }
    }

    REQUIRE_THROWS_AS(zygmund_functional(unit_mode(3.0), 0.5, fr, std::vector<double>{}),
                      invalid_config);
}
