#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <gfreg/lp_frame.hpp>
#include <gfreg/signal_model.hpp>
#include <gfreg/zygmund_hoelder.hpp>

using namespace gfreg;

namespace {

const GridSpec g{};

const LPFrame& frame() {
    static const LPFrame fr = build_frame(g);
    return fr;
}

double sharp_exponent(const DistributionSpec& spec) {
    using K = DistributionSpec::Kind;
    switch (spec.kind) {
        case K::delta_derivative: return -1.0 - spec.m;
        case K::heaviside: return 0.0;
        case K::triangle_wave: return 1.0;
        case K::cusp: return spec.tau;
        case K::weierstrass: return spec.tau;
        default: return std::numeric_limits<double>::infinity();
    }
}

// both class tests, against the known sharp regularity of the input
void check_row(const DistributionSpec& spec, int k, double tau, bool zyg_too = true) {
    INFO(spec.describe() << "  k=" << k << " tau=" << tau);
    const bool expect = k + tau <= sharp_exponent(spec) + 1e-9;
    const auto net = embed(spec, frame());
    if (zyg_too) {
        const auto zyg = generalized_zygmund_membership(net, k + tau, 0.0, frame());
        REQUIRE(zyg.member == expect);
    }
    const auto hoe = hoelder_class_membership(net, k, tau, 0.0);
    REQUIRE(hoe.member == expect);
}

}  // namespace

TEST_CASE("fine-scale exponents recover the known regularity") {
    const auto w03 = realize(DistributionSpec::weierstrass_sum(0.3, 6), g);
    const auto w06 = realize(DistributionSpec::weierstrass_sum(0.6, 6), g);
    const auto c05 = realize(DistributionSpec::cusp_at(0.5), g);
    const auto tri = realize(DistributionSpec::triangle(), g);
    const auto jump = realize(DistributionSpec::heaviside_jump(), g);

    REQUIRE(std::abs(zygmund_exponent(w03, frame()).r_hat - 0.3) < 0.06);
    REQUIRE(std::abs(zygmund_exponent(w06, frame()).r_hat - 0.6) < 0.06);
    REQUIRE(std::abs(zygmund_exponent(c05, frame()).r_hat - 0.5) < 0.06);
    REQUIRE(std::abs(zygmund_exponent(tri, frame()).r_hat - 1.0) < 0.06);
    REQUIRE(std::abs(zygmund_exponent(jump, frame()).r_hat - 0.0) < 0.06);
    REQUIRE(std::abs(zygmund_exponent(derivative(w03, 1), frame()).r_hat - -0.7) < 0.06);
}

TEST_CASE("band-empty inputs report a capped exponent") {
    const auto u = realize(DistributionSpec::gaussian(4.0), g);
    const auto res = zygmund_exponent(u, frame());
    REQUIRE(res.capped);
    REQUIRE(res.r_hat == exponent_cap);
    // the raw fit runs far past the ceiling on the few live bands
    REQUIRE(res.fit.slope > exponent_cap);
}

TEST_CASE("class membership matches the sharp exponent row by row") {
    const auto w03 = DistributionSpec::weierstrass_sum(0.3, 6);
    const auto w06 = DistributionSpec::weierstrass_sum(0.6, 6);
    const auto c05 = DistributionSpec::cusp_at(0.5);

    check_row(w03, 0, 0.3);
    check_row(w03, 0, 0.6);
    check_row(w03, 1, 0.3);
    check_row(w06, 0, 0.5);
    check_row(c05, 0, 0.3);
    check_row(c05, 0, 0.5);
    check_row(c05, 0, 0.9);
    check_row(DistributionSpec::heaviside_jump(), 0, 0.3);
    check_row(DistributionSpec::gaussian(4.0), 1, 0.5);
    check_row(DistributionSpec::triangle(), 0, 0.9);
    check_row(DistributionSpec::triangle(), 0, 1.0, false);
    check_row(DistributionSpec::triangle(), 1, 0.3);
    check_row(DistributionSpec::delta(0), 0, 0.5);
}

TEST_CASE("negative-order classes admit the point mass") {
    const auto net = embed(DistributionSpec::delta(0), frame());
    const auto res = generalized_zygmund_membership(net, -1.05, 0.0, frame());
    REQUIRE(res.member);
}

TEST_CASE("weight shifts buy membership back") {
    // delta fails at r = 0.5 unweighted but s = 1.6 restores boundedness
    const auto net = embed(DistributionSpec::delta(0), frame());
    REQUIRE_FALSE(generalized_zygmund_membership(net, 0.5, 0.0, frame()).member);
    REQUIRE(generalized_zygmund_membership(net, 0.5, 1.6, frame()).member);
}

TEST_CASE("part assessment: slope, flat, saturation and zero branches") {
    const auto eps_long = log_grid(0.5, g.eps_min(), 16);

    SECTION("zero response short-circuits") {
        const std::vector<double> F(16, 0.0);
        const auto part = detail::assess_part("p", eps_long, F, 0.05, true);
        REQUIRE(part.pass);
        REQUIRE(part.mode == "zero");
        REQUIRE(part.zero_response);
    }

    SECTION("saturation towards a finite limit rescues a drifting quotient") {
        std::vector<double> F;
        for (const double e : eps_long) F.push_back(1.0 - 0.5 * std::pow(e, 0.3));
        const auto part = detail::assess_part("p", eps_long, F, 0.05, true);
        REQUIRE(part.slope < -0.05);
        REQUIRE(part.pass);
        REQUIRE(part.mode == "saturation");
        REQUIRE(part.sat_ratio <= 0.35);
    }

    SECTION("pure power divergence is never rescued") {
        std::vector<double> F;
        for (const double e : eps_long) F.push_back(std::pow(e, -0.3));
        const auto part = detail::assess_part("p", eps_long, F, 0.05, true);
        REQUIRE_FALSE(part.pass);
        REQUIRE(part.mode.empty());
    }

    SECTION("numerically flat responses pass on range alone") {
        const auto eps_short = log_grid(0.5, 0.25, 16);
        std::vector<double> F;
        for (std::size_t i = 0; i < 16; ++i) F.push_back(0.92 + 0.08 * static_cast<double>(i) / 15.0);
        const auto part = detail::assess_part("p", eps_short, F, 0.05, true);
        REQUIRE(part.slope < -0.05);
        REQUIRE(part.pass);
        REQUIRE(part.mode == "flat");
    }

    SECTION("rescue is withheld where it is not allowed") {
        std::vector<double> F;
        for (const double e : eps_long) F.push_back(1.0 - 0.5 * std::pow(e, 0.3));
        const auto part = detail::assess_part("p", eps_long, F, 0.05, false);
        REQUIRE_FALSE(part.pass);
    }
}

TEST_CASE("growth regimes of the derivative orders along a mollified net") {
    const auto net03 = embed(DistributionSpec::weierstrass_sum(0.3, 6), frame());

    // growth orders are live on the whole default window: with six levels the
    // finest one is still entering at the scale floor
    for (int a = 1; a <= 3; ++a) {
        const auto res = hoermann_order_check(net03, 0.3, a, frame());
        REQUIRE(res.regime == "growth");
        INFO("order=" << a << " slope=" << res.slope);
        REQUIRE(res.pass);
        REQUIRE(std::abs(res.slope - (0.3 - a)) <= 0.1);
    }

    // the bounded regime is an asymptotic statement, readable only below the
    // input's finest level: with four levels everything has entered by 1/32,
    // and the sup saturates exactly on [1/64, 1/32]
    const auto net4 = embed(DistributionSpec::weierstrass_sum(0.3, 4), frame());
    const auto sat = log_grid(1.0 / 32.0, g.eps_min(), 12);
    const auto bounded = hoermann_order_check(net4, 0.3, 0, frame(), sat);
    REQUIRE(bounded.regime == "bounded");
    INFO("bounded slope=" << bounded.slope);
    REQUIRE(bounded.pass);
    REQUIRE(std::abs(bounded.slope) < 0.01);

    // a flat lacunary comb crosses its regularity at order zero: about
    // log(1/eps) surviving levels, each contributing O(1) to the sup
    const auto w0 = embed(DistributionSpec::weierstrass_sum(0.0, 6), frame());
    const auto log_case = hoermann_order_check(w0, 0.0, 0, frame());
    REQUIRE(log_case.regime == "log");
    INFO("log slope=" << log_case.slope);
    REQUIRE(log_case.pass);

    REQUIRE_THROWS_AS(hoermann_membership(net03, 0.3, frame(), 0), invalid_config);

    const auto zero = hoermann_order_check(embed(DistributionSpec::constant_fn(0.0), frame()),
                                           0.3, 1, frame());
    REQUIRE(zero.regime == "zero");
    REQUIRE(zero.trivial_zero);

    // a constant passes every regime trivially: order 0 is flat, all higher
    // derivatives vanish identically
    const auto flat =
        hoermann_membership(embed(DistributionSpec::constant_fn(3.0), frame()), 0.5, frame(), 2);
    REQUIRE(flat.all_pass);
    REQUIRE(flat.orders[0].regime == "bounded");
    REQUIRE(flat.orders[1].regime == "zero");

    const auto gt = hoermann_gtilde_check(net03, 0.3, frame());
    REQUIRE(gt.pass);
    REQUIRE(std::abs(gt.slope) < 0.05);
}

TEST_CASE("product functional stays near the weaker order") {
    const auto u = realize(DistributionSpec::weierstrass_sum(0.3, 6), g);
    const auto v = realize(DistributionSpec::gaussian(4.0), g);

    // deep-window exponent of the product tracks min(0.3, smooth)
    std::vector<double> deep;
    for (const double eta : grids::eta_exponent(g))
        if (eta <= 0.14) deep.push_back(eta);
    const auto res = zygmund_exponent(pointwise_product(u, v), frame(), deep);
    REQUIRE(std::abs(res.r_hat - 0.3) < 0.05);

    const auto pc = product_zygmund_check(embed(DistributionSpec::weierstrass_sum(0.3, 6), frame()),
                                          embed(DistributionSpec::gaussian(4.0), frame()),
                                          0.3, 2.0, frame());
    REQUIRE(pc.order_w == 0.3);
    REQUIRE(pc.K > 0.0);
    REQUIRE(std::isfinite(pc.K));

    REQUIRE_THROWS_AS(
        product_zygmund_check(embed(DistributionSpec::constant_fn(0.0), frame()),
                              embed(DistributionSpec::gaussian(4.0), frame()), 0.3, 2.0, frame()),
        degenerate_input_error);
}

TEST_CASE("frame functional is comparable to the classical norm") {
    // ratio Z_tau(u) / ||u||_{C^{0,tau}} stays within a fixed constant across
    // the catalog; measured ratios span [0.70, 1.17], pinned with margin
    const double C = 2.0;
    const std::vector<std::pair<DistributionSpec, double>> cases = {
        {DistributionSpec::weierstrass_sum(0.3, 6), 0.3},
        {DistributionSpec::weierstrass_sum(0.6, 6), 0.6},
        {DistributionSpec::cusp_at(0.3), 0.3},
        {DistributionSpec::cusp_at(0.5), 0.5},
        {DistributionSpec::cusp_at(0.9), 0.9},
        {DistributionSpec::triangle(), 1.0},
    };
    for (const auto& [spec, tau] : cases) {
        const auto u = realize(spec, g);
        const double z = zygmund_functional(u, tau, frame());
        const double h = hoelder_norm(u, 0, tau);
        INFO(spec.describe() << " ratio=" << z / h);
        REQUIRE(z / h < C);
        REQUIRE(z / h > 1.0 / C);
    }
}

TEST_CASE("functional is stable under band-grid refinement") {
    const auto u = realize(DistributionSpec::weierstrass_sum(0.3, 6), g);
    const double z32 = zygmund_functional(u, 0.3, frame());
    const double z64 = zygmund_functional(u, 0.3, frame(), grids::eta_default(g, 64));
    REQUIRE(std::abs(z64 / z32 - 1.0) < 0.05);
}

TEST_CASE("membership rejects empty scale grids") {
    const auto net = embed(DistributionSpec::gaussian(4.0), frame());
    REQUIRE_THROWS_AS(
        generalized_zygmund_membership(net, 0.5, 0.0, frame(), {}, grids::eta_default(g)),
        invalid_config);
    REQUIRE_THROWS_AS(hoelder_class_membership(net, 0, 0.5, 0.0, {}, Window::full(g)),
                      invalid_config);
    REQUIRE_THROWS_AS(
        hoelder_class_membership(net, 0, 0.5, 0.0, grids::eps_membership(g), Window{5.0, 2.0}),
        invalid_config);
}
