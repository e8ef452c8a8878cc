#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include <gfreg/calibration.hpp>
#include <gfreg/lp_frame.hpp>
#include <gfreg/signal_model.hpp>

using namespace gfreg;

namespace {

const GridSpec g{};

const LPFrame& frame() {
    static const LPFrame fr = build_frame(g);
    return fr;
}

std::vector<OrderCalibration> synth(const std::vector<double>& c_hats) {
    std::vector<OrderCalibration> v;
    for (std::size_t j = 0; j < c_hats.size(); ++j) {
        OrderCalibration oc;
        oc.order = static_cast<int>(j);
        oc.c_hat = c_hats[j];
        oc.zero_response = std::isinf(c_hats[j]) && c_hats[j] < 0.0;
        v.push_back(oc);
    }
    return v;
}

}  // namespace

TEST_CASE("point mass climbs one order per derivative") {
    const auto rep = growth_function(embed(DistributionSpec::delta(0), frame()), 3);
    for (int j = 0; j <= 3; ++j) {
        const double c = rep.orders[static_cast<std::size_t>(j)].c_hat;
        REQUIRE(std::abs(c - (1.0 + j)) < 0.05);
    }
    REQUIRE(rep.inferred.k == 0);
    REQUIRE(std::abs(rep.inferred.s - 1.0) < 0.05);
    REQUIRE_FALSE(rep.inferred.k_is_lower_bound);
    REQUIRE_FALSE(rep.nonmonotone);
    for (const double d : rep.convexity_defects) REQUIRE(d > -0.15);
}

TEST_CASE("jump ladder starts flat then climbs") {
    const auto rep = growth_function(embed(DistributionSpec::heaviside_jump(), frame()), 3);
    const std::vector<double> want{0.0, 1.0, 2.0, 3.0};
    for (int j = 0; j <= 3; ++j)
        REQUIRE(std::abs(rep.orders[static_cast<std::size_t>(j)].c_hat - want[static_cast<std::size_t>(j)]) < 0.05);
    REQUIRE(rep.inferred.k == 0);
    REQUIRE(std::abs(rep.inferred.s) < 0.05);
}

TEST_CASE("cusp ladder carries its exponent") {
    const auto rep = growth_function(embed(DistributionSpec::cusp_at(0.5), frame()), 3);
    REQUIRE(std::abs(rep.orders[1].c_hat - 0.5) < 0.05);
    REQUIRE(std::abs(rep.orders[2].c_hat - 1.5) < 0.05);
    REQUIRE(rep.inferred.k == 0);
    // the cusp is bounded, so the order-0 rung is flat; sigma is only
    // contracted to land in [0, 1)
    REQUIRE(std::abs(rep.inferred.s) < 0.05);
    REQUIRE(rep.inferred.sigma_hat >= 0.0);
    REQUIRE(rep.inferred.sigma_hat < 1.0);
}

TEST_CASE("smooth input calibrates flat to the last measured order") {
    const auto rep = growth_function(embed(DistributionSpec::gaussian(4.0), frame()), 3);
    for (const auto& oc : rep.orders) REQUIRE(std::abs(oc.c_hat) < 0.05);
    REQUIRE(rep.inferred.k == 3);
    REQUIRE(rep.inferred.k_is_lower_bound);
    REQUIRE(std::abs(rep.inferred.s) < 0.05);
}

TEST_CASE("classify walks the plateau prefix") {
    const auto cls = classify(synth({0.0, 0.05, 1.0, 2.0}));
    REQUIRE(cls.k == 1);
    REQUIRE_FALSE(cls.k_is_lower_bound);
    REQUIRE(std::abs(cls.s - 0.05) < 1e-15);
    REQUIRE(std::abs(cls.sigma_hat - 0.95) < 1e-12);

    const auto neg = classify(synth({-0.5, -0.45, 0.8}));
    REQUIRE(neg.k == 1);
    REQUIRE(std::abs(neg.s - -0.45) < 1e-15);
    REQUIRE(std::abs(neg.sigma_hat - 0.45) < 1e-12);

    const double ninf = -std::numeric_limits<double>::infinity();
    const auto zero = classify(synth({ninf, ninf, ninf}));
    REQUIRE(zero.k == 2);
    REQUIRE(zero.k_is_lower_bound);
    REQUIRE(zero.s == ninf);

    REQUIRE_THROWS_AS(classify({}), invalid_config);
}

TEST_CASE("identically zero nets are flagged, not fitted") {
    const auto rep = growth_function(embed(DistributionSpec::constant_fn(0.0), frame()), 2);
    for (const auto& oc : rep.orders) {
        REQUIRE(oc.zero_response);
        REQUIRE(std::isinf(oc.c_hat));
    }
    REQUIRE(rep.inferred.k == 2);
    REQUIRE(rep.inferred.k_is_lower_bound);
}

TEST_CASE("power reweighting shifts the whole ladder") {
    const auto base = growth_function(embed(DistributionSpec::delta(0), frame()), 3);
    const auto up = growth_function(scale_net(embed(DistributionSpec::delta(0), frame()), 1.0), 3);
    for (int j = 0; j <= 3; ++j) {
        const auto js = static_cast<std::size_t>(j);
        REQUIRE(std::abs(up.orders[js].c_hat - (base.orders[js].c_hat - 1.0)) < 0.1);
    }
}

TEST_CASE("negligibility witness separates fast decay from growth") {
    const auto fast = negligibility_test(
        scale_net(embed(DistributionSpec::gaussian(4.0), frame()), 10.0));
    REQUIRE(fast.negligible);
    REQUIRE(std::abs(fast.min_slope - 10.0) < 0.05);

    const auto slow = negligibility_test(embed(DistributionSpec::delta(0), frame()));
    REQUIRE_FALSE(slow.negligible);
}
