#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <gfreg/fft.hpp>

using namespace gfreg;

namespace {

// quadratic-time reference transform, same 1/n convention
std::vector<cplx> dft_reference(const std::vector<cplx>& f) {
    const std::size_t n = f.size();
    std::vector<cplx> c(n, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        long double re = 0.0L, im = 0.0L;
        for (std::size_t j = 0; j < n; ++j) {
            const long double ang = -2.0L * std::numbers::pi_v<long double> *
                                    static_cast<long double>(j * k % n) /
                                    static_cast<long double>(n);
            re += f[j].real() * std::cos(ang) - f[j].imag() * std::sin(ang);
            im += f[j].real() * std::sin(ang) + f[j].imag() * std::cos(ang);
        }
        c[k] = cplx(static_cast<double>(re / n), static_cast<double>(im / n));
    }
    return c;
}

}

TEST_CASE("forward transform matches the direct reference sum") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<cplx> f(256);
    for (auto& v : f) v = cplx(uni(rng), uni(rng));

    const auto fast = fft_forward(f);
    const auto slow = dft_reference(f);
    double worst = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) worst = std::max(worst, std::abs(fast[k] - slow[k]));
    REQUIRE(worst < 1e-12);
}

TEST_CASE("impulse spreads to a flat spectrum") {
    std::vector<cplx> f(512, cplx(0.0, 0.0));
    f[0] = cplx(1.0, 0.0);
    const auto c = fft_forward(f);
    for (const auto& v : c) {
        REQUIRE(std::abs(v.real() - 1.0 / 512.0) < 1e-15);
        REQUIRE(std::abs(v.imag()) < 1e-15);
    }
}

TEST_CASE("single mode lands on a single coefficient") {
    const std::size_t n = 1024, m = 37;
    std::vector<cplx> f(n);
    for (std::size_t j = 0; j < n; ++j)
        f[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m * j % n) /
                                   static_cast<double>(n));
    const auto c = fft_forward(f);
    REQUIRE(std::abs(c[m] - cplx(1.0, 0.0)) < 1e-12);
    for (std::size_t k = 0; k < n; ++k)
        if (k != m) REQUIRE(std::abs(c[k]) < 1e-12);
}

TEST_CASE("round trip is the identity") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> uni(-5.0, 5.0);
    std::vector<cplx> f(4096);
    for (auto& v : f) v = cplx(uni(rng), uni(rng));
    const auto back = fft_inverse(fft_forward(f));
    double worst = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) worst = std::max(worst, std::abs(back[j] - f[j]));
    REQUIRE(worst < 1e-12);
}

TEST_CASE("non power-of-two lengths are rejected") {
    std::vector<cplx> f(100, cplx(1.0, 0.0));
    REQUIRE_THROWS_AS(fft_forward(f), std::invalid_argument);
}
