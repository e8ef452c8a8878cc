#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gfreg {

using cplx = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, in place, unscaled. Twiddles come from a
// single table evaluated at long double precision so repeated runs are
// bit-identical and round-trip error stays near machine epsilon.
inline void fft_raw(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
    if (n < 2) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    std::vector<cplx> w(n / 2);
    const long double sgn = inverse ? 1.0L : -1.0L;
    const long double pi = std::numbers::pi_v<long double>;
    for (std::size_t j = 0; j < n / 2; ++j) {
        const long double ang = sgn * 2.0L * pi * static_cast<long double>(j) / static_cast<long double>(n);
        w[j] = cplx(static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang)));
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const cplx v = a[i + j + half] * w[j * stride];
                const cplx u = a[i + j];
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
    }
}

}

// Forward DFT with 1/n scaling: c_k = (1/n) sum_j f_j exp(-2 pi i jk / n).
// With samples on a periodic grid of length L this makes c_k the Fourier
// coefficient of the mode exp(i xi_k x), xi_k = 2 pi k / L.
inline std::vector<cplx> fft_forward(std::vector<cplx> f) {
    detail::fft_raw(f, false);
    const double s = 1.0 / static_cast<double>(f.size());
    for (auto& c : f) c *= s;
    return f;
}

// Inverse: f_j = sum_k c_k exp(+2 pi i jk / n).
inline std::vector<cplx> fft_inverse(std::vector<cplx> c) {
    detail::fft_raw(c, true);
    return c;
}

}
