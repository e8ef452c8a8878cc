#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <vector>

#include "errors.hpp"
#include "fft.hpp"
#include "grid.hpp"

namespace gfreg {

// One smooth function realized on the grid. Values are complex; catalog
// inputs are real up to rounding but intermediate spectra are not. The
// spectrum is cached on first use; the object is treated as immutable after
// construction.
struct SampledFunction {
    GridSpec grid;
    std::vector<cplx> values;

    SampledFunction() = default;
    SampledFunction(GridSpec g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.n) throw invalid_config("sampled function: length mismatch");
    }

    static SampledFunction from_spectrum(GridSpec g, std::vector<cplx> coeffs) {
        if (coeffs.size() != g.n) throw invalid_config("sampled function: spectrum length mismatch");
        SampledFunction f;
        f.grid = g;
        f.values = fft_inverse(coeffs);
        f.spec_ = std::make_shared<const std::vector<cplx>>(std::move(coeffs));
        return f;
    }

    const std::vector<cplx>& spectrum() const {
        if (!spec_) spec_ = std::make_shared<const std::vector<cplx>>(fft_forward(values));
        return *spec_;
    }

    double sup_abs() const {
        double m = 0.0;
        for (const auto& v : values) m = std::max(m, std::abs(v));
        return m;
    }

    double sup_abs(const Window& w) const {
        double m = 0.0;
        for (std::size_t j = 0; j < grid.n; ++j)
            if (w.contains(grid.x(j))) m = std::max(m, std::abs(values[j]));
        return m;
    }

    std::vector<double> real_part() const {
        std::vector<double> r(values.size());
        for (std::size_t j = 0; j < values.size(); ++j) r[j] = values[j].real();
        return r;
    }

private:
    mutable std::shared_ptr<const std::vector<cplx>> spec_;
};

// Spectral derivative: multiply coefficients by (i xi)^m. Exact for
// band-limited data, which is the whole point of working spectrally.
inline SampledFunction derivative(const SampledFunction& f, int m) {
    if (m == 0) return f;
    auto c = f.spectrum();
    for (std::size_t k = 0; k < f.grid.n; ++k) {
        const cplx ix(0.0, f.grid.xi(k));
        cplx p(1.0, 0.0);
        for (int i = 0; i < m; ++i) p *= ix;
        c[k] *= p;
    }
    return SampledFunction::from_spectrum(f.grid, std::move(c));
}

inline SampledFunction scaled(const SampledFunction& f, double c) {
    std::vector<cplx> v(f.values);
    for (auto& z : v) z *= c;
    return SampledFunction(f.grid, std::move(v));
}

inline SampledFunction pointwise_product(const SampledFunction& f, const SampledFunction& g) {
    if (!(f.grid == g.grid)) throw invalid_config("pointwise product: grid mismatch");
    std::vector<cplx> v(f.grid.n);
    for (std::size_t j = 0; j < f.grid.n; ++j) v[j] = f.values[j] * g.values[j];
    return SampledFunction(f.grid, std::move(v));
}

}
