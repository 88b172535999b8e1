#include "vortexlab/kernels.hpp"

#include <cmath>

namespace vtx::kernels::detail {

void cmul_inplace_scalar(cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
}

void cmul_conj_inplace_scalar(cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= std::conj(b[i]);
}

void phase_rotate_inplace_scalar(cplx* u, std::size_t n, double coef) {
    for (std::size_t i = 0; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        const double phi = coef * (re * re + im * im - 1.0);
        const double c = std::cos(phi), s = std::sin(phi);
        u[i] = cplx(re * c - im * s, re * s + im * c);
    }
}

double sum_abs2_scalar(const cplx* u, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += u[i].real() * u[i].real() + u[i].imag() * u[i].imag();
    }
    return acc;
}

double max_abs2_scalar(const cplx* u, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a2 = u[i].real() * u[i].real() + u[i].imag() * u[i].imag();
        if (a2 > m) m = a2;
    }
    return m;
}

void fft_passes_scalar(cplx* d, std::size_t n, const cplx* tw, bool inverse) {
    const double isign = inverse ? -1.0 : 1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const cplx* w = tw + (half - 1); // stage offset: 1+2+...+len/4
        for (std::size_t base = 0; base < n; base += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const cplx wj(w[j].real(), isign * w[j].imag());
                cplx& lo = d[base + j];
                cplx& hi = d[base + j + half];
                const cplx t = wj * hi;
                hi = lo - t;
                lo += t;
            }
        }
    }
}

} // namespace vtx::kernels::detail
