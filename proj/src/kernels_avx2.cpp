#if defined(__x86_64__) || defined(_M_X64)

#include "vortexlab/kernels.hpp"

#include <cmath>
#include <immintrin.h>

// AVX2 lanes hold two interleaved complex doubles: [re0 im0 re1 im1].

namespace vtx::kernels::detail {

namespace {

// (a.re + i a.im) * (b.re + i b.im) for two packed complexes.
inline __m256d cmul2(__m256d a, __m256d b) {
    const __m256d br = _mm256_movedup_pd(b);          // [br0 br0 br1 br1]
    const __m256d bi = _mm256_unpackhi_pd(b, b);      // [bi0 bi0 bi1 bi1]
    const __m256d as = _mm256_permute_pd(a, 0x5);     // [ai0 ar0 ai1 ar1]
    return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(as, bi));
}

inline __m256d conj2(__m256d b) {
    const __m256d mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
    return _mm256_xor_pd(b, mask);
}

// Vector sin/cos, Cody-Waite pi/2 reduction + Cephes-style minimax
// polynomials.  Accurate to ~1 ulp for |x| up to ~2^30, which covers every
// phase this code ever feeds it.
inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
    const __m256d two_over_pi = _mm256_set1_pd(0.63661977236758134308);
    const __m256d p1 = _mm256_set1_pd(1.57079632673412561417e0);
    const __m256d p2 = _mm256_set1_pd(6.07710050650619224932e-11);
    const __m256d p3 = _mm256_set1_pd(2.02226624879595063154e-21);

    __m256d j = _mm256_round_pd(_mm256_mul_pd(x, two_over_pi),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(j, p1, x);
    r = _mm256_fnmadd_pd(j, p2, r);
    r = _mm256_fnmadd_pd(j, p3, r);

    const __m256d r2 = _mm256_mul_pd(r, r);

    // sin(r) = r + r^3 * S(r^2)
    __m256d sp = _mm256_set1_pd(1.58962301576546568060e-10);
    sp = _mm256_fmadd_pd(sp, r2, _mm256_set1_pd(-2.50507477628578072866e-8));
    sp = _mm256_fmadd_pd(sp, r2, _mm256_set1_pd(2.75573136213857245213e-6));
    sp = _mm256_fmadd_pd(sp, r2, _mm256_set1_pd(-1.98412698295895385996e-4));
    sp = _mm256_fmadd_pd(sp, r2, _mm256_set1_pd(8.33333333332211858878e-3));
    sp = _mm256_fmadd_pd(sp, r2, _mm256_set1_pd(-1.66666666666666307295e-1));
    __m256d sr = _mm256_fmadd_pd(_mm256_mul_pd(sp, r2), r, r);

    // cos(r) = 1 - r^2/2 + r^4 * C(r^2)
    __m256d cp = _mm256_set1_pd(-1.13585365213876817300e-11);
    cp = _mm256_fmadd_pd(cp, r2, _mm256_set1_pd(2.08757008419747316778e-9));
    cp = _mm256_fmadd_pd(cp, r2, _mm256_set1_pd(-2.75573141792967388112e-7));
    cp = _mm256_fmadd_pd(cp, r2, _mm256_set1_pd(2.48015872888517179954e-5));
    cp = _mm256_fmadd_pd(cp, r2, _mm256_set1_pd(-1.38888888888730564116e-3));
    cp = _mm256_fmadd_pd(cp, r2, _mm256_set1_pd(4.16666666666665929218e-2));
    __m256d cr = _mm256_fmadd_pd(_mm256_mul_pd(cp, r2), r2,
                                 _mm256_fnmadd_pd(r2, _mm256_set1_pd(0.5),
                                                  _mm256_set1_pd(1.0)));

    // quadrant q = j mod 4 decides the (sin, cos) swap and signs
    __m256d q = _mm256_sub_pd(
        j, _mm256_mul_pd(_mm256_set1_pd(4.0),
                         _mm256_floor_pd(_mm256_mul_pd(j, _mm256_set1_pd(0.25)))));
    const __m256d is1 = _mm256_cmp_pd(q, _mm256_set1_pd(1.0), _CMP_EQ_OQ);
    const __m256d is2 = _mm256_cmp_pd(q, _mm256_set1_pd(2.0), _CMP_EQ_OQ);
    const __m256d is3 = _mm256_cmp_pd(q, _mm256_set1_pd(3.0), _CMP_EQ_OQ);
    const __m256d swap = _mm256_or_pd(is1, is3);

    __m256d s = _mm256_blendv_pd(sr, cr, swap);
    __m256d c = _mm256_blendv_pd(cr, sr, swap);

    const __m256d neg = _mm256_set1_pd(-0.0);
    // sin negated in quadrants 2,3; cos negated in 1,2
    const __m256d sneg = _mm256_and_pd(_mm256_or_pd(is2, is3), neg);
    const __m256d cneg = _mm256_and_pd(_mm256_or_pd(is1, is2), neg);
    s_out = _mm256_xor_pd(s, sneg);
    c_out = _mm256_xor_pd(c, cneg);
}

} // namespace

void cmul_inplace_avx2(cplx* a, const cplx* b, std::size_t n) {
    std::size_t i = 0;
    auto* pa = reinterpret_cast<double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(pa + 2 * i, cmul2(va, vb));
    }
    for (; i < n; ++i) a[i] *= b[i];
}

void cmul_conj_inplace_avx2(cplx* a, const cplx* b, std::size_t n) {
    std::size_t i = 0;
    auto* pa = reinterpret_cast<double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = conj2(_mm256_loadu_pd(pb + 2 * i));
        _mm256_storeu_pd(pa + 2 * i, cmul2(va, vb));
    }
    for (; i < n; ++i) a[i] *= std::conj(b[i]);
}

void phase_rotate_inplace_avx2(cplx* u, std::size_t n, double coef) {
    std::size_t i = 0;
    auto* pu = reinterpret_cast<double*>(u);
    const __m256d vcoef = _mm256_set1_pd(coef);
    const __m256d one = _mm256_set1_pd(1.0);
    for (; i + 4 <= n; i += 4) {
        const __m256d z0 = _mm256_loadu_pd(pu + 2 * i);     // re0 im0 re1 im1
        const __m256d z1 = _mm256_loadu_pd(pu + 2 * i + 4); // re2 im2 re3 im3
        // |z|^2 per complex, gathered into one vector [m0 m1 m2 m3]
        const __m256d sq0 = _mm256_mul_pd(z0, z0);
        const __m256d sq1 = _mm256_mul_pd(z1, z1);
        const __m256d hsum = _mm256_hadd_pd(sq0, sq1); // [m0 m2 m1 m3]
        const __m256d mag = _mm256_permute4x64_pd(hsum, 0xD8); // [m0 m1 m2 m3]
        const __m256d phi = _mm256_mul_pd(vcoef, _mm256_sub_pd(mag, one));
        __m256d s, c;
        sincos4(phi, s, c);
        // scatter (c,s) back to interleaved pairs and complex-multiply
        const __m256d cs_lo = _mm256_unpacklo_pd(c, s); // [c0 s0 c2 s2]
        const __m256d cs_hi = _mm256_unpackhi_pd(c, s); // [c1 s1 c3 s3]
        const __m256d w0 = _mm256_permute2f128_pd(cs_lo, cs_hi, 0x20); // c0 s0 c1 s1
        const __m256d w1 = _mm256_permute2f128_pd(cs_lo, cs_hi, 0x31); // c2 s2 c3 s3
        _mm256_storeu_pd(pu + 2 * i, cmul2(z0, w0));
        _mm256_storeu_pd(pu + 2 * i + 4, cmul2(z1, w1));
    }
    for (; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        const double phi = coef * (re * re + im * im - 1.0);
        const double c = std::cos(phi), s = std::sin(phi);
        u[i] = cplx(re * c - im * s, re * s + im * c);
    }
}

double sum_abs2_avx2(const cplx* u, std::size_t n) {
    const auto* pu = reinterpret_cast<const double*>(u);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(pu + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) {
        total += u[i].real() * u[i].real() + u[i].imag() * u[i].imag();
    }
    return total;
}

double max_abs2_avx2(const cplx* u, std::size_t n) {
    const auto* pu = reinterpret_cast<const double*>(u);
    __m256d best = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(pu + 2 * i);
        const __m256d sq = _mm256_mul_pd(v, v);
        const __m256d mag = _mm256_hadd_pd(sq, sq); // [m0 m0 m1 m1]
        best = _mm256_max_pd(best, mag);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) {
        const double a2 = u[i].real() * u[i].real() + u[i].imag() * u[i].imag();
        if (a2 > m) m = a2;
    }
    return m;
}

void fft_passes_avx2(cplx* d, std::size_t n, const cplx* tw, bool inverse) {
    auto* pd = reinterpret_cast<double*>(d);

    // len = 2: twiddle is 1, plain butterflies on adjacent pairs
    for (std::size_t base = 0; base + 2 <= n; base += 2) {
        const __m128d lo = _mm_loadu_pd(pd + 2 * base);
        const __m128d hi = _mm_loadu_pd(pd + 2 * base + 2);
        _mm_storeu_pd(pd + 2 * base, _mm_add_pd(lo, hi));
        _mm_storeu_pd(pd + 2 * base + 2, _mm_sub_pd(lo, hi));
    }

    for (std::size_t len = 4; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const auto* w = reinterpret_cast<const double*>(tw + (half - 1));
        for (std::size_t base = 0; base < n; base += len) {
            double* blo = pd + 2 * base;
            double* bhi = pd + 2 * (base + half);
            for (std::size_t j = 0; j + 2 <= half; j += 2) {
                __m256d wv = _mm256_loadu_pd(w + 2 * j);
                if (inverse) wv = conj2(wv);
                const __m256d hi = _mm256_loadu_pd(bhi + 2 * j);
                const __m256d lo = _mm256_loadu_pd(blo + 2 * j);
                const __m256d t = cmul2(wv, hi);
                _mm256_storeu_pd(blo + 2 * j, _mm256_add_pd(lo, t));
                _mm256_storeu_pd(bhi + 2 * j, _mm256_sub_pd(lo, t));
            }
        }
    }
}

} // namespace vtx::kernels::detail

#endif // x86_64
