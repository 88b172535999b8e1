#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Data-parallel inner loops used by the spectral solver and the field
// quadratures.  Every kernel has a scalar reference implementation and an
// AVX2 variant; the backend is picked once at startup from CPUID and can be
// overridden with the environment variable VORTEXLAB_SIMD=scalar|avx2 or
// from code (tests exercise both and compare).

namespace vtx::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

Backend active();
void set_backend(Backend b);
bool backend_available(Backend b);
std::string backend_name(Backend b);

/// a[i] *= b[i]
void cmul_inplace(cplx* a, const cplx* b, std::size_t n);

/// a[i] *= conj(b[i])
void cmul_conj_inplace(cplx* a, const cplx* b, std::size_t n);

/// u[i] *= exp(i * coef * (|u[i]|^2 - 1))   (modulus-preserving phase twist)
void phase_rotate_inplace(cplx* u, std::size_t n, double coef);

/// sum of |u[i]|^2
double sum_abs2(const cplx* u, std::size_t n);

/// max of |u[i]|^2
double max_abs2(const cplx* u, std::size_t n);

/// One in-place radix-2 Cooley-Tukey transform, data already bit-reversed.
/// `tw` holds the per-stage twiddles packed as stage len=2,4,...,n with
/// len/2 entries each (exp(-2*pi*i*j/len)); inverse conjugates on the fly.
void fft_passes(cplx* d, std::size_t n, const cplx* tw, bool inverse);

namespace detail {
void cmul_inplace_scalar(cplx*, const cplx*, std::size_t);
void cmul_conj_inplace_scalar(cplx*, const cplx*, std::size_t);
void phase_rotate_inplace_scalar(cplx*, std::size_t, double);
double sum_abs2_scalar(const cplx*, std::size_t);
double max_abs2_scalar(const cplx*, std::size_t);
void fft_passes_scalar(cplx*, std::size_t, const cplx*, bool);

#if defined(__x86_64__) || defined(_M_X64)
void cmul_inplace_avx2(cplx*, const cplx*, std::size_t);
void cmul_conj_inplace_avx2(cplx*, const cplx*, std::size_t);
void phase_rotate_inplace_avx2(cplx*, std::size_t, double);
double sum_abs2_avx2(const cplx*, std::size_t);
double max_abs2_avx2(const cplx*, std::size_t);
void fft_passes_avx2(cplx*, std::size_t, const cplx*, bool);
#endif
} // namespace detail

} // namespace vtx::kernels
