#include "vortexlab/kernels.hpp"

#include <cstdlib>

namespace vtx::kernels {

namespace {

Backend detect() {
#if defined(__x86_64__) || defined(_M_X64)
    if (const char* env = std::getenv("VORTEXLAB_SIMD")) {
        const std::string s(env);
        if (s == "scalar") return Backend::scalar;
        if (s == "avx2" && __builtin_cpu_supports("avx2")) return Backend::avx2;
    }
    if (__builtin_cpu_supports("avx2")) return Backend::avx2;
#endif
    return Backend::scalar;
}

Backend g_backend = detect();

} // namespace

Backend active() { return g_backend; }

void set_backend(Backend b) {
    g_backend = backend_available(b) ? b : Backend::scalar;
}

bool backend_available(Backend b) {
    if (b == Backend::scalar) return true;
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::string backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

#if defined(__x86_64__) || defined(_M_X64)
#define VTX_DISPATCH(fn, ...)                                       \
    do {                                                            \
        if (g_backend == Backend::avx2)                             \
            return detail::fn##_avx2(__VA_ARGS__);                  \
        return detail::fn##_scalar(__VA_ARGS__);                    \
    } while (0)
#else
#define VTX_DISPATCH(fn, ...) return detail::fn##_scalar(__VA_ARGS__)
#endif

void cmul_inplace(cplx* a, const cplx* b, std::size_t n) {
    VTX_DISPATCH(cmul_inplace, a, b, n);
}

void cmul_conj_inplace(cplx* a, const cplx* b, std::size_t n) {
    VTX_DISPATCH(cmul_conj_inplace, a, b, n);
}

void phase_rotate_inplace(cplx* u, std::size_t n, double coef) {
    VTX_DISPATCH(phase_rotate_inplace, u, n, coef);
}

double sum_abs2(const cplx* u, std::size_t n) {
    VTX_DISPATCH(sum_abs2, u, n);
}

double max_abs2(const cplx* u, std::size_t n) {
    VTX_DISPATCH(max_abs2, u, n);
}

void fft_passes(cplx* d, std::size_t n, const cplx* tw, bool inverse) {
    VTX_DISPATCH(fft_passes, d, n, tw, inverse);
}

#undef VTX_DISPATCH

} // namespace vtx::kernels
