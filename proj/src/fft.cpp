#include "vortexlab/fft.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

#include "vortexlab/kernels.hpp"

namespace vtx {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Fft::Fft(std::size_t n) : n_(n) {
    assert(is_pow2(n));
    twiddles_.resize(n_ > 1 ? n_ - 1 : 1);
    std::size_t off = 0;
    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t half = len >> 1;
        for (std::size_t j = 0; j < half; ++j) {
            const double ang = -2.0 * std::numbers::pi *
                               static_cast<double>(j) / static_cast<double>(len);
            twiddles_[off + j] = {std::cos(ang), std::sin(ang)};
        }
        off += half;
    }

    bitrev_.resize(n_);
    const int bits = static_cast<int>(std::round(std::log2(double(n_))));
    for (std::size_t i = 0; i < n_; ++i) {
        std::size_t r = 0;
        for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
        bitrev_[i] = static_cast<std::uint32_t>(r);
    }
}

void Fft::permute(std::complex<double>* data) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t r = bitrev_[i];
        if (i < r) std::swap(data[i], data[r]);
    }
}

void Fft::forward(std::complex<double>* data) const {
    if (n_ == 1) return;
    permute(data);
    kernels::fft_passes(data, n_, twiddles_.data(), false);
}

void Fft::inverse(std::complex<double>* data) const {
    if (n_ == 1) return;
    permute(data);
    kernels::fft_passes(data, n_, twiddles_.data(), true);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) data[i] *= scale;
}

void transpose(const std::complex<double>* src, std::complex<double>* dst,
               std::size_t rows, std::size_t cols) {
    constexpr std::size_t B = 32;
    for (std::size_t r0 = 0; r0 < rows; r0 += B) {
        for (std::size_t c0 = 0; c0 < cols; c0 += B) {
            const std::size_t r1 = std::min(rows, r0 + B);
            const std::size_t c1 = std::min(cols, c0 + B);
            for (std::size_t r = r0; r < r1; ++r) {
                for (std::size_t c = c0; c < c1; ++c) {
                    dst[c * rows + r] = src[r * cols + c];
                }
            }
        }
    }
}

Fft2D::Fft2D(std::size_t nx, std::size_t ny)
    : nx_(nx), ny_(ny), fx_(nx), fy_(ny), scratch_(nx * ny) {}

void Fft2D::rows(std::complex<double>* data, const Fft& plan, std::size_t count,
                 bool inv) const {
    const std::size_t n = plan.size();
    for (std::size_t r = 0; r < count; ++r) {
        if (inv) {
            plan.inverse(data + r * n);
        } else {
            plan.forward(data + r * n);
        }
    }
}

void Fft2D::transform(std::complex<double>* data, bool inv) {
    rows(data, fx_, ny_, inv);
    transpose(data, scratch_.data(), ny_, nx_);
    rows(scratch_.data(), fy_, nx_, inv);
    transpose(scratch_.data(), data, nx_, ny_);
}

void Fft2D::forward(std::complex<double>* data) { transform(data, false); }

void Fft2D::inverse(std::complex<double>* data) { transform(data, true); }

} // namespace vtx
