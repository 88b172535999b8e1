#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace vtx {

/// Radix-2 complex FFT on a power-of-two length.  Forward transform uses
/// X_k = sum_j x_j exp(-2 pi i j k / n); inverse applies the 1/n factor.
/// Butterfly passes run through the kernels backend (scalar or AVX2).
class Fft {
public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }
    void forward(std::complex<double>* data) const;
    void inverse(std::complex<double>* data) const;

private:
    void permute(std::complex<double>* data) const;

    std::size_t n_;
    std::vector<std::complex<double>> twiddles_;
    std::vector<std::uint32_t> bitrev_;
};

/// Row-major 2-D transform (index = iy * nx + ix, ix fastest).  Columns go
/// through an explicit transpose so every 1-D pass is contiguous.
class Fft2D {
public:
    Fft2D(std::size_t nx, std::size_t ny);

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    void forward(std::complex<double>* data);
    void inverse(std::complex<double>* data);

private:
    void rows(std::complex<double>* data, const Fft& plan, std::size_t count,
              bool inv) const;
    void transform(std::complex<double>* data, bool inv);

    std::size_t nx_, ny_;
    Fft fx_, fy_;
    std::vector<std::complex<double>> scratch_;
};

bool is_pow2(std::size_t n);

/// FFT bin index -> signed mode number in [-n/2, n/2).
inline long fft_mode(std::size_t idx, std::size_t n) {
    return idx < n / 2 ? static_cast<long>(idx)
                       : static_cast<long>(idx) - static_cast<long>(n);
}

void transpose(const std::complex<double>* src, std::complex<double>* dst,
               std::size_t rows, std::size_t cols);

} // namespace vtx
