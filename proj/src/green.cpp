#include "vortexlab/green.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <ostream>

#include "vortexlab/errors.hpp"
#include "vortexlab/fft.hpp"

namespace vtx {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSingularGuard = 1e-12;
using cplx = std::complex<double>;
} // namespace

std::ostream& operator<<(std::ostream& os, const Vec2& v) {
    return os << '(' << v.x << ", " << v.y << ')';
}

GreenEvaluator::GreenEvaluator(TorusGeometry geometry, int series_terms,
                               int oracle_grid)
    : geom_(geometry), terms_(series_terms), oracle_grid_(oracle_grid) {
    assert(geom_.l > 0.0 && geom_.w > 0.0);
    assert(terms_ >= 1);
    swap_axes_ = geom_.w < geom_.l;
    L_ = swap_axes_ ? geom_.w : geom_.l;
    W_ = swap_axes_ ? geom_.l : geom_.w;
    q_ = std::exp(-kPi * W_ / L_);

    q2n_.resize(static_cast<std::size_t>(terms_));
    double euler = 0.0; // sum_n log(1 - q^(2n))
    for (int n = 1; n <= terms_; ++n) {
        const double q2n = std::pow(q_, 2.0 * n);
        q2n_[static_cast<std::size_t>(n - 1)] = q2n;
        euler += std::log1p(-q2n);
    }
    log_prefactor_ = std::log(2.0) - kPi * W_ / (4.0 * L_) + euler;

    // Mean-zero constant: averaging log|theta1| over the centered cell
    // leaves only the Euler product (the sin factor and the q^(1/4) cancel
    // by Jensen row averages), and -pi Y^2/(LW) averages to -pi W/(12 L).
    c0_ = kPi * W_ / (12.0 * L_) - euler;
}

GreenEvaluator::FramePoint GreenEvaluator::to_frame(const Vec2& m) const {
    if (swap_axes_) return {m.y, m.x, true};
    return {m.x, m.y, false};
}

double GreenEvaluator::log_abs_theta1(const cplx& v) const {
    // log|theta1(v)| = log(2 q^(1/4)) + log|sin v|
    //                + sum_n log|1-q^(2n) e^(2iv)| + log|1-q^(2n) e^(-2iv)|
    //                + sum_n log(1-q^(2n))         [in log_prefactor_]
    double acc = log_prefactor_ + std::log(std::abs(std::sin(v)));
    const cplx e2iv = std::exp(cplx(0.0, 2.0) * v);
    const cplx e2iv_inv = 1.0 / e2iv;
    for (double q2n : q2n_) {
        acc += 0.5 * std::log(std::norm(1.0 - q2n * e2iv));
        acc += 0.5 * std::log(std::norm(1.0 - q2n * e2iv_inv));
    }
    return acc;
}

cplx GreenEvaluator::log_derivative(const cplx& v) const {
    // theta1'/theta1 (v) from the product form.
    cplx acc = std::cos(v) / std::sin(v);
    const cplx e2iv = std::exp(cplx(0.0, 2.0) * v);
    const cplx e2iv_inv = 1.0 / e2iv;
    const cplx two_i(0.0, 2.0);
    for (double q2n : q2n_) {
        acc += two_i * q2n *
               (e2iv_inv / (1.0 - q2n * e2iv_inv) - e2iv / (1.0 - q2n * e2iv));
    }
    return acc;
}

double GreenEvaluator::eval_F(Vec2 p) const {
    const Vec2 m = geom_.minimal_image(p);
    if (norm(m) < kSingularGuard) {
        throw SingularPoint("eval_F at a lattice point");
    }
    const FramePoint f = to_frame(m);
    const cplx v = kPi * cplx(f.X, f.Y) / L_;
    return log_abs_theta1(v) - kPi * f.Y * f.Y / (L_ * W_) + c0_;
}

Vec2 GreenEvaluator::eval_gradF(Vec2 p) const {
    const Vec2 m = geom_.minimal_image(p);
    if (norm(m) < kSingularGuard) {
        throw SingularPoint("eval_gradF at a lattice point");
    }
    const FramePoint f = to_frame(m);
    const cplx v = kPi * cplx(f.X, f.Y) / L_;
    const cplx gprime = kPi * log_derivative(v); // d/dz log theta1(pi z)
    const double dX = gprime.real() / L_;
    const double dY = -gprime.imag() / L_ - 2.0 * kPi * f.Y / (L_ * W_);
    return f.swapped ? Vec2{dY, dX} : Vec2{dX, dY};
}

double GreenEvaluator::eval_F_regular(Vec2 p) const {
    const Vec2 m = geom_.minimal_image(p);
    const FramePoint f = to_frame(m);
    const cplx zeta(f.X / L_, f.Y / L_);
    const cplx v = kPi * zeta;

    // log|theta1(v)/zeta| stays finite at the origin: the sin factor is
    // replaced by sin(v)/zeta -> pi.
    double acc = log_prefactor_;
    if (std::abs(zeta) < 1e-30) {
        acc += std::log(kPi);
    } else {
        acc += std::log(std::abs(std::sin(v) / zeta));
    }
    const cplx e2iv = std::exp(cplx(0.0, 2.0) * v);
    const cplx e2iv_inv = 1.0 / e2iv;
    for (double q2n : q2n_) {
        acc += 0.5 * std::log(std::norm(1.0 - q2n * e2iv));
        acc += 0.5 * std::log(std::norm(1.0 - q2n * e2iv_inv));
    }
    // |minimal image| = |zeta| * L
    return acc - std::log(L_) - kPi * f.Y * f.Y / (L_ * W_) + c0_;
}

double GreenEvaluator::laplacian_check(Vec2 p, double h) const {
    const Vec2 stencil[5] = {p,
                             {p.x + h, p.y},
                             {p.x - h, p.y},
                             {p.x, p.y + h},
                             {p.x, p.y - h}};
    for (const Vec2& s : stencil) {
        if (norm(geom_.minimal_image(s)) < kSingularGuard + h) {
            throw SingularPoint("laplacian_check stencil straddles the origin");
        }
    }
    const double center = eval_F(stencil[0]);
    return (eval_F(stencil[1]) + eval_F(stencil[2]) + eval_F(stencil[3]) +
            eval_F(stencil[4]) - 4.0 * center) /
           (h * h);
}

SpectralGreenOracle::SpectralGreenOracle(TorusGeometry geometry, int grid)
    : geom_(geometry), m_(grid) {
    assert(is_pow2(static_cast<std::size_t>(m_)));
    const std::size_t n = static_cast<std::size_t>(m_);
    std::vector<cplx> modes(n * n, cplx(0.0, 0.0));
    const double area = geom_.area();
    for (std::size_t jy = 0; jy < n; ++jy) {
        const double ky = static_cast<double>(fft_mode(jy, n)) / geom_.w;
        for (std::size_t jx = 0; jx < n; ++jx) {
            if (jx == 0 && jy == 0) continue;
            const double kx = static_cast<double>(fft_mode(jx, n)) / geom_.l;
            const double k2 = kx * kx + ky * ky;
            modes[jy * n + jx] = cplx(-1.0 / (2.0 * kPi * k2 * area), 0.0);
        }
    }
    // values(x) = sum_k modes_k exp(+2 pi i k.x) = n^2 * inverse FFT
    Fft2D plan(n, n);
    plan.inverse(modes.data());
    table_.resize(n * n);
    const double scale = static_cast<double>(n) * static_cast<double>(n);
    for (std::size_t i = 0; i < n * n; ++i) {
        table_[i] = modes[i].real() * scale;
    }
}

Vec2 SpectralGreenOracle::node(int i, int j) const {
    return {geom_.l * static_cast<double>(i) / m_,
            geom_.w * static_cast<double>(j) / m_};
}

double SpectralGreenOracle::at_node(int i, int j) const {
    const int ii = ((i % m_) + m_) % m_;
    const int jj = ((j % m_) + m_) % m_;
    return table_[static_cast<std::size_t>(jj) * m_ + ii];
}

} // namespace vtx
