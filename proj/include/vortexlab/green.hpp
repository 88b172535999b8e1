#pragma once

#include <complex>
#include <vector>

#include "vortexlab/geometry.hpp"

namespace vtx {

/// Periodic Green's function of the Laplacian on the flat torus,
///
///     Delta F = 2 pi (delta - 1/(l w)),      integral of F = 0,
///
/// with the log singularity F(p) ~ log|p| at the lattice points.  Evaluated
/// in closed form through the first Jacobi theta function,
///
///     F(x, y) = log|theta1(pi z; tau)| - pi y^2 / (l w) + C0,
///     z = (x + i y) / l,   tau = i w / l,   nome q = exp(-pi w / l),
///
/// where the quadratic term carries the uniform background charge and C0
/// enforces the zero mean.  The axes are swapped internally when w < l so
/// that q <= exp(-pi); series terms then decay like q^(2n) and a dozen of
/// them reach machine precision.  The gradient comes from the logarithmic
/// derivative theta1'/theta1, no differencing on the fast path.
///
/// Instances are immutable after construction and safe to share across
/// threads.
class GreenEvaluator {
public:
    explicit GreenEvaluator(TorusGeometry geometry, int series_terms = 12,
                            int oracle_grid = 512);

    const TorusGeometry& geometry() const { return geom_; }
    int series_terms() const { return terms_; }
    int oracle_grid() const { return oracle_grid_; }
    /// Mean-zero constant C0 of the closed form.
    double mean_offset() const { return c0_; }

    /// F at a torus displacement.  Throws SingularPoint within 1e-12 of a
    /// lattice point.
    double eval_F(Vec2 p) const;

    /// Analytic gradient of F.  Odd: grad F(-p) = -grad F(p).
    Vec2 eval_gradF(Vec2 p) const;

    /// Smooth remainder F(p) - log|minimal_image(p)|, finite at p -> 0.
    double eval_F_regular(Vec2 p) const;

    /// Five-point finite-difference Laplacian of eval_F at p with step h;
    /// within O(h^2) of the constant background -2 pi / (l w).
    double laplacian_check(Vec2 p, double h) const;

private:
    struct FramePoint {
        double X, Y;   // coordinates with the long period second
        bool swapped;
    };
    FramePoint to_frame(const Vec2& m) const;

    std::complex<double> log_derivative(const std::complex<double>& v) const;
    double log_abs_theta1(const std::complex<double>& v) const;

    TorusGeometry geom_;
    int terms_;
    int oracle_grid_;
    bool swap_axes_;     // evaluate with periods (L, W), W >= L
    double L_, W_;
    double q_;           // nome exp(-pi W / L)
    double log_prefactor_; // log(2 q^(1/4)) + sum log(1 - q^(2n))
    double c0_;
    std::vector<double> q2n_; // q^(2n), n = 1..terms
};

/// Independent cross-check: the exact solution of the spectrally
/// discretised problem on an M x M grid, i.e. the inverse DFT of the
/// coefficients -1/(2 pi |k~|^2 l w) over the nonzero modes (k~ = (kx/l,
/// ky/w)).  Deliberately shares no code with the closed form above.
class SpectralGreenOracle {
public:
    SpectralGreenOracle(TorusGeometry geometry, int grid);

    int grid() const { return m_; }
    const TorusGeometry& geometry() const { return geom_; }

    Vec2 node(int i, int j) const;
    double at_node(int i, int j) const;

private:
    TorusGeometry geom_;
    int m_;
    std::vector<double> table_;
};

} // namespace vtx
