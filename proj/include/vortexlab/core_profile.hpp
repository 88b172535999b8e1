#pragma once

#include <vector>

#include "vortexlab/renorm.hpp"

namespace vtx {

/// Radial vortex-core amplitude on the unit disc: the minimizer f of
///   2 pi int_0^1 [ (f'^2 + f^2/r^2)/2 + (1 - f^2)^2/(4 eps^2) ] r dr
/// with f(0) = 0, f(1) = 1, together with its energy I(eps).
struct CoreProfile {
    double eps = 0.0;
    std::vector<double> radii;  // increasing, radii.front() = 0, back() = 1
    std::vector<double> values; // f samples
    double energy = 0.0;        // I(eps)
    double newton_residual = 0.0;

    /// f at scaled radius s = r / eps (clamped to the solved disc, so the
    /// amplitude is exactly 1 beyond r = 1).
    double amplitude(double s) const;

    /// Crude closed-form stand-in, amplitude(s) = tanh(s / sqrt(2)).  Costs
    /// nothing to build but misses the sharp core energy by a constant per
    /// vortex; keep it behind a flag.
    static CoreProfile tanh_profile(double eps, int nodes = 512);

    bool is_tanh = false;
};

/// Damped Newton on the finite-difference Euler-Lagrange system
///   f'' + f'/r - f/r^2 + (1/eps^2) f (1 - f^2) = 0
/// over a graded radial mesh (geometric clustering toward r = 0 resolves the
/// eps-scale layer).  Throws NoConvergence if the residual stays above 1e-10
/// after 200 iterations.
CoreProfile solve_profile(double eps, int nodes);

/// I(eps) - pi log(1/eps) extrapolated over a decreasing eps ladder
/// (Aitken's delta-squared on the tail); the ladder is recorded in the
/// returned constant.
CoreConstant estimate_gamma(const std::vector<double>& ladder,
                            int nodes = 4096);

/// Newton residual (max norm) of a solved profile, for diagnostics.
double profile_residual(const CoreProfile& p);

} // namespace vtx
