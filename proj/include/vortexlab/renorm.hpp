#pragma once

#include <vector>

#include "vortexlab/geometry.hpp"
#include "vortexlab/green.hpp"

namespace vtx {

/// 2N vortex centers with degrees +-1 summing to zero.  Positions are
/// persistent lifts in R^2 (initialized in the fundamental domain); the
/// dynamics evolves the lift continuously and never re-wraps mid-run, so
/// the first integrals q, W_T, xi stay smooth along trajectories.  F and
/// its gradient always act on minimal-image differences.
struct VortexConfiguration {
    std::vector<Vec2> positions; // canonical order: N positive, then N negative
    std::vector<int> degrees;
    TorusGeometry geometry;

    int total() const { return static_cast<int>(positions.size()); }
    int pairs() const { return total() / 2; }

    /// Checks degree balance, canonical ordering and pairwise separation.
    void validate() const;

    double min_pair_distance() const;
};

/// Convenience builder: N positive then N negative positions.
VortexConfiguration make_configuration(TorusGeometry geometry,
                                       std::vector<Vec2> plus,
                                       std::vector<Vec2> minus);

/// Core-energy constant gamma = lim (I(eps) - pi log(1/eps)).
struct CoreConstant {
    double gamma = 0.0;
    std::vector<double> epsilon_ladder;
    bool extrapolated = false;
};

/// q(a) = J sum_m d_m a_m (lifted representatives).
Vec2 q_of(const VortexConfiguration& a);

/// Q0 = 2 pi q(a), the eps -> 0 limit of the field momentum.
Vec2 Q0_of(const VortexConfiguration& a);

/// W(a) = -pi sum_{k != m} d_k d_m F(a_k - a_m), minimal-image differences.
double renormalized_W(const VortexConfiguration& a, const GreenEvaluator& green);

/// W_T(a) = W(a) + (2 pi^2 / (l w)) |sum d_m a_m|^2 (sum over lifts).
double renormalized_WT(const VortexConfiguration& a, const GreenEvaluator& green);

/// W_T^eps(a) = 2N (pi log(1/eps) + gamma) + W_T(a).
double WT_eps(const VortexConfiguration& a, double eps, const CoreConstant& gamma,
              const GreenEvaluator& green);

/// Analytic gradient of W_T with respect to vortex j:
///   -2 pi sum_{k != j} d_k d_j grad F(a_j - a_k) - (4 pi^2/(l w)) d_j J q(a).
Vec2 grad_WT(const VortexConfiguration& a, int j, const GreenEvaluator& green);

/// xi(a) = 1/4 sum_{j != k} d_j d_k |a_j - a_k|^2 on lifted representatives.
/// With balanced degrees this collapses to -|q(a)|^2 / 2, so its conservation
/// follows from q's; it is still evaluated from the defining double sum.
double xi_of(const VortexConfiguration& a);

} // namespace vtx
