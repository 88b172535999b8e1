#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vortexlab/renorm.hpp"

namespace vtx {

struct IntegratorParams {
    double dt = 1e-4;
    double t_end = 1.0;
    double stop_dist = 1e-3;
    int record_every = 1;
};

struct IntegralRecord {
    Vec2 q;
    double wt = 0.0;
    double xi = 0.0;
    double min_dist = 0.0;
};

struct ReducedTrajectory {
    enum class Status { running, collided, completed };

    std::vector<double> times;
    std::vector<std::vector<Vec2>> states; // lifted positions per time
    std::vector<IntegralRecord> integrals;
    Status status = Status::running;
    double collision_t = 0.0; // refined estimate when status == collided
    int collision_j = -1, collision_k = -1;

    std::vector<int> degrees;
    TorusGeometry geometry;

    VortexConfiguration configuration_at(std::size_t idx) const;
};

/// Right-hand side of the reduced dynamical law,
///   da_j/dt = 2 J sum_{k != j} d_k grad F(a_j - a_k) - (2/(l w)) Q0.
std::vector<Vec2> rhs(const VortexConfiguration& a, const Vec2& Q0,
                      const GreenEvaluator& green);

/// Classical fixed-step RK4 with collision stopping.  States are recorded
/// every `record_every` steps (plus the initial and final state) together
/// with the first integrals q, W_T, xi.
ReducedTrajectory integrate(const VortexConfiguration& a0, const Vec2& Q0,
                            const IntegratorParams& params,
                            const GreenEvaluator& green);

/// N = 1 closed form: both vortices translate rigidly with
/// p = -2 J grad F(a1 - a2) - 2 Q0; the separation never changes.
VortexConfiguration analytic_dipole(const VortexConfiguration& a0,
                                    const Vec2& Q0, double t,
                                    const GreenEvaluator& green);
Vec2 dipole_velocity(const VortexConfiguration& a0, const Vec2& Q0,
                     const GreenEvaluator& green);

/// Symmetry-reduced 4-vortex systems (unit torus).
enum class SymmetricKind {
    diag4,    // offsets (alpha, beta) / (beta, alpha) about the center
    mirror4,  // offsets (alpha, beta) / (alpha, -beta) about the center
    stacked4, // two mirrored dipoles stacked at heights 0.25 / 0.75
};

/// (alpha', beta') of the reduced system.  x0 is used only by stacked4's
/// configuration builder and does not enter the reduced velocity.
Vec2 symmetric_rhs(SymmetricKind kind, double alpha, double beta,
                   const GreenEvaluator& green);

/// Full 8-dimensional configuration realizing the symmetric ansatz.
VortexConfiguration symmetric_configuration(SymmetricKind kind, double alpha,
                                            double beta, double x0 = 0.15);

/// RK4 on the reduced (alpha, beta) plane with the same step conventions.
std::vector<std::array<double, 3>> integrate_symmetric(
    SymmetricKind kind, double alpha0, double beta0, const IntegratorParams& p,
    const GreenEvaluator& green);

/// First recorded time the minimum pairwise distance hits stop_dist,
/// refined by bisection on RK4 sub-steps to +-dt; nullopt if no collision.
std::optional<double> collision_time(const ReducedTrajectory& traj);

} // namespace vtx
