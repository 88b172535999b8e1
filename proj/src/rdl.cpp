#include "vortexlab/rdl.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "vortexlab/errors.hpp"

namespace vtx {

namespace {
constexpr double kVelocityGuard = 1e6;
constexpr double kSingularArg = 1e-10;

using State = std::vector<Vec2>;

double min_pair_dist(const State& pos, const TorusGeometry& geom) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pos.size(); ++j) {
        for (std::size_t k = j + 1; k < pos.size(); ++k) {
            best = std::min(best, geom.distance(pos[j], pos[k]));
        }
    }
    return best;
}

State eval_rhs(const State& pos, const std::vector<int>& degrees,
               const TorusGeometry& geom, const Vec2& Q0,
               const GreenEvaluator& green) {
    const Vec2 drift = (2.0 / geom.area()) * Q0;
    State vel(pos.size());
    for (std::size_t j = 0; j < pos.size(); ++j) {
        Vec2 circ{0.0, 0.0};
        for (std::size_t k = 0; k < pos.size(); ++k) {
            if (k == j) continue;
            circ += static_cast<double>(degrees[k]) *
                    green.eval_gradF(pos[j] - pos[k]);
        }
        vel[j] = 2.0 * symplectic(circ) - drift;
        if (!(norm(vel[j]) <= kVelocityGuard)) {
            throw StepExploded("vortex velocity exceeded 1e6");
        }
    }
    return vel;
}

State rk4_step(const State& pos, double h, const std::vector<int>& degrees,
               const TorusGeometry& geom, const Vec2& Q0,
               const GreenEvaluator& green) {
    const std::size_t n = pos.size();
    const State k1 = eval_rhs(pos, degrees, geom, Q0, green);
    State tmp(n);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = pos[j] + 0.5 * h * k1[j];
    const State k2 = eval_rhs(tmp, degrees, geom, Q0, green);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = pos[j] + 0.5 * h * k2[j];
    const State k3 = eval_rhs(tmp, degrees, geom, Q0, green);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = pos[j] + h * k3[j];
    const State k4 = eval_rhs(tmp, degrees, geom, Q0, green);
    State out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = pos[j] + (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    return out;
}

} // namespace

VortexConfiguration ReducedTrajectory::configuration_at(std::size_t idx) const {
    VortexConfiguration a;
    a.positions = states.at(idx);
    a.degrees = degrees;
    a.geometry = geometry;
    return a;
}

std::vector<Vec2> rhs(const VortexConfiguration& a, const Vec2& Q0,
                      const GreenEvaluator& green) {
    if (a.min_pair_distance() < kSingularArg) {
        throw CollidedConfiguration("rhs on a collided configuration");
    }
    return eval_rhs(a.positions, a.degrees, a.geometry, Q0, green);
}

ReducedTrajectory integrate(const VortexConfiguration& a0, const Vec2& Q0,
                            const IntegratorParams& params,
                            const GreenEvaluator& green) {
    a0.validate();

    ReducedTrajectory traj;
    traj.degrees = a0.degrees;
    traj.geometry = a0.geometry;

    auto record = [&](double t, const State& pos) {
        VortexConfiguration a{pos, traj.degrees, traj.geometry};
        traj.times.push_back(t);
        traj.states.push_back(pos);
        traj.integrals.push_back({q_of(a), renormalized_WT(a, green), xi_of(a),
                                  min_pair_dist(pos, traj.geometry)});
    };

    State pos = a0.positions;
    record(0.0, pos);
    if (min_pair_dist(pos, traj.geometry) <= params.stop_dist) {
        traj.status = ReducedTrajectory::Status::collided;
        traj.collision_t = 0.0;
        return traj;
    }

    const long n_steps = static_cast<long>(
        std::ceil(params.t_end / params.dt - 1e-12));
    double t = 0.0;
    for (long step = 1; step <= n_steps; ++step) {
        const double h = std::min(params.dt, params.t_end - t);
        State next = rk4_step(pos, h, traj.degrees, traj.geometry, Q0, green);
        const double t_next = (step == n_steps) ? params.t_end : t + h;

        if (min_pair_dist(next, traj.geometry) <= params.stop_dist) {
            // bisect the sub-step for the first crossing
            double lo = 0.0, hi = h;
            for (int it = 0; it < 48 && (hi - lo) > 1e-16 * params.dt; ++it) {
                const double mid = 0.5 * (lo + hi);
                State probe =
                    rk4_step(pos, mid, traj.degrees, traj.geometry, Q0, green);
                if (min_pair_dist(probe, traj.geometry) <= params.stop_dist) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            traj.status = ReducedTrajectory::Status::collided;
            traj.collision_t = t + hi;
            record(t_next, next);
            return traj;
        }

        pos = std::move(next);
        t = t_next;
        if (step % params.record_every == 0 || step == n_steps) {
            record(t, pos);
        }
    }
    traj.status = ReducedTrajectory::Status::completed;
    return traj;
}

Vec2 dipole_velocity(const VortexConfiguration& a0, const Vec2& Q0,
                     const GreenEvaluator& green) {
    if (a0.pairs() != 1) throw WrongArity("dipole law needs N = 1");
    const Vec2 sep = a0.positions[0] - a0.positions[1];
    return -2.0 * symplectic(green.eval_gradF(sep)) -
           (2.0 / a0.geometry.area()) * Q0;
}

VortexConfiguration analytic_dipole(const VortexConfiguration& a0,
                                    const Vec2& Q0, double t,
                                    const GreenEvaluator& green) {
    const Vec2 p = dipole_velocity(a0, Q0, green);
    VortexConfiguration a = a0;
    a.positions[0] += t * p;
    a.positions[1] += t * p;
    return a;
}

Vec2 symmetric_rhs(SymmetricKind kind, double alpha, double beta,
                   const GreenEvaluator& green) {
    const TorusGeometry& geom = green.geometry();
    auto dF = [&](double x, double y) -> Vec2 {
        const Vec2 arg{x, y};
        if (norm(geom.minimal_image(arg)) < kSingularArg) {
            throw SingularArgument("reduced-system F argument at a lattice point");
        }
        return green.eval_gradF(arg);
    };

    switch (kind) {
    case SymmetricKind::diag4: {
        const Vec2 g1 = dF(alpha - beta, beta - alpha);
        const Vec2 g2 = dF(2.0 * alpha, 2.0 * beta);
        const Vec2 g3 = dF(alpha + beta, alpha + beta);
        return {2.0 * (-g1.y + g2.y - g3.y), 2.0 * (g1.x - g2.x + g3.x)};
    }
    case SymmetricKind::mirror4: {
        const Vec2 g2 = dF(2.0 * alpha, 2.0 * beta);
        const Vec2 gy = dF(0.0, 2.0 * beta);
        const Vec2 gx = dF(2.0 * alpha, 0.0);
        return {2.0 * (g2.y - gy.y), 2.0 * (-g2.x + gx.x)};
    }
    case SymmetricKind::stacked4: {
        const Vec2 g2 = dF(2.0 * alpha, 2.0 * beta);
        const Vec2 gy = dF(0.0, 2.0 * beta - 0.5);
        const Vec2 gx = dF(2.0 * alpha, 0.5);
        return {2.0 * (g2.y - gy.y), 2.0 * (-g2.x + gx.x)};
    }
    }
    return {0.0, 0.0};
}

VortexConfiguration symmetric_configuration(SymmetricKind kind, double alpha,
                                            double beta, double x0) {
    const TorusGeometry geom{1.0, 1.0};
    const Vec2 ab{alpha, beta};
    switch (kind) {
    case SymmetricKind::diag4: {
        const Vec2 c{0.5, 0.5};
        const Vec2 ba{beta, alpha};
        return make_configuration(geom, {c + ab, c - ab}, {c + ba, c - ba});
    }
    case SymmetricKind::mirror4: {
        const Vec2 c{0.5, 0.5};
        const Vec2 am{alpha, -beta};
        return make_configuration(geom, {c + ab, c - ab}, {c + am, c - am});
    }
    case SymmetricKind::stacked4: {
        const Vec2 lo{x0, 0.25}, hi{x0, 0.75};
        const Vec2 am{alpha, -beta};
        return make_configuration(geom, {lo + ab, lo - ab}, {hi + am, hi - am});
    }
    }
    throw ConfigError("unknown symmetric kind");
}

std::vector<std::array<double, 3>> integrate_symmetric(
    SymmetricKind kind, double alpha0, double beta0, const IntegratorParams& p,
    const GreenEvaluator& green) {
    std::vector<std::array<double, 3>> out;
    double a = alpha0, b = beta0, t = 0.0;
    out.push_back({t, a, b});
    const long n_steps = static_cast<long>(std::ceil(p.t_end / p.dt - 1e-12));
    for (long step = 1; step <= n_steps; ++step) {
        const double h = std::min(p.dt, p.t_end - t);
        const Vec2 k1 = symmetric_rhs(kind, a, b, green);
        const Vec2 k2 =
            symmetric_rhs(kind, a + 0.5 * h * k1.x, b + 0.5 * h * k1.y, green);
        const Vec2 k3 =
            symmetric_rhs(kind, a + 0.5 * h * k2.x, b + 0.5 * h * k2.y, green);
        const Vec2 k4 = symmetric_rhs(kind, a + h * k3.x, b + h * k3.y, green);
        a += (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
        b += (h / 6.0) * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
        t = (step == n_steps) ? p.t_end : t + h;
        if (step % p.record_every == 0 || step == n_steps) {
            out.push_back({t, a, b});
        }
    }
    return out;
}

std::optional<double> collision_time(const ReducedTrajectory& traj) {
    if (traj.status != ReducedTrajectory::Status::collided) return std::nullopt;
    return traj.collision_t;
}

} // namespace vtx
