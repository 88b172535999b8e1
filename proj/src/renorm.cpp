#include "vortexlab/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vortexlab/errors.hpp"

namespace vtx {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kCollisionGuard = 1e-10;

void require_separated(const VortexConfiguration& a) {
    if (a.min_pair_distance() < kCollisionGuard) {
        throw CollidedConfiguration("pairwise torus distance below 1e-10");
    }
}
} // namespace

void VortexConfiguration::validate() const {
    if (positions.size() != degrees.size() || positions.empty() ||
        positions.size() % 2 != 0) {
        throw ConfigError("configuration needs 2N positions with degrees");
    }
    const int n = pairs();
    int sum = 0;
    for (int j = 0; j < total(); ++j) {
        if (degrees[j] != 1 && degrees[j] != -1) {
            throw ConfigError("degrees must be +1 or -1");
        }
        if (degrees[j] != (j < n ? 1 : -1)) {
            throw ConfigError("canonical order is N positive then N negative");
        }
        sum += degrees[j];
    }
    if (sum != 0) throw ConfigError("degrees must sum to zero");
    require_separated(*this);
}

double VortexConfiguration::min_pair_distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < total(); ++j) {
        for (int k = j + 1; k < total(); ++k) {
            best = std::min(best, geometry.distance(positions[j], positions[k]));
        }
    }
    return best;
}

VortexConfiguration make_configuration(TorusGeometry geometry,
                                       std::vector<Vec2> plus,
                                       std::vector<Vec2> minus) {
    VortexConfiguration a;
    a.geometry = geometry;
    a.positions = std::move(plus);
    const std::size_t n = a.positions.size();
    a.positions.insert(a.positions.end(), minus.begin(), minus.end());
    a.degrees.assign(a.positions.size(), -1);
    for (std::size_t j = 0; j < n; ++j) a.degrees[j] = 1;
    a.validate();
    return a;
}

Vec2 q_of(const VortexConfiguration& a) {
    Vec2 moment{0.0, 0.0};
    for (int j = 0; j < a.total(); ++j) {
        moment += static_cast<double>(a.degrees[j]) * a.positions[j];
    }
    return symplectic(moment);
}

Vec2 Q0_of(const VortexConfiguration& a) { return 2.0 * kPi * q_of(a); }

double renormalized_W(const VortexConfiguration& a, const GreenEvaluator& green) {
    require_separated(a);
    double sum = 0.0;
    for (int k = 0; k < a.total(); ++k) {
        for (int m = 0; m < a.total(); ++m) {
            if (k == m) continue;
            sum += a.degrees[k] * a.degrees[m] *
                   green.eval_F(a.positions[k] - a.positions[m]);
        }
    }
    return -kPi * sum;
}

double renormalized_WT(const VortexConfiguration& a, const GreenEvaluator& green) {
    Vec2 moment{0.0, 0.0};
    for (int j = 0; j < a.total(); ++j) {
        moment += static_cast<double>(a.degrees[j]) * a.positions[j];
    }
    const double coeff = 2.0 * kPi * kPi / a.geometry.area();
    return renormalized_W(a, green) + coeff * norm2(moment);
}

double WT_eps(const VortexConfiguration& a, double eps, const CoreConstant& gamma,
              const GreenEvaluator& green) {
    const double n2 = a.total(); // 2N
    return n2 * (kPi * std::log(1.0 / eps) + gamma.gamma) +
           renormalized_WT(a, green);
}

Vec2 grad_WT(const VortexConfiguration& a, int j, const GreenEvaluator& green) {
    require_separated(a);
    Vec2 pair_term{0.0, 0.0};
    for (int k = 0; k < a.total(); ++k) {
        if (k == j) continue;
        pair_term += static_cast<double>(a.degrees[k] * a.degrees[j]) *
                     green.eval_gradF(a.positions[j] - a.positions[k]);
    }
    const double coeff = 4.0 * kPi * kPi / a.geometry.area();
    return -2.0 * kPi * pair_term -
           coeff * static_cast<double>(a.degrees[j]) * symplectic(q_of(a));
}

double xi_of(const VortexConfiguration& a) {
    double sum = 0.0;
    for (int j = 0; j < a.total(); ++j) {
        for (int k = 0; k < a.total(); ++k) {
            if (j == k) continue;
            sum += a.degrees[j] * a.degrees[k] *
                   norm2(a.positions[j] - a.positions[k]);
        }
    }
    return 0.25 * sum;
}

} // namespace vtx
