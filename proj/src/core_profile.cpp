#include "vortexlab/core_profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vortexlab/errors.hpp"

namespace vtx {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kResidualTarget = 1e-10;
constexpr int kMaxNewton = 200;

std::vector<double> graded_mesh(int nodes) {
    // r = s^2 clusters toward the origin and resolves the eps-scale layer
    std::vector<double> r(static_cast<std::size_t>(nodes) + 1);
    for (int i = 0; i <= nodes; ++i) {
        const double s = static_cast<double>(i) / nodes;
        r[static_cast<std::size_t>(i)] = s * s;
    }
    return r;
}

// The Euler-Lagrange equation f'' + f'/r - f/r^2 + f(1-f^2)/eps^2 = 0 is
// solved in the regularized variable g = f/r, which turns it into
//   r g'' + 3 g' + (r/eps^2) g (1 - r^2 g^2) = 0,   g'(0) = 0, g(1) = 1,
// with no singular coefficients.  Residuals are those of the assembled
// finite-difference system (rows carry their natural hm*hp/2 weight), the
// scaling under which double precision can actually reach 1e-10.
struct GSystem {
    const std::vector<double>& r;
    double ie2;

    double row_weight(std::size_t i) const {
        const std::size_t n = r.size() - 1;
        if (i == 0) return r[1] - r[0];
        if (i == n) return 1.0;
        return 0.5 * (r[i] - r[i - 1]) * (r[i + 1] - r[i]);
    }

    double resid_at(const std::vector<double>& g, std::size_t i) const {
        const std::size_t n = r.size() - 1;
        if (i == 0) {
            // 3 g'(0) = 0 via a second-order one-sided derivative
            const double h1 = r[1] - r[0], h2 = r[2] - r[1];
            return row_weight(0) * 3.0 *
                   (-(2.0 * h1 + h2) / (h1 * (h1 + h2)) * g[0] +
                    (h1 + h2) / (h1 * h2) * g[1] -
                    h1 / (h2 * (h1 + h2)) * g[2]);
        }
        if (i == n) return g[n] - 1.0;
        const double hm = r[i] - r[i - 1];
        const double hp = r[i + 1] - r[i];
        const double denom = hm * hp * (hm + hp);
        const double gpp =
            2.0 * (hm * g[i + 1] - (hm + hp) * g[i] + hp * g[i - 1]) / denom;
        const double gp = (hm * hm * g[i + 1] + (hp * hp - hm * hm) * g[i] -
                           hp * hp * g[i - 1]) / denom;
        const double rg = r[i] * g[i];
        return row_weight(i) *
               (r[i] * gpp + 3.0 * gp + ie2 * rg * (1.0 - rg * rg));
    }

    double max_residual(const std::vector<double>& g) const {
        double m = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            m = std::max(m, std::fabs(resid_at(g, i)));
        }
        return m;
    }
};

// Banded (tridiagonal + the one wide row 0) Newton solve by elimination of
// the row-0 third entry into row 1 first.
void newton_solve(const GSystem& sys, std::vector<double>& g) {
    const std::size_t n = sys.r.size() - 1;
    const auto& r = sys.r;

    std::vector<double> dl(n + 1), dd(n + 1), du(n + 1), rhs(n + 1);
    double row0_extra = 0.0; // coefficient of g[2] in row 0

    for (std::size_t i = 0; i <= n; ++i) rhs[i] = -sys.resid_at(g, i);

    // row 0
    {
        const double wt = sys.row_weight(0);
        const double h1 = r[1] - r[0], h2 = r[2] - r[1];
        dd[0] = wt * 3.0 * (-(2.0 * h1 + h2) / (h1 * (h1 + h2)));
        du[0] = wt * 3.0 * ((h1 + h2) / (h1 * h2));
        row0_extra = wt * 3.0 * (-h1 / (h2 * (h1 + h2)));
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double wt = sys.row_weight(i);
        const double hm = r[i] - r[i - 1];
        const double hp = r[i + 1] - r[i];
        const double denom = hm * hp * (hm + hp);
        dl[i] = wt * (2.0 * r[i] * hp - 3.0 * hp * hp) / denom;
        du[i] = wt * (2.0 * r[i] * hm + 3.0 * hm * hm) / denom;
        dd[i] = wt * ((-2.0 * r[i] * (hm + hp) + 3.0 * (hp * hp - hm * hm)) /
                          denom +
                      sys.ie2 * r[i] * (1.0 - 3.0 * r[i] * r[i] * g[i] * g[i]));
    }
    dd[n] = 1.0;
    dl[n] = 0.0;

    // fold the g[2] entry of row 0 into the tridiagonal pattern using row 1
    if (std::fabs(row0_extra) > 0.0) {
        const double w = row0_extra / du[1];
        // row0 -= w * (row1 shifted): row1 covers g[0..2]
        dd[0] -= w * dl[1];
        du[0] -= w * dd[1];
        rhs[0] -= w * rhs[1];
    }

    // Thomas elimination
    for (std::size_t i = 1; i <= n; ++i) {
        const double w = dl[i] / dd[i - 1];
        dd[i] -= w * du[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[n] /= dd[n];
    for (std::size_t i = n; i-- > 0;) {
        rhs[i] = (rhs[i] - du[i] * rhs[i + 1]) / dd[i];
    }
    for (std::size_t i = 0; i <= n; ++i) g[i] += rhs[i];
}

// Cubic through four (r, f) points: value and derivative by Neville tables.
struct LocalCubic {
    double rr[4], cf[4]; // Newton form: cf the divided differences

    LocalCubic(const double* rs, const double* fs) {
        double d[4] = {fs[0], fs[1], fs[2], fs[3]};
        for (int k = 0; k < 4; ++k) rr[k] = rs[k];
        cf[0] = d[0];
        for (int lvl = 1; lvl < 4; ++lvl) {
            for (int k = 3; k >= lvl; --k) {
                d[k] = (d[k] - d[k - 1]) / (rr[k] - rr[k - lvl]);
            }
            cf[lvl] = d[lvl];
        }
    }
    double value(double x) const {
        return cf[0] +
               (x - rr[0]) *
                   (cf[1] + (x - rr[1]) * (cf[2] + (x - rr[2]) * cf[3]));
    }
    double deriv(double x) const {
        const double a = x - rr[0], b = x - rr[1], c = x - rr[2];
        return cf[1] + cf[2] * (a + b) + cf[3] * (a * b + a * c + b * c);
    }
};

double energy_quadrature(const std::vector<double>& r,
                         const std::vector<double>& f, double eps) {
    // per-interval Simpson with cubic reconstruction of f and f'
    const double pot = 1.0 / (4.0 * eps * eps);
    const std::size_t n = r.size() - 1;
    auto density = [&](const LocalCubic& cub, double x) {
        const double fv = cub.value(x);
        const double fp = cub.deriv(x);
        const double one_m_f2 = 1.0 - fv * fv;
        const double angular = x > 0.0 ? fv * fv / x : 0.0; // f^2/r * (r weight)
        return x * (0.5 * fp * fp + pot * one_m_f2 * one_m_f2) + 0.5 * angular;
    };
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t base = i == 0 ? 0 : (i + 2 > n ? n - 3 : i - 1);
        const LocalCubic cub(&r[base], &f[base]);
        const double a = r[i], b = r[i + 1];
        const double mid = 0.5 * (a + b);
        acc += (b - a) / 6.0 *
               (density(cub, a) + 4.0 * density(cub, mid) + density(cub, b));
    }
    return 2.0 * kPi * acc;
}

} // namespace

double CoreProfile::amplitude(double s) const {
    if (is_tanh) return std::tanh(s / std::numbers::sqrt2);
    const double r = std::clamp(s * eps, 0.0, 1.0);
    const auto it = std::upper_bound(radii.begin(), radii.end(), r);
    if (it == radii.begin()) return values.front();
    if (it == radii.end()) return values.back();
    const std::size_t hi = static_cast<std::size_t>(it - radii.begin());
    const std::size_t lo = hi - 1;
    const double t = (r - radii[lo]) / (radii[hi] - radii[lo]);
    return values[lo] + t * (values[hi] - values[lo]);
}

CoreProfile CoreProfile::tanh_profile(double eps, int nodes) {
    CoreProfile p;
    p.eps = eps;
    p.is_tanh = true;
    p.radii.resize(static_cast<std::size_t>(nodes) + 1);
    p.values.resize(p.radii.size());
    for (int i = 0; i <= nodes; ++i) {
        const double r = static_cast<double>(i) / nodes;
        p.radii[static_cast<std::size_t>(i)] = r;
        p.values[static_cast<std::size_t>(i)] =
            std::tanh(r / (std::numbers::sqrt2 * eps));
    }
    p.energy = energy_quadrature(p.radii, p.values, eps);
    return p;
}

CoreProfile solve_profile(double eps, int nodes) {
    if (eps < 1e-3 || eps > 0.5) throw ConfigError("solve_profile: eps out of range");
    if (nodes < 512) throw ConfigError("solve_profile: need at least 512 nodes");

    const std::vector<double> r = graded_mesh(nodes);
    const std::size_t n = r.size() - 1;
    const GSystem sys{r, 1.0 / (eps * eps)};

    std::vector<double> g(n + 1);
    const double scale = 1.0 / (std::numbers::sqrt2 * eps);
    g[0] = scale;
    for (std::size_t i = 1; i <= n; ++i) {
        g[i] = std::tanh(r[i] * scale) / r[i];
    }
    g[n] = 1.0;

    double res = sys.max_residual(g);
    for (int iter = 0; iter < kMaxNewton && res > kResidualTarget; ++iter) {
        std::vector<double> prev = g;
        newton_solve(sys, g);
        double trial = sys.max_residual(g);
        // damp if the full step made things worse
        double step = 1.0;
        while (trial > res && step > 1e-8) {
            step *= 0.5;
            for (std::size_t i = 0; i <= n; ++i) {
                g[i] = prev[i] + step * (g[i] - prev[i]);
            }
            trial = sys.max_residual(g);
        }
        res = trial;
    }
    if (res > kResidualTarget) {
        throw NoConvergence("core profile Newton stalled at residual " +
                            std::to_string(res));
    }

    CoreProfile p;
    p.eps = eps;
    p.radii = r;
    p.values.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) p.values[i] = r[i] * g[i];
    p.energy = energy_quadrature(r, p.values, eps);
    p.newton_residual = res;
    return p;
}

double profile_residual(const CoreProfile& p) {
    if (p.is_tanh) return std::numeric_limits<double>::quiet_NaN();
    return p.newton_residual;
}

CoreConstant estimate_gamma(const std::vector<double>& ladder, int nodes) {
    if (ladder.size() < 3) throw ConfigError("gamma ladder needs >= 3 entries");
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        if (ladder[i] >= ladder[i - 1]) {
            throw ConfigError("gamma ladder must be strictly decreasing");
        }
    }
    std::vector<double> g(ladder.size());
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        const CoreProfile p = solve_profile(ladder[i], nodes);
        g[i] = p.energy - kPi * std::log(1.0 / ladder[i]);
    }
    // Aitken delta-squared on the last three entries
    const std::size_t k = g.size() - 1;
    const double d1 = g[k - 1] - g[k - 2];
    const double d2 = g[k] - g[k - 1];
    double gamma = g[k];
    if (std::fabs(d2 - d1) > 1e-300) {
        gamma = g[k] - d2 * d2 / (d2 - d1);
    }
    CoreConstant c;
    c.gamma = gamma;
    c.epsilon_ladder = ladder;
    c.extrapolated = true;
    return c;
}

} // namespace vtx
