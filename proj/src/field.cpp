#include "vortexlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>

#include "vortexlab/errors.hpp"
#include "vortexlab/fft.hpp"

namespace vtx {

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

// theta1(pi z; tau) up to a positive constant factor (enough for phases and
// ratios): sin(pi z) prod_n (1 - q^2n e^{2 pi i z})(1 - q^2n e^{-2 pi i z}).
struct ThetaFactor {
    double q;
    int terms;

    explicit ThetaFactor(double aspect /* w/l */) {
        q = std::exp(-kPi * aspect);
        // q^(2n-2) < 1e-18 once n exceeds this; floor of 12 matches the
        // Green evaluator default
        terms = 12;
        const double lq = std::log(q);
        while (terms < 64 && (2.0 * terms - 2.0) * lq > -42.0) ++terms;
    }

    cplx value(const cplx& z) const {
        const cplx v = kPi * z;
        cplx acc = std::sin(v);
        const cplx e2iv = std::exp(cplx(0.0, 2.0) * v);
        const cplx e2iv_inv = 1.0 / e2iv;
        double q2n = 1.0;
        for (int n = 1; n <= terms; ++n) {
            q2n *= q * q;
            acc *= (1.0 - q2n * e2iv) * (1.0 - q2n * e2iv_inv);
        }
        return acc;
    }
};

Vec2 nudge_off_grid(Vec2 p, double hx, double hy) {
    const double fx = p.x / hx, fy = p.y / hy;
    if (std::fabs(fx - std::round(fx)) < 1e-9 &&
        std::fabs(fy - std::round(fy)) < 1e-9) {
        p.x += 0.5 * hx;
        p.y += 0.5 * hy;
    }
    return p;
}

std::vector<Vec2> prepared_positions(const VortexConfiguration& a, int mx,
                                     int my) {
    std::vector<Vec2> pos(a.positions.size());
    const double hx = a.geometry.l / mx, hy = a.geometry.w / my;
    for (std::size_t j = 0; j < pos.size(); ++j) {
        pos[j] = nudge_off_grid(a.geometry.wrap(a.positions[j]), hx, hy);
    }
    return pos;
}

void require_grid(int mx, int my) {
    if (mx < 16 || my < 16 || !is_pow2(static_cast<std::size_t>(mx)) ||
        !is_pow2(static_cast<std::size_t>(my))) {
        throw ResolutionError("grid sides must be powers of two, >= 16");
    }
}

double wrapped_arg(const cplx& a, const cplx& b) {
    // phase of a relative to b, in (-pi, pi]
    return std::arg(a * std::conj(b));
}

} // namespace

ComplexField ComplexField::make(int mx, int my, TorusGeometry geometry,
                                double eps) {
    require_grid(mx, my);
    ComplexField f;
    f.mx = mx;
    f.my = my;
    f.geometry = geometry;
    f.eps = eps;
    f.samples.assign(static_cast<std::size_t>(mx) * my, cplx(0.0, 0.0));
    return f;
}

namespace {

cplx harmonic_value(const std::vector<Vec2>& pos, const TorusGeometry& geom,
                    const ThetaFactor& theta, double phase_coef,
                    const Vec2& p) {
    const int npairs = static_cast<int>(pos.size()) / 2;
    cplx val = std::exp(cplx(0.0, phase_coef * p.y));
    for (int j = 0; j < npairs; ++j) {
        const cplx zp((p.x - pos[std::size_t(j)].x) / geom.l,
                      (p.y - pos[std::size_t(j)].y) / geom.l);
        const cplx zm((p.x - pos[std::size_t(npairs + j)].x) / geom.l,
                      (p.y - pos[std::size_t(npairs + j)].y) / geom.l);
        const cplx tp = theta.value(zp);
        const cplx tm = theta.value(zm);
        const double ap = std::abs(tp), am = std::abs(tm);
        if (ap == 0.0 || am == 0.0) {
            throw CollidedConfiguration("evaluation point at a vortex center");
        }
        val *= (tp / ap) * std::conj(tm / am);
    }
    return val;
}

double momentum_phase_coef(const std::vector<Vec2>& pos,
                           const TorusGeometry& geom) {
    // combined momentum phase: -2 pi sum_j (x+_j - x-_j) y / (l w)
    const int npairs = static_cast<int>(pos.size()) / 2;
    double xdiff = 0.0;
    for (int j = 0; j < npairs; ++j) {
        xdiff += pos[std::size_t(j)].x - pos[std::size_t(npairs + j)].x;
    }
    return -2.0 * kPi * xdiff / geom.area();
}

} // namespace

ComplexField harmonic_map(const VortexConfiguration& a, int mx, int my) {
    a.validate();
    ComplexField H = ComplexField::make(mx, my, a.geometry, 0.0);
    const TorusGeometry& geom = a.geometry;
    const std::vector<Vec2> pos = prepared_positions(a, mx, my);
    const ThetaFactor theta(geom.w / geom.l);
    const double phase_coef = momentum_phase_coef(pos, geom);
    for (int iy = 0; iy < my; ++iy) {
        for (int ix = 0; ix < mx; ++ix) {
            H.at(ix, iy) =
                harmonic_value(pos, geom, theta, phase_coef, H.node(ix, iy));
        }
    }
    return H;
}

std::complex<double> harmonic_map_value(const VortexConfiguration& a,
                                        const Vec2& p) {
    a.validate();
    std::vector<Vec2> pos(a.positions.size());
    for (std::size_t j = 0; j < pos.size(); ++j) {
        pos[j] = a.geometry.wrap(a.positions[j]);
    }
    const ThetaFactor theta(a.geometry.w / a.geometry.l);
    return harmonic_value(pos, a.geometry, theta,
                          momentum_phase_coef(pos, a.geometry), p);
}

Vec2 analytic_current(const VortexConfiguration& a, const Vec2& p,
                      const GreenEvaluator& green) {
    Vec2 sum{0.0, 0.0};
    for (int j = 0; j < a.total(); ++j) {
        sum += static_cast<double>(a.degrees[j]) *
               green.eval_gradF(p - a.positions[j]);
    }
    return -1.0 * symplectic(sum) + (2.0 * kPi / a.geometry.area()) * q_of(a);
}

// Sharp well-preparedness (energy within o(1) of W_T^eps) needs cores well
// separated, eps <= min distance / 8; the construction itself only
// degenerates once neighboring cores overlap, so that is where it refuses.
ComplexField build_initial_data(const VortexConfiguration& a, double eps,
                                int mx, int my, const CoreProfile& profile) {
    a.validate();
    if (eps <= 0.0 ||
        eps > a.min_pair_distance() * 0.5 * (1.0 + 1e-9)) {
        throw ConfigError("core size must satisfy eps <= min distance / 2");
    }
    const TorusGeometry& geom = a.geometry;
    if (std::min(geom.l / mx, geom.w / my) > eps / 4.0) {
        throw ResolutionError("grid does not resolve the core: need h <= eps/4");
    }

    ComplexField u = harmonic_map(a, mx, my);
    u.eps = eps;
    const std::vector<Vec2> pos = prepared_positions(a, mx, my);
    for (int iy = 0; iy < my; ++iy) {
        for (int ix = 0; ix < mx; ++ix) {
            const Vec2 x = u.node(ix, iy);
            double rho = 1.0;
            for (const Vec2& c : pos) {
                rho *= profile.amplitude(geom.distance(x, c) / eps);
            }
            u.at(ix, iy) *= rho;
        }
    }
    return u;
}

DensitySet densities(const ComplexField& u) {
    const int mx = u.mx, my = u.my;
    const std::size_t n = u.samples.size();
    std::vector<cplx> spec = u.samples;
    Fft2D plan(static_cast<std::size_t>(mx), static_cast<std::size_t>(my));
    plan.forward(spec.data());

    std::vector<cplx> dx = spec, dy = std::move(spec);
    for (int iy = 0; iy < my; ++iy) {
        const double ky = 2.0 * kPi *
                          static_cast<double>(fft_mode(iy, my)) / u.geometry.w;
        for (int ix = 0; ix < mx; ++ix) {
            const double kx = 2.0 * kPi *
                              static_cast<double>(fft_mode(ix, mx)) /
                              u.geometry.l;
            const std::size_t id = static_cast<std::size_t>(iy) * mx + ix;
            dx[id] *= cplx(0.0, kx);
            dy[id] *= cplx(0.0, ky);
        }
    }
    plan.inverse(dx.data());
    plan.inverse(dy.data());

    DensitySet out;
    out.current = {DensityField::Kind::current, mx, my,
                   std::vector<Vec2>(n), {}};
    out.energy = {DensityField::Kind::energy, mx, my, {},
                  std::vector<double>(n)};
    out.jacobian = {DensityField::Kind::jacobian, mx, my, {},
                    std::vector<double>(n)};
    const double pot = u.eps > 0.0 ? 1.0 / (4.0 * u.eps * u.eps) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx v = u.samples[i];
        const cplx gx = dx[i], gy = dy[i];
        out.current.vec[i] = {std::imag(std::conj(v) * gx),
                              std::imag(std::conj(v) * gy)};
        const double grad2 = std::norm(gx) + std::norm(gy);
        const double one_m = 1.0 - std::norm(v);
        out.energy.sca[i] = 0.5 * grad2 + pot * one_m * one_m;
        out.jacobian.sca[i] = std::imag(std::conj(gx) * gy);
    }
    return out;
}

Observables observables(const ComplexField& u) {
    const DensitySet d = densities(u);
    const double cell = u.hx() * u.hy();
    Observables obs;
    for (std::size_t i = 0; i < u.samples.size(); ++i) {
        obs.mass += std::norm(u.samples[i]);
        obs.momentum += d.current.vec[i];
        obs.energy += d.energy.sca[i];
    }
    obs.mass *= cell;
    obs.momentum *= cell;
    obs.energy *= cell;
    return obs;
}

DensityField phase_current(const ComplexField& u) {
    DensityField out{DensityField::Kind::current, u.mx, u.my,
                     std::vector<Vec2>(u.samples.size()), {}};
    const double ihx = 1.0 / (12.0 * u.hx()), ihy = 1.0 / (12.0 * u.hy());
    // 4th-order: theta' ~ (8 (t+1 - t-1) - (t+2 - t-2)) / 12h, with every
    // phase delta accumulated from wrapped single-step increments
    auto stencil = [&](const cplx& m2, const cplx& m1, const cplx& c,
                       const cplx& p1, const cplx& p2) {
        const double d1 = wrapped_arg(p1, c) + wrapped_arg(c, m1);
        const double d2 = wrapped_arg(p2, p1) + d1 + wrapped_arg(m1, m2);
        return 8.0 * d1 - d2;
    };
    for (int iy = 0; iy < u.my; ++iy) {
        for (int ix = 0; ix < u.mx; ++ix) {
            const cplx c = u.at(ix, iy);
            const double jx =
                stencil(u.at(ix - 2, iy), u.at(ix - 1, iy), c,
                        u.at(ix + 1, iy), u.at(ix + 2, iy)) * ihx;
            const double jy =
                stencil(u.at(ix, iy - 2), u.at(ix, iy - 1), c,
                        u.at(ix, iy + 1), u.at(ix, iy + 2)) * ihy;
            out.vec[u.index(ix, iy)] = {jx, jy};
        }
    }
    return out;
}

Vec2 integrate_current(const VortexConfiguration& a, const GreenEvaluator& green,
                       int grid) {
    a.validate();
    const TorusGeometry& geom = a.geometry;
    const double hx = geom.l / grid, hy = geom.w / grid;
    const double cutoff =
        std::min(0.45 * std::min(geom.l, geom.w), 0.45 * a.min_pair_distance());
    auto chi = [&](double s) { // C^3 smoothstep, 1 on [0, 1/2], 0 beyond 1
        if (s <= 0.5) return 1.0;
        if (s >= 1.0) return 0.0;
        const double t = 2.0 * (1.0 - s);
        return t * t * t * t * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
    };

    Vec2 acc{0.0, 0.0};
    for (int iy = 0; iy < grid; ++iy) {
        for (int ix = 0; ix < grid; ++ix) {
            const Vec2 p{ix * hx, iy * hy};
            int at_vortex = -1;
            for (int j = 0; j < a.total(); ++j) {
                if (geom.distance(p, a.positions[j]) < 1e-12) at_vortex = j;
            }
            Vec2 value{0.0, 0.0};
            if (at_vortex < 0) {
                value = analytic_current(a, p, green);
            } else {
                // limit value: own singular part cancels against the model
                value = (2.0 * kPi / geom.area()) * q_of(a);
                for (int k = 0; k < a.total(); ++k) {
                    if (k == at_vortex) continue;
                    value += -static_cast<double>(a.degrees[k]) *
                             symplectic(green.eval_gradF(p - a.positions[k]));
                }
            }
            for (int j = 0; j < a.total(); ++j) {
                if (j == at_vortex) continue;
                const Vec2 d = geom.minimal_image(p - a.positions[j]);
                const double r = norm(d);
                if (r >= cutoff) continue;
                // remove the odd model -d_j J d / r^2 of the local singularity
                value += (a.degrees[j] * chi(r / cutoff) / (r * r)) *
                         symplectic(d);
            }
            acc += value;
        }
    }
    return hx * hy * acc;
}

double annulus_energy(const VortexConfiguration& a, double rho, int grid,
                      const GreenEvaluator& green) {
    a.validate();
    const TorusGeometry& geom = a.geometry;
    const double hx = geom.l / grid, hy = geom.w / grid;
    if (rho < 4.0 * std::max(hx, hy)) {
        throw ResolutionError("annulus radius under four cells");
    }
    if (rho > a.min_pair_distance() * 0.25 * (1.0 + 1e-9)) {
        throw ResolutionError("annulus radius above min distance / 4");
    }

    auto density = [&](const Vec2& p) {
        const Vec2 j = analytic_current(a, p, green);
        return 0.5 * norm2(j);
    };
    auto signed_dist = [&](const Vec2& p) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec2& c : a.positions) {
            best = std::min(best, geom.distance(p, c));
        }
        return best - rho; // positive outside every disc
    };

    const double cell = hx * hy;
    const double cell_radius = 0.5 * std::hypot(hx, hy);
    double acc = 0.0;
    for (int iy = 0; iy < grid; ++iy) {
        for (int ix = 0; ix < grid; ++ix) {
            const Vec2 c{(ix + 0.5) * hx, (iy + 0.5) * hy};
            const double sd = signed_dist(c);
            if (sd > cell_radius) {
                acc += cell * density(c);
            } else if (sd > -cell_radius) {
                // straddling cell: 16x16 midpoint subsample
                constexpr int S = 16;
                double sub = 0.0;
                for (int sy = 0; sy < S; ++sy) {
                    for (int sx = 0; sx < S; ++sx) {
                        const Vec2 p{c.x + ((sx + 0.5) / S - 0.5) * hx,
                                     c.y + ((sy + 0.5) / S - 0.5) * hy};
                        if (signed_dist(p) > 0.0) sub += density(p);
                    }
                }
                acc += cell * sub / (S * S);
            }
        }
    }
    return acc;
}

std::pair<double, double> hess_pairing_check(const VortexConfiguration& a,
                                             int j, double r, int grid,
                                             const Vec2& nu,
                                             const GreenEvaluator& green) {
    a.validate();
    const TorusGeometry& geom = a.geometry;
    for (int k = 0; k < a.total(); ++k) {
        if (k == j) continue;
        if (geom.distance(a.positions[j], a.positions[k]) < 2.0 * r) {
            throw GeometryError("support ball B_r(a_j) too close to another vortex");
        }
    }

    // C^3 radial cutoff: 1 on [0, 3/4], 7th-order smoothstep down to 0 at 1
    auto smoothstep = [](double t) {
        return t * t * t * t * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
    };
    auto smoothstep_d = [](double t) {
        return t * t * t * (140.0 + t * (-420.0 + t * (420.0 - 140.0 * t)));
    };
    auto smoothstep_dd = [](double t) {
        return t * t * (420.0 + t * (-1680.0 + t * (2100.0 - 840.0 * t)));
    };
    auto chi = [&](double s, double& d1, double& d2) -> double {
        if (s <= 0.75) { d1 = d2 = 0.0; return 1.0; }
        if (s >= 1.0) { d1 = d2 = 0.0; return 0.0; }
        const double t = 4.0 * (1.0 - s);
        d1 = -4.0 * smoothstep_d(t);
        d2 = 16.0 * smoothstep_dd(t);
        return smoothstep(t);
    };

    const Vec2 center = a.positions[j];
    const double hx = geom.l / grid, hy = geom.w / grid;
    const double cell = hx * hy;
    double lhs = 0.0;
    // integrand is supported in B_r(a_j); walk a bounding box around it
    const int ix0 = static_cast<int>(std::floor((center.x - r) / hx)) - 1;
    const int ix1 = static_cast<int>(std::ceil((center.x + r) / hx)) + 1;
    const int iy0 = static_cast<int>(std::floor((center.y - r) / hy)) - 1;
    const int iy1 = static_cast<int>(std::ceil((center.y + r) / hy)) + 1;
    for (int iy = iy0; iy <= iy1; ++iy) {
        for (int ix = ix0; ix <= ix1; ++ix) {
            const Vec2 p{ix * hx, iy * hy};
            const Vec2 d = geom.minimal_image(p - center);
            const double s = norm(d) / r;
            if (s >= 1.0 || s <= 0.0) continue;
            double c1, c2;
            chi(s, c1, c2);
            if (c1 == 0.0 && c2 == 0.0) continue; // Hess eta vanishes where chi flat
            const Vec2 unit = (1.0 / norm(d)) * d;
            const double L = dot(nu, d);
            // Hess eta = chi''/(r^2) u u^T L + chi'/(r |d|) (I - u u^T) L
            //          + chi'/r (u nu^T + nu u^T)
            const double A = c2 / (r * r) * L;
            const double B = c1 / (r * norm(d)) * L;
            const double C = c1 / r;
            const double hxx = A * unit.x * unit.x + B * (1.0 - unit.x * unit.x) +
                               2.0 * C * unit.x * nu.x;
            const double hyy = A * unit.y * unit.y + B * (1.0 - unit.y * unit.y) +
                               2.0 * C * unit.y * nu.y;
            const double hxy = A * unit.x * unit.y - B * unit.x * unit.y +
                               C * (unit.x * nu.y + unit.y * nu.x);
            const Vec2 jh = analytic_current(a, p, green);
            const Vec2 Hj{hxx * jh.x + hxy * jh.y, hxy * jh.x + hyy * jh.y};
            lhs += cell * dot(Hj, symplectic(jh));
        }
    }
    const double rhs = -dot(nu, symplectic(grad_WT(a, j, green)));
    return {lhs, rhs};
}

void write_vxf(const ComplexField& u, std::ostream& os) {
    const char magic[4] = {'V', 'X', 'F', '1'};
    os.write(magic, 4);
    const std::uint32_t mx = static_cast<std::uint32_t>(u.mx);
    const std::uint32_t my = static_cast<std::uint32_t>(u.my);
    os.write(reinterpret_cast<const char*>(&mx), 4);
    os.write(reinterpret_cast<const char*>(&my), 4);
    const double head[4] = {u.geometry.l, u.geometry.w, u.eps, u.time};
    os.write(reinterpret_cast<const char*>(head), sizeof(head));
    os.write(reinterpret_cast<const char*>(u.samples.data()),
             static_cast<std::streamsize>(u.samples.size() * sizeof(cplx)));
}

ComplexField read_vxf(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "VXF1", 4) != 0) {
        throw ConfigError("not a VXF1 field dump");
    }
    std::uint32_t mx = 0, my = 0;
    is.read(reinterpret_cast<char*>(&mx), 4);
    is.read(reinterpret_cast<char*>(&my), 4);
    double head[4];
    is.read(reinterpret_cast<char*>(head), sizeof(head));
    ComplexField u = ComplexField::make(static_cast<int>(mx),
                                        static_cast<int>(my),
                                        {head[0], head[1]}, head[2]);
    u.time = head[3];
    is.read(reinterpret_cast<char*>(u.samples.data()),
            static_cast<std::streamsize>(u.samples.size() * sizeof(cplx)));
    if (!is) throw ConfigError("truncated VXF1 field dump");
    return u;
}

void write_vxf(const ComplexField& u, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open " + path + " for writing");
    write_vxf(u, os);
}

ComplexField read_vxf(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot open " + path);
    return read_vxf(is);
}

} // namespace vtx
