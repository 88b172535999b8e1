#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "vortexlab/core_profile.hpp"
#include "vortexlab/geometry.hpp"
#include "vortexlab/renorm.hpp"

namespace vtx {

/// Uniform periodic grid of complex samples, row-major with x fastest:
/// samples[iy * mx + ix] lives at ((ix/mx) l, (iy/my) w).
struct ComplexField {
    std::vector<std::complex<double>> samples;
    int mx = 0, my = 0;
    TorusGeometry geometry;
    double eps = 0.0; // 0 for eps-free fields like the harmonic map
    double time = 0.0;

    static ComplexField make(int mx, int my, TorusGeometry geometry,
                             double eps = 0.0);

    double hx() const { return geometry.l / mx; }
    double hy() const { return geometry.w / my; }
    std::size_t index(int ix, int iy) const {
        const int i = ((ix % mx) + mx) % mx;
        const int j = ((iy % my) + my) % my;
        return static_cast<std::size_t>(j) * mx + i;
    }
    std::complex<double>& at(int ix, int iy) { return samples[index(ix, iy)]; }
    const std::complex<double>& at(int ix, int iy) const {
        return samples[index(ix, iy)];
    }
    Vec2 node(int ix, int iy) const {
        return {geometry.l * ix / static_cast<double>(mx),
                geometry.w * iy / static_cast<double>(my)};
    }
};

struct DensityField {
    enum class Kind { current, energy, jacobian };
    Kind kind;
    int mx = 0, my = 0;
    std::vector<Vec2> vec;    // current
    std::vector<double> sca;  // energy / jacobian
};

struct DensitySet {
    DensityField current, energy, jacobian;
};

struct Observables {
    double mass = 0.0;
    Vec2 momentum;
    double energy = 0.0;
};

/// Canonical harmonic map H(x; a): unit modulus everywhere, winding d_j
/// around a_j, current -J sum d_j grad F(x - a_j) + 2 pi q(a)/(l w).  Built
/// as a product of dipole factors theta1(pi(z - z+))/theta1(pi(z - z-))
/// normalized to modulus one, times the momentum phase exp(-2 pi i
/// (x+ - x-) y/(l w)) per pair.  Vortices that would land on grid nodes are
/// nudged half a cell first.
ComplexField harmonic_map(const VortexConfiguration& a, int mx, int my);

/// Pointwise H(p; a) from the same closed form, no grid nudging (used by the
/// periodicity-seam and cross-validation checks).
std::complex<double> harmonic_map_value(const VortexConfiguration& a,
                                        const Vec2& p);

/// Closed-form j(H) at a point, evaluated through the Green evaluator.
Vec2 analytic_current(const VortexConfiguration& a, const Vec2& p,
                      const GreenEvaluator& green);

/// Well-prepared initial datum u0 = rho(x) H(x; a) with
/// rho = prod_j f(|x - a_j|_torus / eps) for the given radial core profile.
ComplexField build_initial_data(const VortexConfiguration& a, double eps,
                                int mx, int my, const CoreProfile& profile);

/// Current, energy and Jacobian densities from Fourier-spectral gradients.
DensitySet densities(const ComplexField& u);

/// Trapezoidal (= spectral for smooth periodic integrands) quadratures of
/// |u|^2, j(u) and e(u).
Observables observables(const ComplexField& u);

/// Discrete current of a unimodular field from wrapped phase differences;
/// fourth-order local stencil, unpolluted by the core singularities.
DensityField phase_current(const ComplexField& u);

/// Trapezoidal quadrature of j(H) over the whole torus.  The odd local
/// model d_j J (x - a_j)/|x - a_j|^2 (smoothly cut off) is subtracted at
/// each vortex before summing and integrates to zero exactly, so the
/// remaining integrand is C^3 and the sum converges fast to 2 pi q(a).
Vec2 integrate_current(const VortexConfiguration& a, const GreenEvaluator& green,
                       int grid);

/// Quadrature of e(H) over the torus minus the discs B_rho(a_j).  Cells cut
/// by a disc boundary are subsampled 16x16. Expect
/// 2 N pi log(1/rho) + W_T(a) + O(rho^2).
double annulus_energy(const VortexConfiguration& a, double rho, int grid,
                      const GreenEvaluator& green);

/// Field-level check of the pairing identity
///   int <Hess(eta) j(H), J j(H)> dx = -grad eta(a_j) . (J grad_WT(a)).
/// eta is nu.(x - a_j) inside B_{3r/4}(a_j) with a C^3 radial cutoff
/// vanishing outside B_r.  Returns (quadrature lhs, closed-form rhs).
std::pair<double, double> hess_pairing_check(const VortexConfiguration& a,
                                             int j, double r, int grid,
                                             const Vec2& nu,
                                             const GreenEvaluator& green);

/// VXF1 field dump: magic "VXF1", u32 mx, u32 my, f64 l, w, eps, time
/// (little-endian), then mx*my interleaved (re, im) f64 row-major.
void write_vxf(const ComplexField& u, const std::string& path);
ComplexField read_vxf(const std::string& path);
void write_vxf(const ComplexField& u, std::ostream& os);
ComplexField read_vxf(std::istream& is);

} // namespace vtx
