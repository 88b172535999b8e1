#include "vortexlab/nlse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vortexlab/errors.hpp"
#include "vortexlab/kernels.hpp"

namespace vtx {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kBlowupGuard = 10.0;
using cplx = std::complex<double>;
} // namespace

NlseStepper::NlseStepper(int mx, int my, TorusGeometry geometry, double eps,
                         double dt)
    : plan_(static_cast<std::size_t>(mx), static_cast<std::size_t>(my)),
      eps_(eps), dt_(dt) {
    half_kinetic_.resize(static_cast<std::size_t>(mx) * my);
    for (int iy = 0; iy < my; ++iy) {
        const double ky = 2.0 * kPi *
                          static_cast<double>(fft_mode(iy, my)) / geometry.w;
        for (int ix = 0; ix < mx; ++ix) {
            const double kx = 2.0 * kPi *
                              static_cast<double>(fft_mode(ix, mx)) /
                              geometry.l;
            const double phase = (kx * kx + ky * ky) * dt * 0.5;
            half_kinetic_[static_cast<std::size_t>(iy) * mx + ix] =
                cplx(std::cos(phase), std::sin(phase));
        }
    }
}

void NlseStepper::step(ComplexField& u) {
    cplx* data = u.samples.data();
    const std::size_t n = u.samples.size();

    plan_.forward(data);
    kernels::cmul_inplace(data, half_kinetic_.data(), n);
    plan_.inverse(data);

    kernels::phase_rotate_inplace(data, n, dt_ / (eps_ * eps_));

    plan_.forward(data);
    kernels::cmul_inplace(data, half_kinetic_.data(), n);
    plan_.inverse(data);

    u.time += dt_;
}

ComplexField step(const ComplexField& u, const NlseParams& params) {
    NlseStepper stepper(u.mx, u.my, u.geometry, params.eps, params.dt);
    ComplexField out = u;
    stepper.step(out);
    return out;
}

RunReport run(const ComplexField& u0, const NlseParams& params,
              const SnapshotSink& sink) {
    if (std::min(u0.hx(), u0.hy()) > params.eps / 4.0) {
        throw ResolutionError("grid does not resolve the core: need h <= eps/4");
    }

    ComplexField u = u0;
    u.eps = params.eps;
    NlseStepper stepper(u.mx, u.my, u.geometry, params.eps, params.dt);

    RunReport report;
    report.initial = observables(u);
    const double mass0 = report.initial.mass;
    const double energy0 = report.initial.energy;
    const double mom0 = norm(report.initial.momentum);
    const double mom_scale = mom0 > 1e-12 ? mom0 : 1.0;

    auto emit = [&](const ComplexField& f) {
        if (kernels::max_abs2(f.samples.data(), f.samples.size()) >
            kBlowupGuard * kBlowupGuard) {
            throw BlowupDetected("max |u| exceeded 10");
        }
        const Observables obs = observables(f);
        report.max_mass_drift = std::max(
            report.max_mass_drift, std::fabs(obs.mass - mass0) / mass0);
        report.max_energy_drift = std::max(
            report.max_energy_drift,
            std::fabs(obs.energy - energy0) / std::fabs(energy0));
        report.max_momentum_drift = std::max(
            report.max_momentum_drift,
            norm(obs.momentum - report.initial.momentum) / mom_scale);
        ++report.snapshots;
        if (sink) sink(f, obs);
    };

    emit(u);
    const long n_steps =
        static_cast<long>(std::llround(params.t_end / params.dt));
    for (long s = 1; s <= n_steps; ++s) {
        stepper.step(u);
        ++report.steps;
        if (s % params.snapshot_every == 0 || s == n_steps) emit(u);
    }
    return report;
}

} // namespace vtx
