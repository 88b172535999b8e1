#pragma once

#include <functional>

#include "vortexlab/fft.hpp"
#include "vortexlab/field.hpp"

namespace vtx {

struct NlseParams {
    double eps = 0.1;
    double dt = 1e-5;
    double t_end = 0.01;
    int snapshot_every = 50;
};

struct RunReport {
    Observables initial;
    double max_mass_drift = 0.0;     // relative
    double max_momentum_drift = 0.0; // relative to |Q(0)| (absolute if ~0)
    double max_energy_drift = 0.0;   // relative
    long steps = 0;
    int snapshots = 0;
};

/// Strang-split spectral stepper for
///   i u_t - Delta u + (|u|^2 - 1) u / eps^2 = 0:
/// half kinetic (mode k picks up exp(i |2 pi k~|^2 dt/2), k~ = (kx/l, ky/w)),
/// full nonlinear phase u <- u exp(i dt (|u|^2 - 1)/eps^2), half kinetic.
/// Each sub-flow is an exact isometry of the discrete L^2 norm.
class NlseStepper {
public:
    NlseStepper(int mx, int my, TorusGeometry geometry, double eps, double dt);

    void step(ComplexField& u);

private:
    Fft2D plan_;
    std::vector<std::complex<double>> half_kinetic_;
    double eps_, dt_;
};

/// One Strang step (convenience wrapper; builds the multiplier table).
ComplexField step(const ComplexField& u, const NlseParams& params);

using SnapshotSink =
    std::function<void(const ComplexField&, const Observables&)>;

/// Time-steps u0 to t_end, emitting a snapshot (field + observables) every
/// snapshot_every steps, the initial and the final state included.  Throws
/// BlowupDetected if max |u| exceeds 10 at a snapshot.
RunReport run(const ComplexField& u0, const NlseParams& params,
              const SnapshotSink& sink);

} // namespace vtx
