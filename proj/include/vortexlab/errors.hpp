#pragma once

#include <stdexcept>
#include <string>

namespace vtx {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation requested at (or too close to) a lattice point where F diverges.
struct SingularPoint : Error { using Error::Error; };

/// Two vortices closer than the module's collision guard.
struct CollidedConfiguration : Error { using Error::Error; };

/// A reduced-system F-argument hit the singular set.
struct SingularArgument : Error { using Error::Error; };

/// ODE velocity blew past the sanity bound (near-collision under-resolution).
struct StepExploded : Error { using Error::Error; };

/// Operation only defined for a single dipole (N = 1).
struct WrongArity : Error { using Error::Error; };

/// Grid too coarse for the requested core size or disc radius.
struct ResolutionError : Error { using Error::Error; };

/// Support/containment precondition on a test-function ball failed.
struct GeometryError : Error { using Error::Error; };

/// Newton iteration failed to reach the residual target.
struct NoConvergence : Error { using Error::Error; };

/// NLSE amplitude grew past the blow-up guard.
struct BlowupDetected : Error { using Error::Error; };

/// Vortex-path assignment failed at time t.
struct TrackingLost : Error {
    double t;
    explicit TrackingLost(double t_, const std::string& what_)
        : Error(what_), t(t_) {}
};

/// Malformed or unknown configuration input.
struct ConfigError : Error { using Error::Error; };

} // namespace vtx
