#pragma once

#include <vector>

#include "vortexlab/field.hpp"

namespace vtx {

struct VortexObservation {
    Vec2 position; // inside the fundamental domain
    int degree = 0;
    double t = 0.0;
    double quality = 0.0; // min |u| over the detection cell corners
};

struct VortexPaths {
    enum class Status { complete, lost };

    std::vector<std::vector<VortexObservation>> tracks; // one per initial vortex
    std::vector<double> times;
    Status status = Status::complete;
    double lost_at = 0.0;

    /// Largest per-step displacement observed over all tracks.
    double max_step() const;
};

/// Plaquette detector: sums the wrapped phase differences around each grid
/// cell; cells with +-2 pi winding yield one observation, with the position
/// refined by the bilinear zero crossing of Re u and Im u inside the cell.
std::vector<VortexObservation> detect(const ComplexField& u);

/// Greedy nearest-neighbor assignment of per-snapshot detections to the
/// vortices of a0 under the torus metric; degrees must match and per-step
/// displacements must stay below max_jump, otherwise tracking stops with
/// status lost at that snapshot time (tracks keep everything before it).
VortexPaths track(const std::vector<std::vector<VortexObservation>>& snapshots,
                  const std::vector<double>& times,
                  const VortexConfiguration& a0, double max_jump);

/// Throws TrackingLost(lost_at) when the paths are incomplete.
void ensure_complete(const VortexPaths& paths);

} // namespace vtx
