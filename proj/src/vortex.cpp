#include "vortexlab/vortex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vortexlab/errors.hpp"

namespace vtx {

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

double warg(const cplx& a, const cplx& b) { return std::arg(a * std::conj(b)); }

// Zero crossing of the bilinear interpolant of (Re u, Im u) inside one cell,
// by a clamped 2x2 Newton iteration from the cell center.
Vec2 refine_zero(const cplx& u00, const cplx& u10, const cplx& u11,
                 const cplx& u01) {
    double s = 0.5, t = 0.5;
    for (int it = 0; it < 12; ++it) {
        const cplx u = (1 - s) * (1 - t) * u00 + s * (1 - t) * u10 +
                       (1 - s) * t * u01 + s * t * u11;
        const cplx us = (1 - t) * (u10 - u00) + t * (u11 - u01);
        const cplx ut = (1 - s) * (u01 - u00) + s * (u11 - u10);
        const double det = us.real() * ut.imag() - ut.real() * us.imag();
        if (std::fabs(det) < 1e-300) break;
        const double ds = (u.real() * ut.imag() - ut.real() * u.imag()) / det;
        const double dt = (us.real() * u.imag() - u.real() * us.imag()) / det;
        s = std::clamp(s - ds, 0.0, 1.0);
        t = std::clamp(t - dt, 0.0, 1.0);
    }
    return {s, t};
}

} // namespace

double VortexPaths::max_step() const {
    double m = 0.0;
    for (const auto& track : tracks) {
        for (std::size_t i = 1; i < track.size(); ++i) {
            // displacement on the torus is what the caller cares about; the
            // geometry is not stored here so use the raw gap, which callers
            // keep small via max_jump anyway
            m = std::max(m, norm(track[i].position - track[i - 1].position));
        }
    }
    return m;
}

std::vector<VortexObservation> detect(const ComplexField& u) {
    std::vector<VortexObservation> out;
    for (int iy = 0; iy < u.my; ++iy) {
        for (int ix = 0; ix < u.mx; ++ix) {
            const cplx u00 = u.at(ix, iy);
            const cplx u10 = u.at(ix + 1, iy);
            const cplx u11 = u.at(ix + 1, iy + 1);
            const cplx u01 = u.at(ix, iy + 1);
            const double winding = warg(u10, u00) + warg(u11, u10) +
                                   warg(u01, u11) + warg(u00, u01);
            if (std::fabs(winding) < kPi) continue; // quantized: 0 or +-2 pi
            VortexObservation obs;
            obs.degree = winding > 0.0 ? 1 : -1;
            const Vec2 st = refine_zero(u00, u10, u11, u01);
            obs.position = u.geometry.wrap(
                {(ix + st.x) * u.hx(), (iy + st.y) * u.hy()});
            obs.t = u.time;
            obs.quality = std::min(std::min(std::abs(u00), std::abs(u10)),
                                   std::min(std::abs(u11), std::abs(u01)));
            out.push_back(obs);
        }
    }
    return out;
}

VortexPaths track(const std::vector<std::vector<VortexObservation>>& snapshots,
                  const std::vector<double>& times,
                  const VortexConfiguration& a0, double max_jump) {
    VortexPaths paths;
    paths.times = times;
    const std::size_t m = a0.positions.size();
    paths.tracks.resize(m);

    std::vector<Vec2> current(m);
    for (std::size_t j = 0; j < m; ++j) {
        current[j] = a0.geometry.wrap(a0.positions[j]);
    }

    for (std::size_t snap = 0; snap < snapshots.size(); ++snap) {
        const auto& obs = snapshots[snap];
        // all candidate (vortex, observation) pairs sorted by distance
        struct Cand {
            double d;
            std::size_t j, o;
        };
        std::vector<Cand> cands;
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t o = 0; o < obs.size(); ++o) {
                if (obs[o].degree != a0.degrees[j]) continue;
                const double d = a0.geometry.distance(current[j], obs[o].position);
                if (d <= max_jump) cands.push_back({d, j, o});
            }
        }
        std::sort(cands.begin(), cands.end(),
                  [](const Cand& a, const Cand& b) { return a.d < b.d; });

        std::vector<int> pick(m, -1);
        std::vector<char> used(obs.size(), 0);
        std::size_t assigned = 0;
        for (const Cand& c : cands) {
            if (pick[c.j] >= 0 || used[c.o]) continue;
            pick[c.j] = static_cast<int>(c.o);
            used[c.o] = 1;
            ++assigned;
        }
        if (assigned < m) {
            paths.status = VortexPaths::Status::lost;
            paths.lost_at = times[snap];
            paths.times.resize(snap);
            return paths; // tracks hold everything up to the failure
        }
        for (std::size_t j = 0; j < m; ++j) {
            paths.tracks[j].push_back(obs[static_cast<std::size_t>(pick[j])]);
            current[j] = paths.tracks[j].back().position;
        }
    }
    return paths;
}

void ensure_complete(const VortexPaths& paths) {
    if (paths.status == VortexPaths::Status::lost) {
        throw TrackingLost(paths.lost_at,
                           "vortex tracking lost at t = " +
                               std::to_string(paths.lost_at));
    }
}

} // namespace vtx
