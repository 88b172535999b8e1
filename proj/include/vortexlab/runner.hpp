#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vortexlab/config.hpp"
#include "vortexlab/core_profile.hpp"
#include "vortexlab/field.hpp"
#include "vortexlab/nlse.hpp"
#include "vortexlab/rdl.hpp"
#include "vortexlab/vortex.hpp"

// Orchestration shared by the CLI subcommands and the acceptance suite.

namespace vtx::runner {

/// geometry.l/w + vortices = [[x, y, d], ...] -> validated configuration.
VortexConfiguration configuration_from(const Config& cfg);

/// Q0 = "auto" (default) or [qx, qy].
Vec2 q0_from(const Config& cfg, const VortexConfiguration& a);

struct RdlRunResult {
    ReducedTrajectory trajectory;
    std::string csv_path;
};

RdlRunResult rdl_run(const Config& cfg, const std::string& out_csv);

void green_table(TorusGeometry geometry, int grid, const std::string& out_csv);

struct GammaResult {
    CoreConstant constant;
    std::vector<double> I_values;
    std::vector<double> residuals;
};

GammaResult gamma_run(const std::vector<double>& ladder, int nodes,
                      const std::string& out_json);

void field_build(const Config& cfg, const std::string& out_vxf);
std::string field_stats(const std::string& vxf_path); // JSON text

struct NlseRunResult {
    RunReport report;
    std::vector<double> snapshot_times;
    std::vector<std::string> snapshot_files;
};

NlseRunResult nlse_run(const Config& cfg, const std::string& out_dir);

void track_run(const std::string& in_dir, const std::string& out_csv,
               std::optional<double> max_jump = std::nullopt);

struct CompareEntry {
    double eps = 0.0;
    int grid = 0;
    double err = 0.0;        // max over snapshots of max_j torus distance
    double t_compared = 0.0; // horizon actually compared (may be truncated)
    bool lost = false;
    Vec2 tracked_velocity;   // least-squares fit of the first tracked vortex
    Vec2 ode_velocity;       // reduced-law dipole velocity (N = 1 scenarios)
};

struct ComparisonReport {
    std::vector<CompareEntry> entries;
    bool err_strictly_decreasing = false;
    double direction_error_deg = 0.0; // finest eps vs dipole velocity
    double magnitude_rel_error = 0.0;
};

ComparisonReport compare(const Config& cfg, const std::string& out_json,
                         int threads = 1);

/// Reduced-law trajectory data for the six captioned scenarios plus a JSON
/// manifest (files, labels, winding markers).
void figures(const std::string& out_dir, double t_end_n1, double t_end_n2);

/// Fast end-to-end smoke checks; returns the number of failures.
int selftest(bool verbose);

std::string comparison_to_json(const ComparisonReport& report);

} // namespace vtx::runner
