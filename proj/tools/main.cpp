// Command-line front end: desk-scale experiments for quantized-vortex
// dynamics on the torus (periodic Green tables, reduced-law integration,
// NLSE runs, vortex tracking, and the PDE-vs-ODE comparison harness).

#include <cstdio>
#include <cstdlib>
#include <cxxabi.h>
#include <memory>
#include <string>
#include <typeinfo>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vortexlab/errors.hpp"
#include "vortexlab/kernels.hpp"
#include "vortexlab/runner.hpp"

namespace {

using nlohmann::json;

vtx::TorusGeometry parse_geometry(const std::string& spec) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos) {
        throw vtx::ConfigError("--geometry expects l,w");
    }
    return {std::stod(spec.substr(0, comma)), std::stod(spec.substr(comma + 1))};
}

std::string error_kind(const std::exception& e) {
    int status = 0;
    std::unique_ptr<char, void (*)(void*)> demangled(
        abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status),
        std::free);
    std::string name = status == 0 ? demangled.get() : typeid(e).name();
    const std::size_t colon = name.rfind("::");
    return colon == std::string::npos ? name : name.substr(colon + 2);
}

std::vector<double> parse_ladder(const std::string& spec) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        out.push_back(std::stod(spec.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vortexlab: quantized-vortex dynamics on the torus"};
    app.require_subcommand(1);

    std::string config_path, out_path, geometry_spec = "1,1", ladder_spec;
    int threads = 1, grid = 512, profile_nodes = 4096;
    bool verbose = false;
    double t_end_n1 = 0.1, t_end_n2 = 0.2;
    std::string in_dir;
    double max_jump = -1.0;

    app.add_option("--threads", threads, "worker threads for independent runs")
        ->capture_default_str();
    app.add_flag("--verbose", verbose, "chatty progress output");

    auto* green_cmd = app.add_subcommand("green-table",
                                         "periodic Green's function table");
    green_cmd->add_option("--geometry", geometry_spec, "torus periods l,w")
        ->capture_default_str();
    green_cmd->add_option("--grid", grid, "samples per side")->capture_default_str();
    green_cmd->add_option("--out", out_path, "output CSV")->required();

    auto* gamma_cmd = app.add_subcommand("gamma", "core-energy constant");
    gamma_cmd->add_option("--ladder", ladder_spec, "decreasing eps values")
        ->default_val("0.1,0.05,0.025");
    gamma_cmd->add_option("--nodes", profile_nodes, "radial mesh nodes")
        ->capture_default_str();
    gamma_cmd->add_option("--out", out_path, "output JSON")->required();

    auto* rdl_cmd = app.add_subcommand("rdl-run", "integrate the reduced law");
    rdl_cmd->add_option("--config", config_path, "run configuration")->required();
    rdl_cmd->add_option("--out", out_path, "trajectory CSV")->required();

    auto* fb_cmd = app.add_subcommand("field-build", "construct a field dump");
    fb_cmd->add_option("--config", config_path)->required();
    fb_cmd->add_option("--out", out_path, "output VXF1 file")->required();

    auto* fs_cmd = app.add_subcommand("field-stats", "observables of a dump");
    fs_cmd->add_option("--in", in_dir, "VXF1 file")->required();

    auto* nlse_cmd = app.add_subcommand("nlse-run", "time-splitting NLSE run");
    nlse_cmd->add_option("--config", config_path)->required();
    nlse_cmd->add_option("--out", out_path, "output directory")->required();

    auto* track_cmd = app.add_subcommand("track", "track vortices in snapshots");
    track_cmd->add_option("--in", in_dir, "snapshot directory")->required();
    track_cmd->add_option("--out", out_path, "paths CSV")->required();
    track_cmd->add_option("--max-jump", max_jump,
                          "per-snapshot displacement bound");

    auto* cmp_cmd = app.add_subcommand("compare", "PDE vs reduced-law harness");
    cmp_cmd->add_option("--config", config_path)->required();
    cmp_cmd->add_option("--out", out_path, "report JSON")->required();

    auto* fig_cmd = app.add_subcommand("figures", "captioned scenario data");
    fig_cmd->add_option("--out", out_path, "output directory")->required();
    fig_cmd->add_option("--t-end-dipole", t_end_n1)->capture_default_str();
    fig_cmd->add_option("--t-end-quad", t_end_n2)->capture_default_str();

    auto* self_cmd = app.add_subcommand("selftest", "fast smoke checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verbose) {
            std::fprintf(stderr, "simd backend: %s\n",
                         vtx::kernels::backend_name(vtx::kernels::active()).c_str());
        }
        if (green_cmd->parsed()) {
            vtx::runner::green_table(parse_geometry(geometry_spec), grid,
                                     out_path);
        } else if (gamma_cmd->parsed()) {
            const auto result = vtx::runner::gamma_run(
                parse_ladder(ladder_spec), profile_nodes, out_path);
            std::printf("gamma = %.10f\n", result.constant.gamma);
        } else if (rdl_cmd->parsed()) {
            const auto result = vtx::runner::rdl_run(
                vtx::Config::parse_file(config_path), out_path);
            json summary;
            summary["rows"] = result.trajectory.times.size();
            summary["status"] =
                result.trajectory.status ==
                        vtx::ReducedTrajectory::Status::collided
                    ? "collided"
                    : "completed";
            if (const auto t = collision_time(result.trajectory)) {
                summary["collision_time"] = *t;
            }
            const auto& last = result.trajectory.integrals.back();
            summary["W_T"] = last.wt;
            summary["q"] = {last.q.x, last.q.y};
            summary["xi"] = last.xi;
            std::printf("%s\n", summary.dump(2).c_str());
        } else if (fb_cmd->parsed()) {
            vtx::runner::field_build(vtx::Config::parse_file(config_path),
                                     out_path);
        } else if (fs_cmd->parsed()) {
            std::printf("%s\n", vtx::runner::field_stats(in_dir).c_str());
        } else if (nlse_cmd->parsed()) {
            const auto result = vtx::runner::nlse_run(
                vtx::Config::parse_file(config_path), out_path);
            json summary;
            summary["steps"] = result.report.steps;
            summary["snapshots"] = result.report.snapshots;
            summary["mass_drift"] = result.report.max_mass_drift;
            summary["momentum_drift"] = result.report.max_momentum_drift;
            summary["energy_drift"] = result.report.max_energy_drift;
            std::printf("%s\n", summary.dump(2).c_str());
        } else if (track_cmd->parsed()) {
            vtx::runner::track_run(in_dir, out_path,
                                   max_jump > 0.0
                                       ? std::optional<double>(max_jump)
                                       : std::nullopt);
        } else if (cmp_cmd->parsed()) {
            const auto report = vtx::runner::compare(
                vtx::Config::parse_file(config_path), out_path, threads);
            std::printf("%s\n", vtx::runner::comparison_to_json(report).c_str());
            if (!report.err_strictly_decreasing) return 2;
        } else if (fig_cmd->parsed()) {
            vtx::runner::figures(out_path, t_end_n1, t_end_n2);
        } else if (self_cmd->parsed()) {
            const int failures = vtx::runner::selftest(true);
            if (failures > 0) return 1;
        }
    } catch (const std::exception& e) {
        json err;
        err["error"] = {{"type", error_kind(e)}, {"message", e.what()}};
        std::printf("%s\n", err.dump().c_str());
        return 1;
    }
    return 0;
}
