#include "vortexlab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "vortexlab/csv.hpp"
#include "vortexlab/errors.hpp"

namespace vtx::runner {

namespace {
constexpr double kPi = std::numbers::pi;
namespace fs = std::filesystem;
using nlohmann::json;

TorusGeometry geometry_from(const Config& cfg) {
    return {cfg.number_or("geometry.l", 1.0), cfg.number_or("geometry.w", 1.0)};
}

CoreProfile profile_for(double eps, const std::string& kind, int nodes) {
    if (kind == "tanh") return CoreProfile::tanh_profile(eps);
    if (kind == "solved") return solve_profile(eps, nodes);
    throw ConfigError("profile must be \"solved\" or \"tanh\"");
}

std::vector<double> flatten_state(double t, const std::vector<Vec2>& pos,
                                  const IntegralRecord& rec) {
    std::vector<double> row;
    row.reserve(2 * pos.size() + 6);
    row.push_back(t);
    for (const Vec2& p : pos) {
        row.push_back(p.x);
        row.push_back(p.y);
    }
    row.push_back(rec.q.x);
    row.push_back(rec.q.y);
    row.push_back(rec.wt);
    row.push_back(rec.xi);
    row.push_back(rec.min_dist);
    return row;
}

std::vector<std::string> trajectory_header(int total) {
    std::vector<std::string> h{"t"};
    for (int j = 1; j <= total; ++j) {
        h.push_back("x" + std::to_string(j));
        h.push_back("y" + std::to_string(j));
    }
    h.insert(h.end(), {"qx", "qy", "WT", "xi", "min_dist"});
    return h;
}

/// Unwrap a tracked path into a continuous lift for velocity fitting.
std::vector<Vec2> unwrap_path(const std::vector<VortexObservation>& track,
                              const TorusGeometry& geom) {
    std::vector<Vec2> lift;
    lift.reserve(track.size());
    for (const VortexObservation& obs : track) {
        if (lift.empty()) {
            lift.push_back(obs.position);
        } else {
            lift.push_back(lift.back() +
                           geom.minimal_image(obs.position - lift.back()));
        }
    }
    return lift;
}

Vec2 fit_velocity(const std::vector<double>& times,
                  const std::vector<Vec2>& lift) {
    const std::size_t n = std::min(times.size(), lift.size());
    double tbar = 0.0;
    Vec2 pbar{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        tbar += times[i];
        pbar += lift[i];
    }
    tbar /= static_cast<double>(n);
    pbar *= 1.0 / static_cast<double>(n);
    double tt = 0.0;
    Vec2 tp{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = times[i] - tbar;
        tt += dt * dt;
        tp += dt * (lift[i] - pbar);
    }
    return (1.0 / tt) * tp;
}

} // namespace

VortexConfiguration configuration_from(const Config& cfg) {
    const auto rows = cfg.table("vortices");
    VortexConfiguration a;
    a.geometry = geometry_from(cfg);
    std::vector<Vec2> plus, minus;
    for (const auto& row : rows) {
        if (row.size() != 3) {
            throw ConfigError("vortices rows must be [x, y, d]");
        }
        if (row[2] == 1.0) {
            plus.push_back({row[0], row[1]});
        } else if (row[2] == -1.0) {
            minus.push_back({row[0], row[1]});
        } else {
            throw ConfigError("vortex degree must be +1 or -1");
        }
    }
    return make_configuration(a.geometry, std::move(plus), std::move(minus));
}

Vec2 q0_from(const Config& cfg, const VortexConfiguration& a) {
    if (!cfg.has("Q0")) return Q0_of(a);
    if (const std::string* s =
            std::get_if<std::string>(&cfg.entries().at("Q0"))) {
        if (*s == "auto") return Q0_of(a);
        throw ConfigError("Q0 must be \"auto\" or [qx, qy]");
    }
    const auto v = cfg.list("Q0");
    if (v.size() != 2) throw ConfigError("Q0 must be \"auto\" or [qx, qy]");
    return {v[0], v[1]};
}

RdlRunResult rdl_run(const Config& cfg, const std::string& out_csv) {
    cfg.require_known({"geometry.l", "geometry.w", "vortices", "Q0", "dt",
                       "t_end", "stop_dist", "record_every"});
    const VortexConfiguration a0 = configuration_from(cfg);
    const Vec2 Q0 = q0_from(cfg, a0);
    IntegratorParams params;
    params.dt = cfg.number_or("dt", 1e-4);
    params.t_end = cfg.number_or("t_end", 1.0);
    params.stop_dist = cfg.number_or("stop_dist", 1e-3);
    params.record_every = static_cast<int>(cfg.integer_or("record_every", 10));

    const GreenEvaluator green(a0.geometry);
    ReducedTrajectory traj = integrate(a0, Q0, params, green);

    CsvWriter csv(out_csv, trajectory_header(a0.total()));
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        csv.row(flatten_state(traj.times[i], traj.states[i], traj.integrals[i]));
    }
    return {std::move(traj), out_csv};
}

void green_table(TorusGeometry geometry, int grid, const std::string& out_csv) {
    const GreenEvaluator green(geometry);
    CsvWriter csv(out_csv, {"x", "y", "F", "dF_dx", "dF_dy"});
    for (int j = 0; j < grid; ++j) {
        for (int i = 0; i < grid; ++i) {
            const Vec2 p{geometry.l * i / static_cast<double>(grid),
                         geometry.w * j / static_cast<double>(grid)};
            if (norm(geometry.minimal_image(p)) < 1e-9) continue; // skip origin
            const Vec2 g = green.eval_gradF(p);
            csv.row({p.x, p.y, green.eval_F(p), g.x, g.y});
        }
    }
}

GammaResult gamma_run(const std::vector<double>& ladder, int nodes,
                      const std::string& out_json) {
    GammaResult result;
    for (const double eps : ladder) {
        const CoreProfile p = solve_profile(eps, nodes);
        result.I_values.push_back(p.energy);
        result.residuals.push_back(p.newton_residual);
    }
    result.constant = estimate_gamma(ladder, nodes);

    if (!out_json.empty()) {
        json out;
        out["gamma"] = result.constant.gamma;
        out["ladder"] = ladder;
        out["I_values"] = result.I_values;
        out["residuals"] = result.residuals;
        std::ofstream os(out_json);
        if (!os) throw ConfigError("cannot open " + out_json);
        os << out.dump(2) << '\n';
    }
    return result;
}

void field_build(const Config& cfg, const std::string& out_vxf) {
    cfg.require_known({"geometry.l", "geometry.w", "vortices", "field.kind",
                       "field.eps", "field.grid", "field.profile",
                       "field.profile_nodes"});
    const VortexConfiguration a = configuration_from(cfg);
    const int grid = static_cast<int>(cfg.integer_or("field.grid", 256));
    const std::string kind = cfg.text_or("field.kind", "initial");
    if (kind == "harmonic") {
        write_vxf(harmonic_map(a, grid, grid), out_vxf);
        return;
    }
    if (kind != "initial") throw ConfigError("field.kind must be initial|harmonic");
    const double eps = cfg.number("field.eps");
    const CoreProfile prof =
        profile_for(eps, cfg.text_or("field.profile", "solved"),
                    static_cast<int>(cfg.integer_or("field.profile_nodes", 4096)));
    write_vxf(build_initial_data(a, eps, grid, grid, prof), out_vxf);
}

std::string field_stats(const std::string& vxf_path) {
    const ComplexField u = read_vxf(vxf_path);
    const Observables obs = observables(u);
    json out;
    out["grid"] = {u.mx, u.my};
    out["geometry"] = {{"l", u.geometry.l}, {"w", u.geometry.w}};
    out["eps"] = u.eps;
    out["time"] = u.time;
    out["mass"] = obs.mass;
    out["momentum"] = {obs.momentum.x, obs.momentum.y};
    out["energy"] = obs.energy;
    json dets = json::array();
    for (const VortexObservation& v : detect(u)) {
        dets.push_back({{"x", v.position.x},
                        {"y", v.position.y},
                        {"degree", v.degree},
                        {"quality", v.quality}});
    }
    out["vortices"] = dets;
    return out.dump(2);
}

NlseRunResult nlse_run(const Config& cfg, const std::string& out_dir) {
    cfg.require_known({"geometry.l", "geometry.w", "vortices", "nlse.eps",
                       "nlse.grid", "nlse.dt", "nlse.t_end",
                       "nlse.snapshot_every", "nlse.profile",
                       "nlse.profile_nodes"});
    const VortexConfiguration a = configuration_from(cfg);
    NlseParams params;
    params.eps = cfg.number("nlse.eps");
    params.dt = cfg.number_or("nlse.dt", 1e-5);
    params.t_end = cfg.number_or("nlse.t_end", 0.01);
    params.snapshot_every =
        static_cast<int>(cfg.integer_or("nlse.snapshot_every", 50));
    const int grid = static_cast<int>(cfg.integer_or("nlse.grid", 256));
    const CoreProfile prof =
        profile_for(params.eps, cfg.text_or("nlse.profile", "solved"),
                    static_cast<int>(cfg.integer_or("nlse.profile_nodes", 4096)));

    fs::create_directories(out_dir);
    const ComplexField u0 = build_initial_data(a, params.eps, grid, grid, prof);

    NlseRunResult result;
    CsvWriter csv(out_dir + "/observables.csv", {"t", "mass", "Qx", "Qy", "E"});
    int index = 0;
    result.report = run(u0, params, [&](const ComplexField& f,
                                        const Observables& obs) {
        char name[32];
        std::snprintf(name, sizeof(name), "snap_%06d.vxf", index++);
        const std::string path = out_dir + "/" + name;
        write_vxf(f, path);
        result.snapshot_files.push_back(path);
        result.snapshot_times.push_back(f.time);
        csv.row({f.time, obs.mass, obs.momentum.x, obs.momentum.y, obs.energy});
    });
    return result;
}

void track_run(const std::string& in_dir, const std::string& out_csv,
               std::optional<double> max_jump) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(in_dir)) {
        if (entry.path().extension() == ".vxf") {
            files.push_back(entry.path().string());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ConfigError("no .vxf snapshots in " + in_dir);

    std::vector<std::vector<VortexObservation>> snaps;
    std::vector<double> times;
    TorusGeometry geom;
    double h = 0.0;
    for (const std::string& f : files) {
        const ComplexField u = read_vxf(f);
        geom = u.geometry;
        h = std::max(u.hx(), u.hy());
        snaps.push_back(detect(u));
        times.push_back(u.time);
    }

    // initial configuration from the first snapshot's detections
    std::vector<Vec2> plus, minus;
    for (const VortexObservation& obs : snaps.front()) {
        (obs.degree > 0 ? plus : minus).push_back(obs.position);
    }
    const VortexConfiguration a0 =
        make_configuration(geom, std::move(plus), std::move(minus));

    const double dt_snap =
        times.size() > 1 ? times[1] - times[0] : 0.0;
    const double jump = max_jump.value_or(5.0 * h + 20.0 * dt_snap);
    const VortexPaths paths = track(snaps, times, a0, jump);

    std::vector<std::string> header{"t"};
    for (int j = 1; j <= a0.total(); ++j) {
        header.push_back("x" + std::to_string(j));
        header.push_back("y" + std::to_string(j));
        header.push_back("d" + std::to_string(j));
    }
    header.push_back("status");
    CsvWriter csv(out_csv, header);
    for (std::size_t i = 0; i < paths.times.size(); ++i) {
        std::vector<double> row{paths.times[i]};
        for (int j = 0; j < a0.total(); ++j) {
            const VortexObservation& obs = paths.tracks[static_cast<std::size_t>(j)][i];
            row.push_back(obs.position.x);
            row.push_back(obs.position.y);
            row.push_back(obs.degree);
        }
        csv.row_with_label(row, "ok");
    }
    if (paths.status == VortexPaths::Status::lost) {
        csv.row_with_label({paths.lost_at}, "lost");
    }
}

ComparisonReport compare(const Config& cfg, const std::string& out_json,
                         int threads) {
    cfg.require_known({"geometry.l", "geometry.w", "vortices", "Q0",
                       "compare.eps", "compare.grid", "compare.t_end",
                       "compare.dt_pde", "compare.snapshot_every",
                       "compare.dt_ode", "compare.profile",
                       "compare.profile_nodes"});
    const VortexConfiguration a0 = configuration_from(cfg);
    const Vec2 Q0 = q0_from(cfg, a0);
    const std::vector<double> ladder = cfg.list("compare.eps");
    std::vector<double> grid_list = cfg.list("compare.grid");
    if (grid_list.size() != ladder.size()) {
        throw ConfigError("compare.grid must pair with compare.eps");
    }
    const double t_end = cfg.number_or("compare.t_end", 0.01);
    const double dt_pde = cfg.number_or("compare.dt_pde", 1e-5);
    const int snapshot_every =
        static_cast<int>(cfg.integer_or("compare.snapshot_every", 50));
    const double dt_ode = cfg.number_or("compare.dt_ode", 1e-4);
    const std::string profile_kind = cfg.text_or("compare.profile", "solved");
    const int profile_nodes =
        static_cast<int>(cfg.integer_or("compare.profile_nodes", 4096));

    const double dt_snap = dt_pde * snapshot_every;
    const int ode_record = static_cast<int>(std::llround(dt_snap / dt_ode));
    if (std::fabs(ode_record * dt_ode - dt_snap) > 1e-12) {
        throw ConfigError("snapshot interval must be a multiple of dt_ode");
    }

    // Reduced-law reference, one integration shared by every eps
    const GreenEvaluator green(a0.geometry);
    IntegratorParams ode;
    ode.dt = dt_ode;
    ode.t_end = t_end;
    ode.stop_dist = 1e-6;
    ode.record_every = ode_record;
    const ReducedTrajectory ref = integrate(a0, Q0, ode, green);

    auto run_entry = [&](std::size_t li) -> CompareEntry {
        CompareEntry entry;
        entry.eps = ladder[li];
        entry.grid = static_cast<int>(grid_list[li]);
        const CoreProfile prof =
            profile_for(entry.eps, profile_kind, profile_nodes);
        const ComplexField u0 =
            build_initial_data(a0, entry.eps, entry.grid, entry.grid, prof);

        NlseParams params;
        params.eps = entry.eps;
        params.dt = dt_pde;
        params.t_end = t_end;
        params.snapshot_every = snapshot_every;

        std::vector<std::vector<VortexObservation>> snaps;
        std::vector<double> times;
        run(u0, params, [&](const ComplexField& f, const Observables&) {
            snaps.push_back(detect(f));
            times.push_back(f.time);
        });

        const double h = a0.geometry.l / entry.grid;
        const double jump = 5.0 * h + 20.0 * dt_snap;
        const VortexPaths paths = track(snaps, times, a0, jump);
        entry.lost = paths.status == VortexPaths::Status::lost;

        const std::size_t n_cmp =
            std::min(paths.times.size(), ref.times.size());
        double err = 0.0;
        for (std::size_t k = 0; k < n_cmp; ++k) {
            for (int j = 0; j < a0.total(); ++j) {
                const Vec2 tracked =
                    paths.tracks[static_cast<std::size_t>(j)][k].position;
                const Vec2 target = ref.states[k][static_cast<std::size_t>(j)];
                err = std::max(err, a0.geometry.distance(tracked, target));
            }
        }
        entry.err = err;
        entry.t_compared = n_cmp ? paths.times[n_cmp - 1] : 0.0;
        if (!paths.tracks.empty() && paths.times.size() >= 2) {
            entry.tracked_velocity = fit_velocity(
                paths.times, unwrap_path(paths.tracks[0], a0.geometry));
        }
        if (a0.pairs() == 1) {
            entry.ode_velocity = dipole_velocity(a0, Q0, green);
        }
        return entry;
    };

    ComparisonReport report;
    report.entries.resize(ladder.size());
    if (threads > 1) {
        std::vector<std::future<CompareEntry>> futs;
        for (std::size_t li = 0; li < ladder.size(); ++li) {
            futs.push_back(
                std::async(std::launch::async, run_entry, li));
        }
        for (std::size_t li = 0; li < ladder.size(); ++li) {
            report.entries[li] = futs[li].get();
        }
    } else {
        for (std::size_t li = 0; li < ladder.size(); ++li) {
            report.entries[li] = run_entry(li);
        }
    }

    report.err_strictly_decreasing = report.entries.size() >= 2;
    for (std::size_t i = 1; i < report.entries.size(); ++i) {
        if (!(report.entries[i].err < report.entries[i - 1].err)) {
            report.err_strictly_decreasing = false;
        }
    }
    const CompareEntry& finest = report.entries.back();
    const Vec2 vt = finest.tracked_velocity, vp = finest.ode_velocity;
    if (norm(vt) > 0.0 && norm(vp) > 0.0) {
        const double cosang =
            std::clamp(dot(vt, vp) / (norm(vt) * norm(vp)), -1.0, 1.0);
        report.direction_error_deg = std::acos(cosang) * 180.0 / kPi;
        report.magnitude_rel_error = std::fabs(norm(vt) - norm(vp)) / norm(vp);
    }

    if (!out_json.empty()) {
        std::ofstream os(out_json);
        if (!os) throw ConfigError("cannot open " + out_json);
        os << comparison_to_json(report) << '\n';
    }
    return report;
}

std::string comparison_to_json(const ComparisonReport& report) {
    json out;
    out["entries"] = json::array();
    for (const CompareEntry& e : report.entries) {
        out["entries"].push_back(
            {{"eps", e.eps},
             {"grid", e.grid},
             {"err", e.err},
             {"t_compared", e.t_compared},
             {"lost", e.lost},
             {"tracked_velocity", {e.tracked_velocity.x, e.tracked_velocity.y}},
             {"ode_velocity", {e.ode_velocity.x, e.ode_velocity.y}}});
    }
    out["err_strictly_decreasing"] = report.err_strictly_decreasing;
    out["direction_error_deg"] = report.direction_error_deg;
    out["magnitude_rel_error"] = report.magnitude_rel_error;
    return out.dump(2);
}

void figures(const std::string& out_dir, double t_end_n1, double t_end_n2) {
    fs::create_directories(out_dir);

    struct Scenario {
        std::string name;
        std::string label;
        VortexConfiguration config;
        double t_end;
    };
    const TorusGeometry unit{1.0, 1.0};
    const std::vector<Scenario> scenarios = {
        {"fig3_left", "dipole, Q0 = (-0.4 pi, 0)",
         make_configuration(unit, {{0.5, 0.4}}, {{0.5, 0.6}}), t_end_n1},
        {"fig3_middle", "dipole, Q0 = (-0.4 pi, 0.4 pi)",
         make_configuration(unit, {{0.4, 0.4}}, {{0.6, 0.6}}), t_end_n1},
        {"fig3_right", "dipole, Q0 = (-0.4 pi, -0.4 pi)",
         make_configuration(unit, {{0.6, 0.4}}, {{0.4, 0.6}}), t_end_n1},
        {"fig4_left", "4 vortices, diagonal-symmetric, alpha0 = -0.25",
         symmetric_configuration(SymmetricKind::diag4, -0.25, 0.0), t_end_n2},
        {"fig4_middle", "4 vortices, mirror-symmetric, alpha0 = -0.1, beta0 = 0.1",
         symmetric_configuration(SymmetricKind::mirror4, -0.1, 0.1), t_end_n2},
        {"fig4_right", "4 vortices, stacked dipoles, x0 = 0.15, alpha0 = -0.075",
         symmetric_configuration(SymmetricKind::stacked4, -0.075, 0.0, 0.15),
         t_end_n2},
    };

    json manifest;
    manifest["figures"] = json::array();
    for (const Scenario& sc : scenarios) {
        const GreenEvaluator green(sc.config.geometry);
        IntegratorParams params;
        params.dt = 1e-4;
        params.t_end = sc.t_end;
        params.stop_dist = 1e-3;
        params.record_every = 10;
        const ReducedTrajectory traj =
            integrate(sc.config, Q0_of(sc.config), params, green);

        const std::string file = sc.name + ".csv";
        CsvWriter csv(out_dir + "/" + file,
                      trajectory_header(sc.config.total()));
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            csv.row(
                flatten_state(traj.times[i], traj.states[i], traj.integrals[i]));
        }

        json entry;
        entry["file"] = file;
        entry["label"] = sc.label;
        entry["t_end"] = sc.t_end;
        entry["status"] = traj.status == ReducedTrajectory::Status::collided
                              ? "collided"
                              : "completed";
        entry["Q0"] = {Q0_of(sc.config).x, Q0_of(sc.config).y};
        json marks = json::array();
        for (int j = 0; j < sc.config.total(); ++j) {
            marks.push_back({{"x0", sc.config.positions[static_cast<std::size_t>(j)].x},
                             {"y0", sc.config.positions[static_cast<std::size_t>(j)].y},
                             {"winding", sc.config.degrees[static_cast<std::size_t>(j)]},
                             {"marker", sc.config.degrees[static_cast<std::size_t>(j)] > 0
                                            ? "+"
                                            : "x"}});
        }
        entry["vortices"] = marks;
        manifest["figures"].push_back(entry);
    }
    std::ofstream os(out_dir + "/manifest.json");
    if (!os) throw ConfigError("cannot open manifest for writing");
    os << manifest.dump(2) << '\n';
}

int selftest(bool verbose) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        if (!ok) ++failures;
        if (verbose || !ok) {
            std::fprintf(ok ? stdout : stderr, "%s %s\n",
                         ok ? "PASS" : "FAIL", name.c_str());
        }
    };

    const TorusGeometry unit{1.0, 1.0};
    const GreenEvaluator green(unit);
    check("green: diagonal symmetry",
          std::fabs(green.eval_F({0.3, 0.1}) - green.eval_F({0.1, 0.3})) < 1e-12);
    check("green: laplacian",
          std::fabs(green.laplacian_check({0.37, 0.22}, 1e-4) + 2.0 * kPi) <
              1e-4);

    const VortexConfiguration dipole =
        make_configuration(unit, {{0.5, 0.4}}, {{0.5, 0.6}});
    const Vec2 Q0 = Q0_of(dipole);
    check("renorm: figure-3 momentum",
          std::fabs(Q0.x + 0.4 * kPi) < 1e-12 && std::fabs(Q0.y) < 1e-12);

    IntegratorParams params;
    params.dt = 1e-4;
    params.t_end = 0.01;
    params.record_every = 10;
    const ReducedTrajectory traj = integrate(dipole, Q0, params, green);
    const VortexConfiguration end =
        analytic_dipole(dipole, Q0, 0.01, green);
    double dev = 0.0;
    for (int j = 0; j < 2; ++j) {
        dev = std::max(dev, norm(traj.states.back()[static_cast<std::size_t>(j)] -
                                 end.positions[static_cast<std::size_t>(j)]));
    }
    check("rdl: dipole follows the analytic line", dev < 1e-8);

    const CoreProfile prof = CoreProfile::tanh_profile(0.05);
    const ComplexField u0 = build_initial_data(dipole, 0.05, 128, 128, prof);
    const auto dets = detect(u0);
    check("vortex: two detections on constructed data", dets.size() == 2);

    NlseParams nl;
    nl.eps = 0.05;
    nl.dt = 1e-5;
    nl.t_end = 1e-3;
    nl.snapshot_every = 100;
    const RunReport rep = run(u0, nl, nullptr);
    check("nlse: mass conserved", rep.max_mass_drift < 1e-12);

    return failures;
}

} // namespace vtx::runner
