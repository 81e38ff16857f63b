#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "foil/config.hpp"
#include "foil/error.hpp"
#include "foil/io.hpp"
#include "foil/mesh.hpp"
#include "foil/pipeline.hpp"
#include "foil/refine.hpp"
#include "foil/scenario.hpp"

namespace {

int exit_code_for(foil::ErrorCategory category) {
    switch (category) {
        case foil::ErrorCategory::config: return 2;
        case foil::ErrorCategory::io: return 3;
        case foil::ErrorCategory::parse: return 4;
        case foil::ErrorCategory::degenerate: return 5;
        case foil::ErrorCategory::cfl: return 6;
        case foil::ErrorCategory::numeric: return 7;
        case foil::ErrorCategory::structural: return 8;
    }
    return 1;
}

constexpr const char* kExitCodeDoc =
    "Exit codes:\n"
    "  0  success\n"
    "  1  unexpected internal error\n"
    "  2  configuration error (bad parameter, bad key, invalid combination)\n"
    "  3  file I/O error (cannot open/read/write)\n"
    "  4  input parse error (malformed point/mesh/config file)\n"
    "  5  degenerate input (empty cloud, coincident points, flat geometry)\n"
    "  6  stability-bound violation (time step too large in enforce mode)\n"
    "  7  numeric failure (simulation diverged or produced non-finite values)\n"
    "  8  structural error (broken mesh topology or internal inconsistency)\n"
    "Errors print a single machine-greppable line: error[<category>]: <message>";

void add_config_options(CLI::App& cmd, foil::RunConfig& cfg, std::string& config_path) {
    cmd.add_option("--config", config_path,
                   "config file with one 'key = value' per line; flags override its values");
    for (const auto& field : foil::config_fields()) {
        const std::string name = std::string("--") + field.key;
        switch (field.type) {
            case foil::ConfigField::Type::real:
                cmd.add_option(name, cfg.*(field.real_member), field.help);
                break;
            case foil::ConfigField::Type::integer:
                cmd.add_option(name, cfg.*(field.int_member), field.help);
                break;
            case foil::ConfigField::Type::text:
                cmd.add_option(name, cfg.*(field.text_member), field.help);
                break;
        }
    }
}

// Config files must be applied before command-line flags so the flags win,
// and CLI11 applies bound options during parse — hence this pre-scan.
std::string find_config_argument(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return "";
}

void write_snapshot(const foil::TriMesh& mesh, int iteration, const std::string& dir) {
    char name[32];
    std::snprintf(name, sizeof(name), "snapshot_%06d.obj", iteration);
    foil::write_mesh(mesh, (std::filesystem::path(dir) / name).string(), foil::MeshFormat::obj);
}

void run_command(const foil::RunConfig& cfg, bool dump_only) {
    if (dump_only) {
        std::cout << foil::dump_config(cfg);
        return;
    }

    foil::SimSinks sinks;
    sinks.warn = [](const std::string& msg) { std::cerr << "warning: " << msg << "\n"; };
    const bool want_snapshots = !cfg.snapshot_dir.empty() && cfg.snapshot_every > 0;
    if (want_snapshots) {
        std::filesystem::create_directories(cfg.snapshot_dir);
        sinks.snapshot = [&cfg](const foil::TriMesh& mesh, int iteration) {
            write_snapshot(mesh, iteration, cfg.snapshot_dir);
        };
    }

    const foil::PipelineResult result = foil::run_pipeline(cfg, sinks);

    // Diagnostics are worth keeping even when the run failed.
    if (!cfg.diagnostics_path.empty()) {
        foil::write_diagnostics(result.state.stats_history, cfg.diagnostics_path);
    }
    if (result.run.reason == foil::TerminationReason::diverged) {
        throw foil::NumericError("simulation diverged after " +
                                 std::to_string(result.run.iterations) + " iterations");
    }
    if (!cfg.output_path.empty()) {
        foil::write_mesh(result.final_mesh, cfg.output_path);
    }

    std::cout << "reason " << foil::termination_name(result.run.reason) << "\n"
              << "iterations " << result.run.iterations << "\n"
              << "final_max_displacement " << foil::format_double(result.run.final_max_displacement)
              << "\n"
              << "snapped " << result.total_snapped << "/" << result.target_count << "\n"
              << "vertices " << result.final_mesh.vertex_count() << "\n"
              << "faces " << result.final_mesh.face_count() << "\n"
              << "watertight " << (result.quality.is_closed ? "true" : "false") << "\n"
              << "min_angle_deg " << foil::format_double(result.quality.min_angle_deg) << "\n"
              << "degenerate_faces " << result.quality.degenerate_faces.size() << "\n"
              << "influence_radius " << foil::format_double(result.r_effect) << "\n";
    if (!result.unsatisfied_targets.empty()) {
        std::cerr << "warning: " << result.unsatisfied_targets.size()
                  << " constraint point(s) were never reached by the foil\n";
    }
    if (!cfg.output_path.empty()) std::cout << "output " << cfg.output_path << "\n";
    if (!cfg.diagnostics_path.empty()) {
        std::cout << "diagnostics " << cfg.diagnostics_path << "\n";
    }
}

void check_command(const std::string& input, bool scan_intersections) {
    const foil::TriMesh mesh = foil::load_mesh(input);
    const foil::WatertightReport wt = foil::watertight_check(mesh);
    const foil::QualityReport quality = foil::min_angle(mesh);

    std::cout << "vertices " << wt.vertex_count << "\n"
              << "edges " << wt.edge_count << "\n"
              << "faces " << wt.face_count << "\n"
              << "euler_characteristic " << wt.euler_characteristic << "\n"
              << "is_closed " << (wt.is_closed ? "true" : "false") << "\n"
              << "boundary_edges " << wt.boundary_edge_count << "\n"
              << "nonmanifold_edges " << wt.nonmanifold_edge_count << "\n"
              << "min_angle_deg " << foil::format_double(quality.min_angle_deg) << "\n"
              << "degenerate_faces " << quality.degenerate_faces.size() << "\n";
    if (scan_intersections) {
        const auto pairs = foil::self_intersection_scan(mesh);
        std::cout << "self_intersections " << pairs.size() << "\n";
        for (const auto& [a, b] : pairs) {
            std::cout << "intersecting_pair " << a << " " << b << "\n";
        }
    }
}

void scenario_command(const std::string& name, double side, double inset,
                      const std::string& variant, const std::string& output) {
    if (name != "box") {
        throw foil::ConfigError("unknown scenario '" + name + "' (only 'box' is built in)");
    }
    const std::vector<foil::Vec3> points =
        foil::box_scenario(side, inset, foil::box_variant_from_name(variant));
    if (output.empty()) {
        for (const foil::Vec3& p : points) {
            std::cout << foil::format_double(p.x) << ' ' << foil::format_double(p.y) << ' '
                      << foil::format_double(p.z) << "\n";
        }
    } else {
        foil::write_points(points, output);
        std::cout << "points " << points.size() << "\n" << "output " << output << "\n";
    }
}

void info_command(const foil::RunConfig& cfg, bool dump_only) {
    if (dump_only) {
        std::cout << foil::dump_config(cfg);
        return;
    }
    const foil::InfoReport info = foil::info_report(cfg);
    const foil::MaterialParams material = cfg.material();
    std::cout << "targets " << info.targets << "\n"
              << "foil_vertices " << info.foil_vertices << "\n"
              << "faces " << info.faces << "\n"
              << "sphere_radius " << foil::format_double(info.sphere_radius) << "\n"
              << "mean_spacing " << foil::format_double(info.d) << "\n"
              << "omega_max_bound " << foil::format_double(info.omega_bound) << "\n"
              << "max_admissible_dt " << foil::format_double(info.max_admissible_dt) << "\n"
              << "dt " << foil::format_double(cfg.dt) << "\n"
              << "c_crit " << foil::format_double(info.c_crit) << "\n"
              << "damping_c " << foil::format_double(material.damping_c) << "\n"
              << "influence_radius " << foil::format_double(info.r_effect) << "\n"
              << "affected_neighbors " << foil::format_double(info.n_effect) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "foilmesh — reconstructs a closed triangular surface around constraint points by "
        "contracting an elastic foil"};
    app.require_subcommand(1);
    app.footer(kExitCodeDoc);

    foil::RunConfig run_cfg;
    std::string run_config_path;
    bool run_dump = false;
    CLI::App* run = app.add_subcommand(
        "run", "reconstruct: seed sphere, contract, snap, write mesh + diagnostics");
    add_config_options(*run, run_cfg, run_config_path);
    run->add_flag("--dump-config", run_dump, "print the effective config and exit");

    std::string check_input;
    bool check_no_scan = false;
    CLI::App* check =
        app.add_subcommand("check", "report watertightness and quality of a mesh file");
    check->add_option("--input", check_input, "mesh file (.obj or .ply)")->required();
    check->add_flag("--no-self-intersect", check_no_scan, "skip the self-intersection scan");

    std::string scn_name = "box";
    std::string scn_variant = "lateral";
    std::string scn_output;
    double scn_side = 2.0;
    double scn_inset = 0.85;
    CLI::App* scenario = app.add_subcommand("scenario", "emit a built-in constraint point cloud");
    scenario->add_option("--name", scn_name, "scenario name (box)");
    scenario->add_option("--side", scn_side, "cube edge length");
    scenario->add_option("--inset", scn_inset, "inset fraction in (0, 1]");
    scenario->add_option("--variant", scn_variant, "lateral | mixed");
    scenario->add_option("--output", scn_output, "points file (.xyz or .ply); default stdout");

    foil::RunConfig info_cfg;
    std::string info_config_path;
    bool info_dump = false;
    CLI::App* info = app.add_subcommand(
        "info", "print derived quantities (spacing, frequency bound, damping) without running");
    add_config_options(*info, info_cfg, info_config_path);
    info->add_flag("--dump-config", info_dump, "print the effective config and exit");

    run->callback([&] { run_command(run_cfg, run_dump); });
    check->callback([&] { check_command(check_input, !check_no_scan); });
    scenario->callback(
        [&] { scenario_command(scn_name, scn_side, scn_inset, scn_variant, scn_output); });
    info->callback([&] { info_command(info_cfg, info_dump); });

    try {
        const std::string config_path = find_config_argument(argc, argv);
        if (!config_path.empty()) {
            foil::load_config_file(run_cfg, config_path);
            foil::load_config_file(info_cfg, config_path);
        }
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const foil::Error& e) {
        std::cerr << "error[" << foil::category_name(e.category()) << "]: " << e.what() << "\n";
        return exit_code_for(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 1;
    }
}
