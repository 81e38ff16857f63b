#include "foil/pipeline.hpp"

#include <utility>

#include "foil/error.hpp"
#include "foil/io.hpp"
#include "foil/parallel.hpp"
#include "foil/scenario.hpp"
#include "foil/seed.hpp"
#include "foil/snap.hpp"
#include "foil/spatial.hpp"

namespace foil {

std::vector<Vec3> resolve_input_points(const RunConfig& cfg) {
    const bool has_scenario = !cfg.scenario.empty();
    const bool has_input = !cfg.input_path.empty();
    if (has_scenario == has_input) {
        throw ConfigError(has_scenario
                              ? "choose either a scenario or an input file, not both"
                              : "no input: set scenario=box or input_path=<points file>");
    }
    if (has_scenario) {
        return box_scenario(cfg.box_side, cfg.box_inset, cfg.box());
    }
    return load_points(cfg.input_path);
}

namespace {

struct Prepared {
    std::vector<Vec3> fixed_points;
    TriMesh mesh;
    Adjacency adj;
    RestState rest;
    SphereSpec sphere;
    SpatialIndex fixed_index;  // over the constraint positions
    double d = 0.0;
    double omega_bound = 0.0;
};

Prepared prepare(const RunConfig& cfg) {
    cfg.validate();
    set_worker_threads(cfg.worker_threads);

    Prepared p;
    p.fixed_points = resolve_input_points(cfg);
    p.sphere = enclosing_sphere(p.fixed_points, cfg.margin_factor);
    p.sphere.point_count = cfg.seed_count;
    p.mesh = build_initial_mesh(p.fixed_points, cfg.seed_count, cfg.margin_factor);

    // Optional pre-dynamics refinement: each pass splits every face and pushes
    // the new midpoints back onto the seed sphere (constraints stay put).
    for (int round = 0; round < cfg.init_refine_rounds; ++round) {
        p.mesh = project_to_sphere(subdivide(p.mesh).mesh, p.sphere);
    }

    p.adj = build_adjacency(p.mesh);
    p.rest = capture_rest_state(p.mesh, p.adj, cfg.contraction_scale);

    std::vector<Vec3> fixed_pos;
    std::vector<int> fixed_labels;
    for (int idx : p.mesh.fixed_indices()) {
        fixed_pos.push_back(p.mesh.positions[static_cast<std::size_t>(idx)]);
        fixed_labels.push_back(idx);
    }
    p.fixed_index = SpatialIndex(fixed_pos, fixed_labels);

    p.d = mesh_spacing(p.mesh);
    p.omega_bound =
        omega_max_estimate(p.mesh, p.adj, p.rest, cfg.material(), p.d, &p.fixed_index);
    return p;
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& cfg, const SimSinks& sinks) {
    Prepared p = prepare(cfg);
    const MaterialParams material = cfg.material();
    const SnapConfig snap_cfg = cfg.snap();
    const SimConfig sim_cfg = cfg.sim();

    PipelineResult result;
    result.fixed_points = p.fixed_points;
    result.d = p.d;
    result.omega_bound = p.omega_bound;
    result.r_effect = radius_of_effectiveness(material, p.d, snap_cfg);
    result.n_effect = affected_neighbors(material, p.d, snap_cfg);

    ConstraintSet constraints(p.mesh);
    result.target_count = static_cast<int>(constraints.target_count());

    result.state.mesh = std::move(p.mesh);
    result.state.velocities.assign(result.state.mesh.vertex_count(), Vec3{0.0, 0.0, 0.0});
    result.run = run_simulation(result.state, std::move(p.adj), std::move(p.rest), &constraints,
                                material, snap_cfg, sim_cfg, p.d, &p.fixed_index, sinks);

    result.total_snapped = constraints.total_snapped();
    result.unsatisfied_targets = constraints.unsatisfied();

    // Satisfied targets were realized by moving a foil vertex onto the
    // constraint point bitwise, so dropping the face-less originals merges the
    // pair without touching any coordinate.
    result.final_mesh = remove_isolated_vertices(result.state.mesh);
    result.quality = min_angle(result.final_mesh);
    return result;
}

InfoReport info_report(const RunConfig& cfg) {
    const Prepared p = prepare(cfg);
    const MaterialParams material = cfg.material();
    const SnapConfig snap_cfg = cfg.snap();

    InfoReport info;
    info.targets = static_cast<int>(p.fixed_points.size());
    info.foil_vertices = static_cast<int>(p.mesh.vertex_count()) - info.targets;
    info.faces = static_cast<int>(p.mesh.face_count());
    info.sphere_radius = p.sphere.radius;
    info.d = p.d;
    info.omega_bound = p.omega_bound;
    info.max_admissible_dt = p.omega_bound > 0.0 ? 2.0 / p.omega_bound : 0.0;
    info.c_crit = critical_damping(material);
    info.r_effect = radius_of_effectiveness(material, p.d, snap_cfg);
    info.n_effect = affected_neighbors(material, p.d, snap_cfg);
    return info;
}

}  // namespace foil
