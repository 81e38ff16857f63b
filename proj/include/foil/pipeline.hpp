#pragma once

#include <vector>

#include "foil/config.hpp"
#include "foil/integrator.hpp"
#include "foil/mesh.hpp"
#include "foil/refine.hpp"
#include "foil/vec3.hpp"

namespace foil {

// Constraint points per the config: the built-in scenario or the input file.
// Exactly one of the two sources must be selected.
std::vector<Vec3> resolve_input_points(const RunConfig& cfg);

struct PipelineResult {
    TriMesh final_mesh;   // satisfied targets merged in, leftovers dropped
    SimState state;       // full post-run state (standalone targets still present)
    RunResult run;
    std::vector<Vec3> fixed_points;
    std::vector<int> unsatisfied_targets;  // vertex indices in state.mesh
    int total_snapped = 0;
    int target_count = 0;
    double d = 0.0;            // mesh spacing of the initial foil
    double omega_bound = 0.0;  // initial eigenfrequency bound
    double r_effect = 0.0;     // constraint influence radius
    double n_effect = 0.0;     // same, in units of d
    QualityReport quality;     // of final_mesh
};

// Full reconstruction: seed sphere -> optional init refinement -> contracting
// dynamics with snapping -> merged, watertight output mesh.
PipelineResult run_pipeline(const RunConfig& cfg, const SimSinks& sinks = {});

struct InfoReport {
    int foil_vertices = 0;
    int faces = 0;
    int targets = 0;
    double sphere_radius = 0.0;
    double d = 0.0;
    double omega_bound = 0.0;
    double max_admissible_dt = 0.0;
    double c_crit = 0.0;
    double r_effect = 0.0;
    double n_effect = 0.0;
};

// Derived quantities for a config without running the dynamics.
InfoReport info_report(const RunConfig& cfg);

}  // namespace foil
