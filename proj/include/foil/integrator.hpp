#pragma once

#include <functional>
#include <string>
#include <vector>

#include "foil/forces.hpp"
#include "foil/mesh.hpp"
#include "foil/snap.hpp"
#include "foil/vec3.hpp"

namespace foil {

enum class CflMode { enforce, warn };

enum class TerminationReason { converged, max_iterations, diverged };

const char* termination_name(TerminationReason reason);

struct SimConfig {
    double dt = 0.05;
    double epsilon = 5e-4;     // convergence bound on max vertex displacement
    int max_iterations = 200;
    int smooth_every = 5;      // 0 = never smooth
    int snap_every = 1;        // >= 1
    int refine_every = 0;      // 0 = never refine during dynamics
    int snapshot_every = 0;    // 0 = no snapshots
    CflMode cfl_mode = CflMode::enforce;
    double smooth_lambda = 0.1;  // per-neighbor weight for cadence smoothing
    int smooth_rounds = 1;

    void validate() const;
};

struct IterationStats {
    int iteration = 0;
    double max_displacement = 0.0;
    double mean_nn_distance = 0.0;
    double spring_energy = 0.0;
    double kinetic_energy = 0.0;
    int snapped_count = 0;          // cumulative snapped vertices
    int degenerate_face_count = 0;  // faces skipped by pressure this iteration
};

struct SimState {
    TriMesh mesh;
    std::vector<Vec3> velocities;
    int iteration = 0;
    std::vector<IterationStats> stats_history;
};

struct SimSinks {
    std::function<void(const TriMesh&, int)> snapshot;        // (mesh, iteration)
    std::function<void(const IterationStats&)> stats;
    std::function<void(const std::string&)> warn;
};

// Gershgorin-style row-sum bound on the highest eigenfrequency:
// max_i sqrt( 2 * sum_{j in N(i)} (k_ij / L_ij) / m ).
// Always an upper bound on the true omega_max of the linearized system.
double omega_max_estimate(const TriMesh& mesh, const Adjacency& adj, const RestState& rest,
                          const MaterialParams& params, double d,
                          const SpatialIndex* fixed_index = nullptr);

struct CflOutcome {
    bool ok = false;
    double omega_max = 0.0;
    double max_admissible_dt = 0.0;  // 2 / omega_max
};

// Stability bound dt < 2 / omega_max (strict). In enforce mode a violation
// throws; in warn mode the outcome reports ok = false and the caller decides.
CflOutcome cfl_check(double dt, double omega_max, CflMode mode);

// Semi-implicit update: v' = v + dt f/m first, then x' = x + dt v' with the
// fresh velocity. Fixed vertices never move. Returns the maximum vertex
// displacement of the step. Throws on any non-finite force component.
double euler_step(SimState& state, const std::vector<Vec3>& forces,
                  const MaterialParams& params, const SimConfig& cfg);

bool converged(double max_displacement, const SimConfig& cfg);

struct RunResult {
    TerminationReason reason = TerminationReason::max_iterations;
    int iterations = 0;
    double final_max_displacement = 0.0;
};

// Drives the contraction loop: forces -> Euler step -> convergence check ->
// cadenced snapping / smoothing / refinement -> stats row. `constraints` may
// be null (pure dynamics, e.g. oscillator rigs). `d` is the mesh spacing used
// for the stiffness decay; pass the value measured on the initial foil.
// Adjacency and rest state are taken over (rebuilt internally on refinement).
RunResult run_simulation(SimState& state, Adjacency adj, RestState rest,
                         ConstraintSet* constraints, const MaterialParams& params,
                         const SnapConfig& snap_cfg, const SimConfig& cfg, double d,
                         const SpatialIndex* fixed_index = nullptr,
                         const SimSinks& sinks = {});

// Mean nearest-neighbor distance over the vertices that carry faces (falls
// back to all vertices when fewer than two carry faces); 0 when undefined.
double mesh_spacing(const TriMesh& mesh);

}  // namespace foil
