#include "foil/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "foil/error.hpp"
#include "foil/refine.hpp"
#include "foil/spatial.hpp"

namespace foil {

const char* termination_name(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::converged: return "converged";
        case TerminationReason::max_iterations: return "max_iterations";
        case TerminationReason::diverged: return "diverged";
    }
    return "unknown";
}

void SimConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive, got " + std::to_string(dt));
    if (!(epsilon > 0.0)) {
        throw ConfigError("epsilon must be positive, got " + std::to_string(epsilon));
    }
    if (max_iterations < 1) {
        throw ConfigError("max_iterations must be at least 1, got " +
                          std::to_string(max_iterations));
    }
    if (snap_every < 1) {
        throw ConfigError("snap_every must be at least 1, got " + std::to_string(snap_every));
    }
    if (smooth_every < 0 || refine_every < 0 || snapshot_every < 0) {
        throw ConfigError("cadence values must be non-negative");
    }
    if (smooth_every > 0 && (!(smooth_lambda > 0.0) || !(smooth_lambda < 1.0))) {
        throw ConfigError("smooth_lambda must lie in (0, 1), got " +
                          std::to_string(smooth_lambda));
    }
    if (smooth_rounds < 0) {
        throw ConfigError("smooth_rounds must be non-negative, got " +
                          std::to_string(smooth_rounds));
    }
}

double omega_max_estimate(const TriMesh& mesh, const Adjacency& adj, const RestState& rest,
                          const MaterialParams& params, double d,
                          const SpatialIndex* fixed_index) {
    params.validate();
    std::vector<double> row(mesh.vertex_count(), 0.0);
    for (const EdgeKey& e : adj.edges) {
        const double k = edge_stiffness_at(mesh, e.first, e.second, params, d, fixed_index);
        const double L = rest.length(e.first, e.second);
        const double kl = k / L;
        row[static_cast<std::size_t>(e.first)] += kl;
        row[static_cast<std::size_t>(e.second)] += kl;
    }
    double worst = 0.0;
    for (double r : row) worst = std::max(worst, r);
    return std::sqrt(2.0 * worst / params.mass_m);
}

CflOutcome cfl_check(double dt, double omega_max, CflMode mode) {
    if (!(omega_max > 0.0)) {
        throw ConfigError("omega_max must be positive, got " + std::to_string(omega_max));
    }
    CflOutcome out;
    out.omega_max = omega_max;
    out.max_admissible_dt = 2.0 / omega_max;
    out.ok = dt < out.max_admissible_dt;  // strict bound
    if (!out.ok && mode == CflMode::enforce) {
        throw CflError("time step " + std::to_string(dt) +
                       " violates the stability bound; maximum admissible dt is " +
                       std::to_string(out.max_admissible_dt) + " (omega_max " +
                       std::to_string(omega_max) + ")");
    }
    return out;
}

double euler_step(SimState& state, const std::vector<Vec3>& forces,
                  const MaterialParams& params, const SimConfig& cfg) {
    TriMesh& mesh = state.mesh;
    const auto n = static_cast<std::size_t>(mesh.vertex_count());
    if (forces.size() != n || state.velocities.size() != n) {
        throw StructuralError("force/velocity count does not match vertex count");
    }
    for (std::size_t i = 0; i < forces.size(); ++i) {
        if (!is_finite(forces[i])) {
            throw NumericError("non-finite force at vertex " + std::to_string(i));
        }
    }
    const double inv_m = 1.0 / params.mass_m;
    double max_disp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (mesh.is_fixed(static_cast<int>(i))) {
            state.velocities[i] = Vec3{0.0, 0.0, 0.0};
            continue;
        }
        state.velocities[i] += forces[i] * (cfg.dt * inv_m);
        const Vec3 next = mesh.positions[i] + state.velocities[i] * cfg.dt;
        max_disp = std::max(max_disp, distance(next, mesh.positions[i]));
        mesh.positions[i] = next;
    }
    return max_disp;
}

bool converged(double max_displacement, const SimConfig& cfg) {
    return max_displacement < cfg.epsilon;
}

double mesh_spacing(const TriMesh& mesh) {
    std::vector<uint8_t> referenced(mesh.vertex_count(), 0);
    for (const auto& f : mesh.faces) {
        for (int corner = 0; corner < 3; ++corner) {
            referenced[static_cast<std::size_t>(f[corner])] = 1;
        }
    }
    std::vector<Vec3> pts;
    for (std::size_t i = 0; i < mesh.positions.size(); ++i) {
        if (referenced[i]) pts.push_back(mesh.positions[i]);
    }
    if (pts.size() < 2) pts = mesh.positions;
    if (pts.size() < 2) return 0.0;
    return average_nn_distance(pts);
}

namespace {

bool all_finite(const std::vector<Vec3>& v) {
    for (const Vec3& x : v) {
        if (!is_finite(x)) return false;
    }
    return true;
}

double kinetic_energy(const std::vector<Vec3>& velocities, double mass) {
    double e = 0.0;
    for (const Vec3& v : velocities) e += 0.5 * mass * norm2(v);
    return e;
}

}  // namespace

RunResult run_simulation(SimState& state, Adjacency adj, RestState rest,
                         ConstraintSet* constraints, const MaterialParams& params,
                         const SnapConfig& snap_cfg, const SimConfig& cfg, double d,
                         const SpatialIndex* fixed_index, const SimSinks& sinks) {
    params.validate();
    cfg.validate();
    if (constraints != nullptr) snap_cfg.validate();
    state.mesh.validate();
    if (state.velocities.size() != static_cast<std::size_t>(state.mesh.vertex_count())) {
        throw StructuralError("velocity count does not match vertex count");
    }

    // Stability gate. A mesh with no springs has nothing to bound.
    double omega = omega_max_estimate(state.mesh, adj, rest, params, d, fixed_index);
    if (omega > 0.0) {
        const CflOutcome cfl = cfl_check(cfg.dt, omega, cfg.cfl_mode);
        if (!cfl.ok && sinks.warn) {
            sinks.warn("time step " + std::to_string(cfg.dt) +
                       " exceeds the stability bound " + std::to_string(cfl.max_admissible_dt) +
                       "; proceeding because cfl_mode is warn");
        }
    }

    const double diverge_limit = 1e3 * bounding_box(state.mesh.positions).diagonal();

    RunResult result;
    result.reason = TerminationReason::max_iterations;
    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        const TotalForces tf =
            total_forces(state.mesh, adj, rest, params, d, state.velocities, fixed_index);
        if (!all_finite(tf.forces)) {
            result.reason = TerminationReason::diverged;
            break;
        }

        const double max_disp = euler_step(state, tf.forces, params, cfg);
        state.iteration = iter;
        result.iterations = iter;
        result.final_max_displacement = max_disp;

        if (!(max_disp <= diverge_limit) || !all_finite(state.mesh.positions)) {
            result.reason = TerminationReason::diverged;
            break;
        }

        const bool is_converged = converged(max_disp, cfg);
        if (!is_converged) {
            if (constraints != nullptr && iter % cfg.snap_every == 0) {
                const SnapReport report = constraints->snap_pass(state.mesh, adj, snap_cfg);
                for (const auto& [foil_v, target] : report.snapped_this_pass) {
                    (void)target;
                    state.velocities[static_cast<std::size_t>(foil_v)] = Vec3{0.0, 0.0, 0.0};
                }
            }
            if (cfg.smooth_every > 0 && iter % cfg.smooth_every == 0 && cfg.smooth_rounds > 0) {
                state.mesh =
                    laplacian_smooth(state.mesh, adj, cfg.smooth_lambda, cfg.smooth_rounds);
            }
            if (cfg.refine_every > 0 && iter % cfg.refine_every == 0) {
                SubdivisionResult sub = subdivide(state.mesh);
                // Midpoint vertices start with the mean of their edge's
                // endpoint velocities; rest lengths restart from the refined
                // geometry so the new mesh carries no instant stress.
                std::vector<Vec3> velocities = std::move(state.velocities);
                velocities.resize(sub.mesh.vertex_count(), Vec3{0.0, 0.0, 0.0});
                for (const auto& [edge, mid] : sub.midpoints) {
                    velocities[static_cast<std::size_t>(mid)] =
                        (velocities[static_cast<std::size_t>(edge.first)] +
                         velocities[static_cast<std::size_t>(edge.second)]) *
                        0.5;
                }
                state.mesh = std::move(sub.mesh);
                state.velocities = std::move(velocities);
                adj = build_adjacency(state.mesh);
                rest = capture_rest_state(state.mesh, adj, rest.contraction_scale);
                d = mesh_spacing(state.mesh);
                omega = omega_max_estimate(state.mesh, adj, rest, params, d, fixed_index);
                if (omega > 0.0) {
                    const CflOutcome cfl = cfl_check(cfg.dt, omega, cfg.cfl_mode);
                    if (!cfl.ok && sinks.warn) {
                        sinks.warn("time step " + std::to_string(cfg.dt) +
                                   " exceeds the post-refinement stability bound " +
                                   std::to_string(cfl.max_admissible_dt) +
                                   "; proceeding because cfl_mode is warn");
                    }
                }
            }
        }

        IterationStats stats;
        stats.iteration = iter;
        stats.max_displacement = max_disp;
        stats.mean_nn_distance = mesh_spacing(state.mesh);
        stats.spring_energy = spring_energy(state.mesh, adj, rest, params, d, fixed_index);
        stats.kinetic_energy = kinetic_energy(state.velocities, params.mass_m);
        stats.snapped_count = constraints != nullptr ? constraints->total_snapped() : 0;
        stats.degenerate_face_count = tf.degenerate_face_count;
        state.stats_history.push_back(stats);
        if (sinks.stats) sinks.stats(stats);
        if (sinks.snapshot && cfg.snapshot_every > 0 && iter % cfg.snapshot_every == 0) {
            sinks.snapshot(state.mesh, iter);
        }

        if (is_converged) {
            result.reason = TerminationReason::converged;
            break;
        }
    }
    return result;
}

}  // namespace foil
