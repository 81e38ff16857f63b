#pragma once

#include <map>
#include <vector>

#include "foil/mesh.hpp"
#include "foil/spatial.hpp"
#include "foil/vec3.hpp"

namespace foil {

struct MaterialParams {
    double k_base = 1.0;                    // base stiffness (force per unit strain)
    double damping_c = 2.5;                 // velocity damping coefficient c
    double pressure_p = -6.0;               // signed pressure p; negative = contractive
    double mass_m = 1.0;                    // uniform per-vertex mass m
    double distance_factor_strength = 2.0;  // stiffness decay strength (0 = no decay)

    void validate() const;
};

struct RestState {
    // Rest length per undirected edge, captured at edge creation time.
    std::map<EdgeKey, double> rest_lengths;
    double contraction_scale = 1.0;  // in (0, 1], multiplies stored lengths

    double length(int i, int j) const;
};

// Stores contraction_scale * current geometric length for every adjacency edge.
RestState capture_rest_state(const TriMesh& mesh, const Adjacency& adj,
                             double contraction_scale = 1.0);

// Stiffness decay with distance r from the nearest fixed vertex:
// k_base / (1 + strength * r / d), where d is the characteristic mesh spacing.
double effective_stiffness(double r, const MaterialParams& params, double d);

// Hooke forces with strain normalized by rest length:
// f_i = sum_j k_ij * (|v_j - v_i| - L_ij)/L_ij * unit(v_j - v_i).
// k_ij is evaluated at the edge midpoint's distance to the nearest fixed
// vertex via `fixed_index`; pass nullptr (or an empty index) to use k_base
// everywhere, which also happens whenever decay strength is zero.
std::vector<Vec3> elastic_forces(const TriMesh& mesh, const Adjacency& adj,
                                 const RestState& rest, const MaterialParams& params, double d,
                                 const SpatialIndex* fixed_index = nullptr);

// E = sum_edges 1/2 k_ij (|v_j - v_i| - L_ij)^2 / L_ij, chosen so that
// -grad E reproduces elastic_forces exactly (for position-independent k_ij).
double spring_energy(const TriMesh& mesh, const Adjacency& adj, const RestState& rest,
                     const MaterialParams& params, double d,
                     const SpatialIndex* fixed_index = nullptr);

struct PressureForces {
    std::vector<Vec3> forces;
    int degenerate_face_count = 0;  // faces skipped for being below the area threshold
};

// Each face contributes p * n_f * A_f / 3 to its three corners, accumulated
// in face-index order. Degenerate faces are skipped and tallied, not fatal.
PressureForces pressure_forces(const TriMesh& mesh, const MaterialParams& params);

struct TotalForces {
    std::vector<Vec3> forces;
    int degenerate_face_count = 0;
};

// elastic + pressure - c * velocity, with forces on fixed vertices zeroed.
TotalForces total_forces(const TriMesh& mesh, const Adjacency& adj, const RestState& rest,
                         const MaterialParams& params, double d,
                         const std::vector<Vec3>& velocities,
                         const SpatialIndex* fixed_index = nullptr);

// c_crit = 2 sqrt(k_base * m): fastest non-oscillatory return to equilibrium.
double critical_damping(const MaterialParams& params);

// Stiffness of edge (i, j) under the midpoint decay rule; k_base whenever
// decay is off (zero strength, null or empty index).
double edge_stiffness_at(const TriMesh& mesh, int i, int j, const MaterialParams& params,
                         double d, const SpatialIndex* fixed_index);

}  // namespace foil
