#include "foil/forces.hpp"

#include <cmath>
#include <string>

#include "foil/error.hpp"
#include "foil/parallel.hpp"

namespace foil {

void MaterialParams::validate() const {
    if (!(k_base > 0.0)) {
        throw ConfigError("k_base must be positive, got " + std::to_string(k_base));
    }
    if (!(mass_m > 0.0)) {
        throw ConfigError("mass_m must be positive, got " + std::to_string(mass_m));
    }
    if (!(damping_c >= 0.0)) {
        throw ConfigError("damping_c must be non-negative, got " + std::to_string(damping_c));
    }
    if (!(distance_factor_strength >= 0.0)) {
        throw ConfigError("distance_factor_strength must be non-negative, got " +
                          std::to_string(distance_factor_strength));
    }
    if (!std::isfinite(k_base) || !std::isfinite(mass_m) || !std::isfinite(damping_c) ||
        !std::isfinite(pressure_p) || !std::isfinite(distance_factor_strength)) {
        throw NumericError("material parameters contain a non-finite value");
    }
}

double RestState::length(int i, int j) const {
    const auto it = rest_lengths.find(make_edge(i, j));
    if (it == rest_lengths.end()) {
        throw StructuralError("no rest length stored for edge (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    }
    return it->second * contraction_scale;
}

RestState capture_rest_state(const TriMesh& mesh, const Adjacency& adj,
                             double contraction_scale) {
    if (!(contraction_scale > 0.0) || contraction_scale > 1.0) {
        throw ConfigError("contraction_scale must lie in (0, 1], got " +
                          std::to_string(contraction_scale));
    }
    RestState rest;
    rest.contraction_scale = contraction_scale;
    for (const EdgeKey& e : adj.edges) {
        const double len = distance(mesh.positions[static_cast<std::size_t>(e.first)],
                                    mesh.positions[static_cast<std::size_t>(e.second)]);
        if (len <= 0.0) {
            throw DegenerateInputError("zero-length edge (" + std::to_string(e.first) + "," +
                                       std::to_string(e.second) + ") cannot carry a rest length");
        }
        rest.rest_lengths.emplace(e, len);
    }
    return rest;
}

double effective_stiffness(double r, const MaterialParams& params, double d) {
    if (!(d > 0.0)) {
        throw ConfigError("mesh spacing d must be positive, got " + std::to_string(d));
    }
    if (r < 0.0) {
        throw ConfigError("distance r must be non-negative, got " + std::to_string(r));
    }
    return params.k_base / (1.0 + params.distance_factor_strength * r / d);
}

namespace {

// Edge degeneracy guard: endpoints closer than this cannot define a spring
// direction. Scaled like the face-area threshold, but linear in the diagonal.
double edge_epsilon(const TriMesh& mesh) {
    return 1e-12 * bounding_box(mesh.positions).diagonal();
}

bool decay_active(const MaterialParams& params, const SpatialIndex* fixed_index) {
    return params.distance_factor_strength > 0.0 && fixed_index != nullptr &&
           !fixed_index->empty();
}

double edge_stiffness(const TriMesh& mesh, int i, int j, const MaterialParams& params, double d,
                      const SpatialIndex* fixed_index) {
    if (!decay_active(params, fixed_index)) return params.k_base;
    const Vec3& a = mesh.positions[static_cast<std::size_t>(i)];
    const Vec3& b = mesh.positions[static_cast<std::size_t>(j)];
    const Vec3 mid = (a + b) * 0.5;
    const double r = fixed_index->nearest(mid).distance;
    return effective_stiffness(r, params, d);
}

}  // namespace

std::vector<Vec3> elastic_forces(const TriMesh& mesh, const Adjacency& adj,
                                 const RestState& rest, const MaterialParams& params, double d,
                                 const SpatialIndex* fixed_index) {
    params.validate();
    if (decay_active(params, fixed_index) && !(d > 0.0)) {
        throw ConfigError("mesh spacing d must be positive, got " + std::to_string(d));
    }
    const std::size_t ne = adj.edges.size();
    const double eps = edge_epsilon(mesh);

    // Per-edge force on the edge's first endpoint; the second gets the negation
    // (Newton's third law). Written in parallel, combined serially in edge
    // order so the result is independent of the worker count. Workers must not
    // throw (the exception would escape the thread), so failures are flagged
    // and raised after the join.
    std::vector<Vec3> per_edge(ne);
    std::vector<uint8_t> degenerate(ne, 0);
    std::vector<uint8_t> missing(ne, 0);
    parallel_for(ne, [&](std::size_t begin, std::size_t end) {
        for (std::size_t e = begin; e < end; ++e) {
            const int i = adj.edges[e].first;
            const int j = adj.edges[e].second;
            const Vec3 delta = mesh.positions[static_cast<std::size_t>(j)] -
                               mesh.positions[static_cast<std::size_t>(i)];
            const double len = norm(delta);
            if (len < eps || len <= 0.0) {
                degenerate[e] = 1;
                continue;
            }
            const auto it = rest.rest_lengths.find(adj.edges[e]);
            if (it == rest.rest_lengths.end()) {
                missing[e] = 1;
                continue;
            }
            const double L = it->second * rest.contraction_scale;
            const double k = edge_stiffness(mesh, i, j, params, d, fixed_index);
            const double strain = (len - L) / L;
            per_edge[e] = delta * (k * strain / len);
        }
    });
    for (std::size_t e = 0; e < ne; ++e) {
        if (degenerate[e]) {
            throw DegenerateInputError("edge (" + std::to_string(adj.edges[e].first) + "," +
                                       std::to_string(adj.edges[e].second) +
                                       ") has coincident endpoints");
        }
        if (missing[e]) {
            throw StructuralError("no rest length stored for edge (" +
                                  std::to_string(adj.edges[e].first) + "," +
                                  std::to_string(adj.edges[e].second) + ")");
        }
    }

    std::vector<Vec3> forces(mesh.vertex_count(), Vec3{0.0, 0.0, 0.0});
    for (std::size_t e = 0; e < ne; ++e) {
        forces[static_cast<std::size_t>(adj.edges[e].first)] += per_edge[e];
        forces[static_cast<std::size_t>(adj.edges[e].second)] -= per_edge[e];
    }
    return forces;
}

double spring_energy(const TriMesh& mesh, const Adjacency& adj, const RestState& rest,
                     const MaterialParams& params, double d, const SpatialIndex* fixed_index) {
    params.validate();
    if (decay_active(params, fixed_index) && !(d > 0.0)) {
        throw ConfigError("mesh spacing d must be positive, got " + std::to_string(d));
    }
    const std::size_t ne = adj.edges.size();
    const double eps = edge_epsilon(mesh);
    std::vector<double> per_edge(ne, 0.0);
    std::vector<uint8_t> degenerate(ne, 0);
    std::vector<uint8_t> missing(ne, 0);
    parallel_for(ne, [&](std::size_t begin, std::size_t end) {
        for (std::size_t e = begin; e < end; ++e) {
            const int i = adj.edges[e].first;
            const int j = adj.edges[e].second;
            const double len = distance(mesh.positions[static_cast<std::size_t>(i)],
                                        mesh.positions[static_cast<std::size_t>(j)]);
            if (len < eps || len <= 0.0) {
                degenerate[e] = 1;
                continue;
            }
            const auto it = rest.rest_lengths.find(adj.edges[e]);
            if (it == rest.rest_lengths.end()) {
                missing[e] = 1;
                continue;
            }
            const double L = it->second * rest.contraction_scale;
            const double k = edge_stiffness(mesh, i, j, params, d, fixed_index);
            const double dl = len - L;
            per_edge[e] = 0.5 * k * dl * dl / L;
        }
    });
    double energy = 0.0;
    for (std::size_t e = 0; e < ne; ++e) {
        if (degenerate[e]) {
            throw DegenerateInputError("edge (" + std::to_string(adj.edges[e].first) + "," +
                                       std::to_string(adj.edges[e].second) +
                                       ") has coincident endpoints");
        }
        if (missing[e]) {
            throw StructuralError("no rest length stored for edge (" +
                                  std::to_string(adj.edges[e].first) + "," +
                                  std::to_string(adj.edges[e].second) + ")");
        }
        energy += per_edge[e];
    }
    return energy;
}

PressureForces pressure_forces(const TriMesh& mesh, const MaterialParams& params) {
    params.validate();
    const std::size_t nf = mesh.face_count();
    const double area_eps = degenerate_area_threshold(mesh);

    // p * n_f * A_f / 3 == p * cross / 6 with cross the winding-order edge
    // cross product, so no normalization (and no division hazard) is needed.
    std::vector<Vec3> per_face(nf, Vec3{0.0, 0.0, 0.0});
    std::vector<uint8_t> degenerate(nf, 0);
    parallel_for(nf, [&](std::size_t begin, std::size_t end) {
        for (std::size_t f = begin; f < end; ++f) {
            const auto& face = mesh.faces[f];
            const Vec3& a = mesh.positions[static_cast<std::size_t>(face[0])];
            const Vec3& b = mesh.positions[static_cast<std::size_t>(face[1])];
            const Vec3& c = mesh.positions[static_cast<std::size_t>(face[2])];
            const Vec3 cr = cross(b - a, c - a);
            if (0.5 * norm(cr) < area_eps) {
                degenerate[f] = 1;
                continue;
            }
            per_face[f] = cr * (params.pressure_p / 6.0);
        }
    });

    PressureForces out;
    out.forces.assign(mesh.vertex_count(), Vec3{0.0, 0.0, 0.0});
    for (std::size_t f = 0; f < nf; ++f) {
        if (degenerate[f]) {
            ++out.degenerate_face_count;
            continue;
        }
        for (int corner = 0; corner < 3; ++corner) {
            out.forces[static_cast<std::size_t>(mesh.faces[f][corner])] += per_face[f];
        }
    }
    return out;
}

TotalForces total_forces(const TriMesh& mesh, const Adjacency& adj, const RestState& rest,
                         const MaterialParams& params, double d,
                         const std::vector<Vec3>& velocities,
                         const SpatialIndex* fixed_index) {
    if (velocities.size() != mesh.vertex_count()) {
        throw StructuralError("velocity count " + std::to_string(velocities.size()) +
                              " does not match vertex count " +
                              std::to_string(mesh.vertex_count()));
    }
    const std::vector<Vec3> elastic = elastic_forces(mesh, adj, rest, params, d, fixed_index);
    PressureForces pressure = pressure_forces(mesh, params);

    TotalForces out;
    out.degenerate_face_count = pressure.degenerate_face_count;
    out.forces.resize(mesh.vertex_count());
    for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
        if (mesh.is_fixed(static_cast<int>(i))) {
            out.forces[i] = Vec3{0.0, 0.0, 0.0};
        } else {
            out.forces[i] = elastic[i] + pressure.forces[i] - velocities[i] * params.damping_c;
        }
    }
    return out;
}

double critical_damping(const MaterialParams& params) {
    params.validate();
    return 2.0 * std::sqrt(params.k_base * params.mass_m);
}

double edge_stiffness_at(const TriMesh& mesh, int i, int j, const MaterialParams& params,
                         double d, const SpatialIndex* fixed_index) {
    return edge_stiffness(mesh, i, j, params, d, fixed_index);
}

}  // namespace foil
