#include "foil/mesh.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "foil/error.hpp"

namespace foil {

std::vector<int> TriMesh::fixed_indices() const {
    std::vector<int> out;
    for (int v = 0; v < vertex_count(); ++v) {
        if (is_fixed(v)) out.push_back(v);
    }
    return out;
}

void TriMesh::validate() const {
    const int n = vertex_count();
    for (size_t f = 0; f < faces.size(); ++f) {
        const auto& tri = faces[f];
        for (int c = 0; c < 3; ++c) {
            if (tri[c] < 0 || tri[c] >= n) {
                throw StructuralError("face " + std::to_string(f) +
                                      " references vertex " + std::to_string(tri[c]) +
                                      " outside [0, " + std::to_string(n) + ")");
            }
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
            throw StructuralError("face " + std::to_string(f) +
                                  " references the same vertex twice");
        }
    }
    for (int v = 0; v < n; ++v) {
        if (!is_finite(positions[v])) {
            throw NumericError("vertex " + std::to_string(v) + " has a non-finite coordinate");
        }
    }
}

Adjacency build_adjacency(const TriMesh& mesh) {
    mesh.validate();
    const int n = mesh.vertex_count();
    Adjacency adj;
    adj.neighbors.resize(n);
    adj.vertex_faces.resize(n);

    std::map<EdgeKey, int> edge_seen;
    for (int f = 0; f < mesh.face_count(); ++f) {
        const auto& tri = mesh.faces[f];
        for (int c = 0; c < 3; ++c) {
            const int a = tri[c];
            const int b = tri[(c + 1) % 3];
            edge_seen[make_edge(a, b)]++;
            adj.vertex_faces[a].push_back(f);
        }
    }
    // vertex_faces got one entry per corner per face; dedupe is unnecessary
    // (each face touches a vertex at most once after validate), but keep the
    // per-vertex lists sorted for determinism.
    for (auto& vf : adj.vertex_faces) std::sort(vf.begin(), vf.end());

    adj.edges.reserve(edge_seen.size());
    for (const auto& [e, count] : edge_seen) {
        adj.edges.push_back(e);
        adj.neighbors[e.first].push_back(e.second);
        adj.neighbors[e.second].push_back(e.first);
    }
    for (auto& nb : adj.neighbors) std::sort(nb.begin(), nb.end());
    return adj;
}

WatertightReport watertight_check(const TriMesh& mesh) {
    WatertightReport rep;
    rep.vertex_count = mesh.vertex_count();
    rep.face_count = mesh.face_count();

    std::map<EdgeKey, int> edge_faces;
    for (const auto& tri : mesh.faces) {
        edge_faces[make_edge(tri[0], tri[1])]++;
        edge_faces[make_edge(tri[1], tri[2])]++;
        edge_faces[make_edge(tri[2], tri[0])]++;
    }
    rep.edge_count = static_cast<int>(edge_faces.size());
    for (const auto& [e, count] : edge_faces) {
        if (count == 1) rep.boundary_edge_count++;
        if (count > 2) rep.nonmanifold_edge_count++;
    }
    rep.is_closed = rep.face_count > 0 && rep.boundary_edge_count == 0 &&
                    rep.nonmanifold_edge_count == 0;
    rep.euler_characteristic = rep.vertex_count - rep.edge_count + rep.face_count;
    return rep;
}

Aabb bounding_box(const std::vector<Vec3>& points) {
    Aabb box;
    for (const auto& p : points) box.expand(p);
    if (points.empty()) box = Aabb{{0, 0, 0}, {0, 0, 0}};
    return box;
}

double degenerate_area_threshold(const TriMesh& mesh) {
    const double diag = bounding_box(mesh.positions).diagonal();
    return 1e-12 * diag * diag;
}

FaceGeometry face_normal_area(const TriMesh& mesh, int face_index) {
    if (face_index < 0 || face_index >= mesh.face_count()) {
        throw StructuralError("face index " + std::to_string(face_index) + " out of range");
    }
    const auto& tri = mesh.faces[face_index];
    const Vec3& a = mesh.positions[tri[0]];
    const Vec3& b = mesh.positions[tri[1]];
    const Vec3& c = mesh.positions[tri[2]];
    const Vec3 cr = cross(b - a, c - a);
    const double len = norm(cr);
    const double area = 0.5 * len;
    if (area < degenerate_area_threshold(mesh)) {
        throw DegenerateInputError("face " + std::to_string(face_index) +
                                   " is degenerate (area " + std::to_string(area) + ")");
    }
    return {cr / len, area};
}

TriMesh remove_isolated_vertices(const TriMesh& mesh) {
    const int n = mesh.vertex_count();
    std::vector<std::uint8_t> used(n, 0);
    for (const auto& tri : mesh.faces) {
        used[tri[0]] = used[tri[1]] = used[tri[2]] = 1;
    }
    std::vector<int> remap(n, -1);
    TriMesh out;
    for (int v = 0; v < n; ++v) {
        if (!used[v]) continue;
        remap[v] = out.vertex_count();
        out.positions.push_back(mesh.positions[v]);
        out.fixed.push_back(mesh.is_fixed(v) ? 1 : 0);
    }
    out.faces.reserve(mesh.faces.size());
    for (const auto& tri : mesh.faces) {
        out.faces.push_back({remap[tri[0]], remap[tri[1]], remap[tri[2]]});
    }
    return out;
}

}  // namespace foil
