#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "foil/vec3.hpp"

namespace foil {

// Undirected edge key, always stored with first < second.
using EdgeKey = std::pair<int, int>;

inline EdgeKey make_edge(int a, int b) {
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

// Triangular surface mesh. Faces wind counter-clockwise seen from outside.
// `fixed` flags vertices that are constraint targets or have snapped onto one;
// nothing in the pipeline ever moves a flagged vertex.
struct TriMesh {
    std::vector<Vec3> positions;
    std::vector<std::array<int, 3>> faces;
    std::vector<std::uint8_t> fixed;

    int vertex_count() const { return static_cast<int>(positions.size()); }
    int face_count() const { return static_cast<int>(faces.size()); }

    bool is_fixed(int v) const {
        return v < static_cast<int>(fixed.size()) && fixed[v] != 0;
    }

    std::vector<int> fixed_indices() const;

    // Throws StructuralError on out-of-range or repeated face indices,
    // NumericError on a non-finite stored position.
    void validate() const;
};

struct Adjacency {
    std::vector<std::vector<int>> neighbors;     // sorted ascending
    std::vector<std::vector<int>> vertex_faces;  // incident face indices
    std::vector<EdgeKey> edges;                  // deduplicated, lexicographic

    int edge_count() const { return static_cast<int>(edges.size()); }
};

Adjacency build_adjacency(const TriMesh& mesh);

struct WatertightReport {
    bool is_closed = false;
    int euler_characteristic = 0;
    int boundary_edge_count = 0;
    int nonmanifold_edge_count = 0;
    int vertex_count = 0;
    int edge_count = 0;
    int face_count = 0;
};

// Report-only: never throws on a topologically bad mesh.
WatertightReport watertight_check(const TriMesh& mesh);

struct FaceGeometry {
    Vec3 normal;  // unit
    double area = 0.0;
};

// Normal follows the face winding (right-hand rule). Throws
// DegenerateInputError when the area falls below the mesh degeneracy
// threshold.
FaceGeometry face_normal_area(const TriMesh& mesh, int face_index);

struct Aabb {
    // Default state is the empty box (lo > hi), so expand() can start cold.
    Vec3 lo{kInf, kInf, kInf};
    Vec3 hi{-kInf, -kInf, -kInf};

    static constexpr double kInf = std::numeric_limits<double>::infinity();

    void expand(const Vec3& p) {
        lo.x = p.x < lo.x ? p.x : lo.x;
        lo.y = p.y < lo.y ? p.y : lo.y;
        lo.z = p.z < lo.z ? p.z : lo.z;
        hi.x = p.x > hi.x ? p.x : hi.x;
        hi.y = p.y > hi.y ? p.y : hi.y;
        hi.z = p.z > hi.z ? p.z : hi.z;
    }

    double diagonal() const { return distance(lo, hi); }
};

Aabb bounding_box(const std::vector<Vec3>& points);

// Faces with area below 1e-12 * diag^2 count as degenerate.
double degenerate_area_threshold(const TriMesh& mesh);

// Drops vertices referenced by no face and remaps face indices; relative
// vertex order and positions are preserved bitwise. Used to merge satisfied
// constraint targets out of the final mesh (the snapped foil vertex carries
// the exact target position).
TriMesh remove_isolated_vertices(const TriMesh& mesh);

}  // namespace foil
