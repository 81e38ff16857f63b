#pragma once

#include <map>
#include <utility>
#include <vector>

#include "foil/mesh.hpp"
#include "foil/seed.hpp"
#include "foil/vec3.hpp"

namespace foil {

struct QualityReport {
    double min_angle_deg = 0.0;                         // global minimum over faces
    std::vector<int> degenerate_faces;                  // faces with min angle < 1 degree
    std::vector<std::pair<int, int>> self_intersections;  // filled by the scan, else empty
    bool is_closed = false;
};

// One Jacobi round moves every non-fixed vertex to
//   x + lambda * sum_{j in N(i)} (x_j - x_i)
// evaluated from the round-start positions; fixed vertices never move.
// lambda must lie strictly in (0, 1). Note the sum is not divided by the
// vertex degree, so lambda is meaningful relative to 1/degree.
TriMesh laplacian_smooth(const TriMesh& mesh, const Adjacency& adj, double lambda, int rounds);
TriMesh laplacian_smooth(const TriMesh& mesh, double lambda, int rounds);

struct SubdivisionResult {
    TriMesh mesh;
    // Edge of the input mesh -> index of the midpoint vertex in the output.
    std::map<EdgeKey, int> midpoints;
};

// Midpoint 1->4 split of a watertight mesh: V' = V + E, F' = 4F, winding
// preserved, original vertices keep their positions bitwise. Midpoint
// vertices are never fixed.
SubdivisionResult subdivide(const TriMesh& mesh);

// Minimum interior angle per face, global minimum, and the faces below the
// one-degree degeneracy threshold. Report-only.
QualityReport min_angle(const TriMesh& mesh);

// Pushes every non-fixed vertex radially onto the sphere:
// x' = c + R (x - c)/|x - c|. Used between initialization refinement passes.
TriMesh project_to_sphere(const TriMesh& mesh, const SphereSpec& sphere);

// All pairs of non-adjacent (no shared vertex index) faces whose triangles
// intersect, found by uniform-grid binning plus an exact triangle-triangle
// test. Pairs are (lower, higher) face index, sorted. Report-only.
std::vector<std::pair<int, int>> self_intersection_scan(const TriMesh& mesh);

}  // namespace foil
