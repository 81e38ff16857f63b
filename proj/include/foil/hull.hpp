#pragma once

#include <vector>

#include "foil/mesh.hpp"
#include "foil/vec3.hpp"

namespace foil {

// Convex hull of a 3D point set as a watertight triangle mesh with outward
// counter-clockwise winding. Output vertices are the input points that lie on
// the hull, kept in input order; interior points are dropped. Throws
// DegenerateInputError for fewer than 4 points or (near-)coplanar input.
TriMesh convex_hull(const std::vector<Vec3>& points);

}  // namespace foil
