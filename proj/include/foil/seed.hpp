#pragma once

#include <vector>

#include "foil/mesh.hpp"
#include "foil/vec3.hpp"

namespace foil {

struct SphereSpec {
    Vec3 center;
    double radius = 1.0;
    int point_count = 500;

    // radius > 0 and point_count >= 4 (minimum for a 3D hull).
    void validate() const;
};

// Golden-angle lattice: phi_i = arccos(1 - 2(i + 0.5)/n), theta_i = pi(1+sqrt5)i,
// for i = 0..n-1. The half-offset form is well defined down to n = 1, which the
// formula-level tests use; pipeline callers go through fibonacci_sphere and its
// n >= 4 check.
std::vector<Vec3> fibonacci_lattice(const Vec3& center, double radius, int n);

std::vector<Vec3> fibonacci_sphere(const SphereSpec& spec);

// Centroid-centered sphere with radius = margin_factor * max distance to any
// point. margin_factor > 1 puts every point strictly inside.
SphereSpec enclosing_sphere(const std::vector<Vec3>& fixed_points, double margin_factor);

// Spherical seed foil: convex hull of the Fibonacci lattice on the enclosing
// sphere of `fixed_points`, with the fixed points appended afterwards as
// fixed-flagged vertices that no face references yet (snap targets).
TriMesh build_initial_mesh(const std::vector<Vec3>& fixed_points, int n, double margin_factor);

}  // namespace foil
