#include "foil/seed.hpp"

#include <cmath>

#include "foil/error.hpp"
#include "foil/hull.hpp"

namespace foil {

void SphereSpec::validate() const {
    if (!(radius > 0.0)) {
        throw ConfigError("sphere radius must be positive, got " + std::to_string(radius));
    }
    if (point_count < 4) {
        throw ConfigError("sphere point count must be at least 4, got " +
                          std::to_string(point_count));
    }
    if (!is_finite(center) || !std::isfinite(radius)) {
        throw NumericError("sphere spec has non-finite center or radius");
    }
}

std::vector<Vec3> fibonacci_lattice(const Vec3& center, double radius, int n) {
    if (n < 1) {
        throw ConfigError("lattice point count must be at least 1, got " + std::to_string(n));
    }
    constexpr double kPi = 3.14159265358979323846;
    const double golden = kPi * (1.0 + std::sqrt(5.0));
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double phi = std::acos(z);
        const double theta = golden * static_cast<double>(i);
        const double s = std::sin(phi);
        pts.push_back(Vec3{center.x + radius * s * std::cos(theta),
                           center.y + radius * s * std::sin(theta),
                           center.z + radius * std::cos(phi)});
    }
    return pts;
}

std::vector<Vec3> fibonacci_sphere(const SphereSpec& spec) {
    spec.validate();
    return fibonacci_lattice(spec.center, spec.radius, spec.point_count);
}

SphereSpec enclosing_sphere(const std::vector<Vec3>& fixed_points, double margin_factor) {
    if (fixed_points.empty()) {
        throw DegenerateInputError("cannot enclose an empty point set");
    }
    if (!(margin_factor >= 1.0)) {
        throw ConfigError("enclosing margin factor must be >= 1, got " +
                          std::to_string(margin_factor));
    }
    Vec3 c{0.0, 0.0, 0.0};
    for (const Vec3& p : fixed_points) {
        if (!is_finite(p)) {
            throw NumericError("fixed point set contains a non-finite coordinate");
        }
        c = c + p;
    }
    c = c / static_cast<double>(fixed_points.size());
    double max_d = 0.0;
    for (const Vec3& p : fixed_points) {
        max_d = std::max(max_d, distance(c, p));
    }
    if (max_d == 0.0) {
        throw DegenerateInputError("fixed points are all coincident; enclosing sphere undefined");
    }
    SphereSpec spec;
    spec.center = c;
    spec.radius = margin_factor * max_d;
    return spec;
}

TriMesh build_initial_mesh(const std::vector<Vec3>& fixed_points, int n, double margin_factor) {
    if (fixed_points.empty()) {
        throw DegenerateInputError("no fixed points given; nothing to reconstruct around");
    }
    SphereSpec spec = enclosing_sphere(fixed_points, margin_factor);
    spec.point_count = n;
    spec.validate();

    TriMesh mesh = convex_hull(fibonacci_sphere(spec));
    // Lattice points all lie on one sphere, so each should survive as a hull
    // vertex; a shortfall means the hull collapsed duplicates.
    if (mesh.vertex_count() != n) {
        throw StructuralError("seed hull dropped lattice vertices: expected " +
                              std::to_string(n) + ", got " +
                              std::to_string(mesh.vertex_count()));
    }
    mesh.fixed.assign(mesh.vertex_count(), 0);
    for (const Vec3& p : fixed_points) {
        mesh.positions.push_back(p);
        mesh.fixed.push_back(1);
    }
    mesh.validate();
    return mesh;
}

}  // namespace foil
