#include "foil/refine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>

#include "foil/error.hpp"

namespace foil {

TriMesh laplacian_smooth(const TriMesh& mesh, const Adjacency& adj, double lambda, int rounds) {
    if (!(lambda > 0.0) || !(lambda < 1.0)) {
        throw ConfigError("smoothing lambda must lie in (0, 1), got " + std::to_string(lambda));
    }
    if (rounds < 0) {
        throw ConfigError("smoothing rounds must be non-negative, got " + std::to_string(rounds));
    }
    TriMesh out = mesh;
    std::vector<Vec3> next(out.positions.size());
    for (int round = 0; round < rounds; ++round) {
        for (std::size_t i = 0; i < out.positions.size(); ++i) {
            if (out.is_fixed(static_cast<int>(i))) {
                next[i] = out.positions[i];
                continue;
            }
            Vec3 lap{0.0, 0.0, 0.0};
            for (int nb : adj.neighbors[i]) {
                lap += out.positions[static_cast<std::size_t>(nb)] - out.positions[i];
            }
            next[i] = out.positions[i] + lap * lambda;
        }
        out.positions.swap(next);
    }
    return out;
}

TriMesh laplacian_smooth(const TriMesh& mesh, double lambda, int rounds) {
    return laplacian_smooth(mesh, build_adjacency(mesh), lambda, rounds);
}

SubdivisionResult subdivide(const TriMesh& mesh) {
    const WatertightReport wt = watertight_check(mesh);
    if (!wt.is_closed) {
        throw StructuralError("subdivision requires a watertight mesh (boundary edges: " +
                              std::to_string(wt.boundary_edge_count) + ", non-manifold edges: " +
                              std::to_string(wt.nonmanifold_edge_count) + ")");
    }
    const Adjacency adj = build_adjacency(mesh);

    SubdivisionResult result;
    TriMesh& out = result.mesh;
    out.positions = mesh.positions;
    out.fixed = mesh.fixed;
    out.fixed.resize(mesh.vertex_count(), 0);

    int next_index = static_cast<int>(mesh.vertex_count());
    for (const EdgeKey& e : adj.edges) {
        result.midpoints.emplace(e, next_index++);
        out.positions.push_back((mesh.positions[static_cast<std::size_t>(e.first)] +
                                 mesh.positions[static_cast<std::size_t>(e.second)]) *
                                0.5);
        out.fixed.push_back(0);
    }

    out.faces.reserve(mesh.face_count() * 4);
    for (const auto& f : mesh.faces) {
        const int a = f[0], b = f[1], c = f[2];
        const int mab = result.midpoints.at(make_edge(a, b));
        const int mbc = result.midpoints.at(make_edge(b, c));
        const int mca = result.midpoints.at(make_edge(c, a));
        out.faces.push_back({a, mab, mca});
        out.faces.push_back({mab, b, mbc});
        out.faces.push_back({mca, mbc, c});
        out.faces.push_back({mab, mbc, mca});
    }
    out.validate();
    return result;
}

QualityReport min_angle(const TriMesh& mesh) {
    QualityReport report;
    report.is_closed = watertight_check(mesh).is_closed;
    if (mesh.faces.empty()) {
        report.min_angle_deg = 0.0;
        return report;
    }
    constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;
    constexpr double kDegenerateDeg = 1.0;
    double global_min = 180.0;
    for (int f = 0; f < mesh.face_count(); ++f) {
        double face_min = 180.0;
        for (int corner = 0; corner < 3; ++corner) {
            const Vec3& a = mesh.positions[static_cast<std::size_t>(mesh.faces[f][corner])];
            const Vec3& b = mesh.positions[static_cast<std::size_t>(mesh.faces[f][(corner + 1) % 3])];
            const Vec3& c = mesh.positions[static_cast<std::size_t>(mesh.faces[f][(corner + 2) % 3])];
            const Vec3 u = b - a;
            const Vec3 v = c - a;
            const double nu = norm(u);
            const double nv = norm(v);
            if (nu == 0.0 || nv == 0.0) {
                face_min = 0.0;
                break;
            }
            const double cosine = std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
            face_min = std::min(face_min, std::acos(cosine) * kRadToDeg);
        }
        if (face_min < kDegenerateDeg) {
            report.degenerate_faces.push_back(f);
        }
        global_min = std::min(global_min, face_min);
    }
    report.min_angle_deg = global_min;
    return report;
}

TriMesh project_to_sphere(const TriMesh& mesh, const SphereSpec& sphere) {
    if (!(sphere.radius > 0.0)) {
        throw ConfigError("sphere radius must be positive, got " + std::to_string(sphere.radius));
    }
    TriMesh out = mesh;
    for (std::size_t i = 0; i < out.positions.size(); ++i) {
        if (out.is_fixed(static_cast<int>(i))) continue;
        const Vec3 r = out.positions[i] - sphere.center;
        const double n = norm(r);
        if (n < 1e-15 * sphere.radius) {
            throw DegenerateInputError("vertex " + std::to_string(i) +
                                       " coincides with the sphere center; projection undefined");
        }
        out.positions[i] = sphere.center + r * (sphere.radius / n);
    }
    return out;
}

namespace {

// --- exact triangle-triangle intersection (interval method, division-free) ---

struct Tri2 {
    double x[3];
    double y[3];
};

bool edge_edge_test(double ax, double ay, const Tri2& u, int e0, int e1, double v0x, double v0y) {
    const double bx = u.x[e0] - u.x[e1];
    const double by = u.y[e0] - u.y[e1];
    const double cx = v0x - u.x[e0];
    const double cy = v0y - u.y[e0];
    const double f = ay * bx - ax * by;
    const double d = by * cx - bx * cy;
    if ((f > 0.0 && d >= 0.0 && d <= f) || (f < 0.0 && d <= 0.0 && d >= f)) {
        const double e = ax * cy - ay * cx;
        if (f > 0.0) {
            if (e >= 0.0 && e <= f) return true;
        } else {
            if (e <= 0.0 && e >= f) return true;
        }
    }
    return false;
}

bool edge_against_tri(const Tri2& v, int i0, int i1, const Tri2& u) {
    const double ax = v.x[i1] - v.x[i0];
    const double ay = v.y[i1] - v.y[i0];
    return edge_edge_test(ax, ay, u, 0, 1, v.x[i0], v.y[i0]) ||
           edge_edge_test(ax, ay, u, 1, 2, v.x[i0], v.y[i0]) ||
           edge_edge_test(ax, ay, u, 2, 0, v.x[i0], v.y[i0]);
}

bool point_in_tri(double px, double py, const Tri2& t) {
    double prev = 0.0;
    for (int k = 0; k < 3; ++k) {
        const int k1 = (k + 1) % 3;
        const double s = (t.x[k1] - t.x[k]) * (py - t.y[k]) - (t.y[k1] - t.y[k]) * (px - t.x[k]);
        if (s != 0.0) {
            if (prev != 0.0 && ((s > 0.0) != (prev > 0.0))) return false;
            prev = s;
        }
    }
    return true;
}

Tri2 project_dominant(const Vec3& n, const Vec3& a, const Vec3& b, const Vec3& c) {
    const double ax = std::fabs(n.x), ay = std::fabs(n.y), az = std::fabs(n.z);
    int i0 = 0, i1 = 1;  // drop z by default
    if (ax >= ay && ax >= az) {
        i0 = 1;
        i1 = 2;  // drop x
    } else if (ay >= ax && ay >= az) {
        i0 = 0;
        i1 = 2;  // drop y
    }
    auto comp = [](const Vec3& p, int k) { return k == 0 ? p.x : (k == 1 ? p.y : p.z); };
    Tri2 t;
    t.x[0] = comp(a, i0); t.x[1] = comp(b, i0); t.x[2] = comp(c, i0);
    t.y[0] = comp(a, i1); t.y[1] = comp(b, i1); t.y[2] = comp(c, i1);
    return t;
}

bool coplanar_tri_tri(const Vec3& n, const Vec3& v0, const Vec3& v1, const Vec3& v2,
                      const Vec3& u0, const Vec3& u1, const Vec3& u2) {
    const Tri2 v = project_dominant(n, v0, v1, v2);
    const Tri2 u = project_dominant(n, u0, u1, u2);
    if (edge_against_tri(v, 0, 1, u) || edge_against_tri(v, 1, 2, u) ||
        edge_against_tri(v, 2, 0, u)) {
        return true;
    }
    return point_in_tri(v.x[0], v.y[0], u) || point_in_tri(u.x[0], u.y[0], v);
}

// Interval endpoints along the intersection line, division-free form.
// Returns false when the triangle is coplanar with the other's plane.
bool compute_intervals(double vv0, double vv1, double vv2, double d0, double d1, double d2,
                       double d0d1, double d0d2, double& a, double& b, double& c, double& x0,
                       double& x1) {
    if (d0d1 > 0.0) {
        a = vv2; b = (vv0 - vv2) * d2; c = (vv1 - vv2) * d2; x0 = d2 - d0; x1 = d2 - d1;
    } else if (d0d2 > 0.0) {
        a = vv1; b = (vv0 - vv1) * d1; c = (vv2 - vv1) * d1; x0 = d1 - d0; x1 = d1 - d2;
    } else if (d1 * d2 > 0.0 || d0 != 0.0) {
        a = vv0; b = (vv1 - vv0) * d0; c = (vv2 - vv0) * d0; x0 = d0 - d1; x1 = d0 - d2;
    } else if (d1 != 0.0) {
        a = vv1; b = (vv0 - vv1) * d1; c = (vv2 - vv1) * d1; x0 = d1 - d0; x1 = d1 - d2;
    } else if (d2 != 0.0) {
        a = vv2; b = (vv0 - vv2) * d2; c = (vv1 - vv2) * d2; x0 = d2 - d0; x1 = d2 - d1;
    } else {
        return false;  // coplanar
    }
    return true;
}

double axis_component(const Vec3& p, int index) {
    return index == 0 ? p.x : (index == 1 ? p.y : p.z);
}

bool tri_tri_overlap(const Vec3& v0, const Vec3& v1, const Vec3& v2, const Vec3& u0,
                     const Vec3& u1, const Vec3& u2) {
    const Vec3 n1 = cross(v1 - v0, v2 - v0);
    const double d1 = -dot(n1, v0);
    double du0 = dot(n1, u0) + d1;
    double du1 = dot(n1, u1) + d1;
    double du2 = dot(n1, u2) + d1;

    // Scale-aware clamp so nearly-touching configurations resolve through the
    // coplanar path instead of flapping on rounding noise.
    const double scale1 = norm(n1) * (std::fabs(d1) + norm(v0) + norm(u0) + 1.0);
    const double eps1 = 1e-13 * scale1;
    if (std::fabs(du0) < eps1) du0 = 0.0;
    if (std::fabs(du1) < eps1) du1 = 0.0;
    if (std::fabs(du2) < eps1) du2 = 0.0;

    const double du0du1 = du0 * du1;
    const double du0du2 = du0 * du2;
    if (du0du1 > 0.0 && du0du2 > 0.0) return false;  // all strictly one side

    const Vec3 n2 = cross(u1 - u0, u2 - u0);
    const double d2 = -dot(n2, u0);
    double dv0 = dot(n2, v0) + d2;
    double dv1 = dot(n2, v1) + d2;
    double dv2 = dot(n2, v2) + d2;

    const double scale2 = norm(n2) * (std::fabs(d2) + norm(v0) + norm(u0) + 1.0);
    const double eps2 = 1e-13 * scale2;
    if (std::fabs(dv0) < eps2) dv0 = 0.0;
    if (std::fabs(dv1) < eps2) dv1 = 0.0;
    if (std::fabs(dv2) < eps2) dv2 = 0.0;

    const double dv0dv1 = dv0 * dv1;
    const double dv0dv2 = dv0 * dv2;
    if (dv0dv1 > 0.0 && dv0dv2 > 0.0) return false;

    const Vec3 dir = cross(n1, n2);
    int index = 0;
    double max_comp = std::fabs(dir.x);
    if (std::fabs(dir.y) > max_comp) { max_comp = std::fabs(dir.y); index = 1; }
    if (std::fabs(dir.z) > max_comp) { index = 2; }

    const double vp0 = axis_component(v0, index);
    const double vp1 = axis_component(v1, index);
    const double vp2 = axis_component(v2, index);
    const double up0 = axis_component(u0, index);
    const double up1 = axis_component(u1, index);
    const double up2 = axis_component(u2, index);

    double a, b, c, x0, x1;
    if (!compute_intervals(vp0, vp1, vp2, dv0, dv1, dv2, dv0dv1, dv0dv2, a, b, c, x0, x1)) {
        return coplanar_tri_tri(n1, v0, v1, v2, u0, u1, u2);
    }
    double d, e, f, y0, y1;
    if (!compute_intervals(up0, up1, up2, du0, du1, du2, du0du1, du0du2, d, e, f, y0, y1)) {
        return coplanar_tri_tri(n1, v0, v1, v2, u0, u1, u2);
    }

    const double xx = x0 * x1;
    const double yy = y0 * y1;
    const double xxyy = xx * yy;

    double isect1[2], isect2[2];
    double tmp = a * xxyy;
    isect1[0] = tmp + b * x1 * yy;
    isect1[1] = tmp + c * x0 * yy;
    tmp = d * xxyy;
    isect2[0] = tmp + e * y1 * xx;
    isect2[1] = tmp + f * y0 * xx;

    if (isect1[0] > isect1[1]) std::swap(isect1[0], isect1[1]);
    if (isect2[0] > isect2[1]) std::swap(isect2[0], isect2[1]);
    return !(isect1[1] < isect2[0] || isect2[1] < isect1[0]);
}

struct CellKey {
    int64_t v;
    bool operator==(const CellKey& o) const { return v == o.v; }
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const { return std::hash<int64_t>()(k.v); }
};

}  // namespace

std::vector<std::pair<int, int>> self_intersection_scan(const TriMesh& mesh) {
    std::vector<std::pair<int, int>> hits;
    const std::size_t nf = mesh.face_count();
    if (nf < 2) return hits;

    // Broad phase: bin face bounding boxes into a uniform grid sized from the
    // average face extent.
    std::vector<Aabb> boxes(nf);
    double avg_extent = 0.0;
    for (std::size_t f = 0; f < nf; ++f) {
        Aabb box;
        for (int corner = 0; corner < 3; ++corner) {
            box.expand(mesh.positions[static_cast<std::size_t>(mesh.faces[f][corner])]);
        }
        boxes[f] = box;
        avg_extent += std::max({box.hi.x - box.lo.x, box.hi.y - box.lo.y,
                                box.hi.z - box.lo.z});
    }
    avg_extent /= static_cast<double>(nf);

    Aabb world;
    for (const Vec3& p : mesh.positions) world.expand(p);
    const double diag = world.diagonal();
    double cell = std::max(avg_extent * 2.0, diag / 256.0);
    if (!(cell > 0.0)) cell = 1.0;

    auto cell_index = [&](double x, double lo) {
        return static_cast<int64_t>(std::floor((x - lo) / cell));
    };

    std::unordered_map<CellKey, std::vector<int>, CellKeyHash> grid;
    for (std::size_t f = 0; f < nf; ++f) {
        const int64_t x0 = cell_index(boxes[f].lo.x, world.lo.x);
        const int64_t x1 = cell_index(boxes[f].hi.x, world.lo.x);
        const int64_t y0 = cell_index(boxes[f].lo.y, world.lo.y);
        const int64_t y1 = cell_index(boxes[f].hi.y, world.lo.y);
        const int64_t z0 = cell_index(boxes[f].lo.z, world.lo.z);
        const int64_t z1 = cell_index(boxes[f].hi.z, world.lo.z);
        for (int64_t x = x0; x <= x1; ++x) {
            for (int64_t y = y0; y <= y1; ++y) {
                for (int64_t z = z0; z <= z1; ++z) {
                    grid[CellKey{(x * 73856093) ^ (y * 19349663) ^ (z * 83492791)}].push_back(
                        static_cast<int>(f));
                }
            }
        }
    }

    auto share_vertex = [&](int f, int g) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (mesh.faces[static_cast<std::size_t>(f)][i] ==
                    mesh.faces[static_cast<std::size_t>(g)][j]) {
                    return true;
                }
            }
        }
        return false;
    };
    auto boxes_overlap = [&](int f, int g) {
        const Aabb& a = boxes[static_cast<std::size_t>(f)];
        const Aabb& b = boxes[static_cast<std::size_t>(g)];
        return a.lo.x <= b.hi.x && b.lo.x <= a.hi.x && a.lo.y <= b.hi.y &&
               b.lo.y <= a.hi.y && a.lo.z <= b.hi.z && b.lo.z <= a.hi.z;
    };

    std::set<std::pair<int, int>> tested;
    std::set<std::pair<int, int>> found;
    for (const auto& [key, faces] : grid) {
        (void)key;
        for (std::size_t i = 0; i < faces.size(); ++i) {
            for (std::size_t j = i + 1; j < faces.size(); ++j) {
                const int f = std::min(faces[i], faces[j]);
                const int g = std::max(faces[i], faces[j]);
                if (f == g) continue;
                if (!tested.emplace(f, g).second) continue;
                if (share_vertex(f, g) || !boxes_overlap(f, g)) continue;
                const auto& ff = mesh.faces[static_cast<std::size_t>(f)];
                const auto& gg = mesh.faces[static_cast<std::size_t>(g)];
                if (tri_tri_overlap(mesh.positions[static_cast<std::size_t>(ff[0])],
                                    mesh.positions[static_cast<std::size_t>(ff[1])],
                                    mesh.positions[static_cast<std::size_t>(ff[2])],
                                    mesh.positions[static_cast<std::size_t>(gg[0])],
                                    mesh.positions[static_cast<std::size_t>(gg[1])],
                                    mesh.positions[static_cast<std::size_t>(gg[2])])) {
                    found.emplace(f, g);
                }
            }
        }
    }
    hits.assign(found.begin(), found.end());
    return hits;
}

}  // namespace foil
