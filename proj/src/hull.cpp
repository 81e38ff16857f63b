#include "foil/hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <string>

#include "foil/error.hpp"

namespace foil {

namespace {

// Incremental insertion with per-face conflict sets (quickhull). Faces are
// append-only with alive flags; every loop iterates in index order, so the
// construction is deterministic for a given input sequence.
class HullBuilder {
public:
    explicit HullBuilder(const std::vector<Vec3>& points) : pts_(points) {
        if (pts_.size() < 4) {
            throw DegenerateInputError("convex_hull: need at least 4 points, got " +
                                       std::to_string(pts_.size()));
        }
        eps_ = 1e-9 * bounding_box(pts_).diagonal();
        if (eps_ <= 0.0) {
            throw DegenerateInputError("convex_hull: all points coincide");
        }
    }

    TriMesh run() {
        build_initial_simplex();
        assign_initial_conflicts();
        process_conflicts();
        return extract_mesh();
    }

private:
    struct Face {
        std::array<int, 3> v;
        Vec3 normal;       // unit, outward
        double offset;     // normal . x = offset on the face plane
        bool alive = true;
        std::vector<int> conflicts;  // points strictly outside this face
    };

    double plane_distance(const Face& f, int p) const {
        return dot(f.normal, pts_[p]) - f.offset;
    }

    // Orientation comes from the interior point, not from edge bookkeeping:
    // flip the triple until the normal faces away from it.
    void push_face(int a, int b, int c) {
        const Vec3 cr = cross(pts_[b] - pts_[a], pts_[c] - pts_[a]);
        const double len = norm(cr);
        Face f;
        f.v = {a, b, c};
        if (len == 0.0) {
            throw DegenerateInputError("convex_hull: degenerate hull face");
        }
        f.normal = cr / len;
        f.offset = dot(f.normal, pts_[a]);
        if (dot(f.normal, interior_) - f.offset > 0.0) {
            std::swap(f.v[1], f.v[2]);
            f.normal = -f.normal;
            f.offset = -f.offset;
        }
        faces_.push_back(std::move(f));
    }

    void build_initial_simplex() {
        const int n = static_cast<int>(pts_.size());
        int i0 = 0, i1 = 0;
        for (int i = 1; i < n; ++i) {
            if (pts_[i].x < pts_[i0].x) i0 = i;
            if (pts_[i].x > pts_[i1].x) i1 = i;
        }
        if (distance(pts_[i0], pts_[i1]) <= eps_) {
            // Flat in x; fall back to the two most distant along the diagonal.
            for (int i = 1; i < n; ++i) {
                if (distance2(pts_[i], pts_[i0]) > distance2(pts_[i1], pts_[i0])) i1 = i;
            }
            if (distance(pts_[i0], pts_[i1]) <= eps_) {
                throw DegenerateInputError("convex_hull: points are (near-)coincident");
            }
        }

        const Vec3 dir = pts_[i1] - pts_[i0];
        int i2 = -1;
        double best = eps_;
        for (int i = 0; i < n; ++i) {
            const Vec3 rel = pts_[i] - pts_[i0];
            const double d = norm(cross(dir, rel)) / norm(dir);
            if (d > best) {
                best = d;
                i2 = i;
            }
        }
        if (i2 < 0) {
            throw DegenerateInputError("convex_hull: points are collinear");
        }

        const Vec3 plane_n = cross(dir, pts_[i2] - pts_[i0]);
        const Vec3 plane_unit = plane_n / norm(plane_n);
        int i3 = -1;
        best = eps_;
        for (int i = 0; i < n; ++i) {
            const double d = std::abs(dot(plane_unit, pts_[i] - pts_[i0]));
            if (d > best) {
                best = d;
                i3 = i;
            }
        }
        if (i3 < 0) {
            throw DegenerateInputError("convex_hull: points are coplanar");
        }

        interior_ = (pts_[i0] + pts_[i1] + pts_[i2] + pts_[i3]) * 0.25;
        push_face(i0, i1, i2);
        push_face(i0, i1, i3);
        push_face(i0, i2, i3);
        push_face(i1, i2, i3);
        simplex_ = {i0, i1, i2, i3};
    }

    // Points land in the conflict set of the face they are furthest outside
    // of; points inside every face are done.
    void assign_point(int p, size_t first_face) {
        double best_d = eps_;
        int best_face = -1;
        for (size_t f = first_face; f < faces_.size(); ++f) {
            if (!faces_[f].alive) continue;
            const double d = plane_distance(faces_[f], p);
            if (d > best_d) {
                best_d = d;
                best_face = static_cast<int>(f);
            }
        }
        if (best_face >= 0) {
            faces_[best_face].conflicts.push_back(p);
            pending_.push_back(best_face);
        }
    }

    void assign_initial_conflicts() {
        for (int p = 0; p < static_cast<int>(pts_.size()); ++p) {
            if (p == simplex_[0] || p == simplex_[1] || p == simplex_[2] || p == simplex_[3]) {
                continue;
            }
            assign_point(p, 0);
        }
    }

    void process_conflicts() {
        while (!pending_.empty()) {
            const int fi = pending_.front();
            pending_.pop_front();
            if (!faces_[fi].alive || faces_[fi].conflicts.empty()) continue;

            // Furthest conflict point of this face; ties go to the lowest index.
            int apex = -1;
            double apex_d = -1.0;
            for (int p : faces_[fi].conflicts) {
                const double d = plane_distance(faces_[fi], p);
                if (d > apex_d) {
                    apex_d = d;
                    apex = p;
                }
            }

            // Visible set and its horizon. An undirected edge of the visible
            // region that appears once is a horizon edge.
            std::vector<int> visible;
            for (size_t f = 0; f < faces_.size(); ++f) {
                if (faces_[f].alive && plane_distance(faces_[f], apex) > eps_) {
                    visible.push_back(static_cast<int>(f));
                }
            }

            std::map<EdgeKey, int> edge_count;
            std::vector<std::array<int, 2>> horizon;  // in visible-face winding order
            for (int f : visible) {
                const auto& tri = faces_[f].v;
                for (int c = 0; c < 3; ++c) {
                    edge_count[make_edge(tri[c], tri[(c + 1) % 3])]++;
                }
            }
            for (int f : visible) {
                const auto& tri = faces_[f].v;
                for (int c = 0; c < 3; ++c) {
                    const int a = tri[c];
                    const int b = tri[(c + 1) % 3];
                    if (edge_count[make_edge(a, b)] == 1) horizon.push_back({a, b});
                }
            }

            std::vector<int> orphans;
            for (int f : visible) {
                for (int p : faces_[f].conflicts) {
                    if (p != apex) orphans.push_back(p);
                }
                faces_[f].alive = false;
                faces_[f].conflicts.clear();
            }

            const size_t first_new = faces_.size();
            for (const auto& e : horizon) {
                push_face(e[0], e[1], apex);
            }

            // Reassign orphans among the new faces; an orphan outside the new
            // cone only through a surviving face gets a full rescan before it
            // may be declared interior.
            for (int p : orphans) {
                double best_d = eps_;
                int best_face = -1;
                for (size_t f = first_new; f < faces_.size(); ++f) {
                    const double d = plane_distance(faces_[f], p);
                    if (d > best_d) {
                        best_d = d;
                        best_face = static_cast<int>(f);
                    }
                }
                if (best_face >= 0) {
                    faces_[best_face].conflicts.push_back(p);
                    pending_.push_back(best_face);
                } else {
                    assign_point(p, 0);
                }
            }
        }
    }

    TriMesh extract_mesh() {
        std::vector<int> remap(pts_.size(), -1);
        TriMesh mesh;
        for (size_t f = 0; f < faces_.size(); ++f) {
            if (!faces_[f].alive) continue;
            for (int v : faces_[f].v) {
                if (remap[v] < 0) remap[v] = 1;  // mark used
            }
        }
        for (size_t p = 0; p < pts_.size(); ++p) {
            if (remap[p] < 0) continue;
            remap[p] = mesh.vertex_count();
            mesh.positions.push_back(pts_[p]);
            mesh.fixed.push_back(0);
        }
        for (const auto& f : faces_) {
            if (!f.alive) continue;
            mesh.faces.push_back({remap[f.v[0]], remap[f.v[1]], remap[f.v[2]]});
        }

        const auto report = watertight_check(mesh);
        if (!report.is_closed || report.euler_characteristic != 2) {
            throw StructuralError("convex_hull: construction produced a non-watertight mesh");
        }
        return mesh;
    }

    const std::vector<Vec3>& pts_;
    double eps_ = 0.0;
    Vec3 interior_;
    std::array<int, 4> simplex_{};
    std::vector<Face> faces_;
    std::deque<int> pending_;
};

}  // namespace

TriMesh convex_hull(const std::vector<Vec3>& points) {
    for (size_t i = 0; i < points.size(); ++i) {
        if (!is_finite(points[i])) {
            throw NumericError("convex_hull: point " + std::to_string(i) + " is non-finite");
        }
    }
    return HullBuilder(points).run();
}

}  // namespace foil
