#include "foil/snap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "foil/error.hpp"

namespace foil {

void SnapConfig::validate() const {
    if (!(snapping_tolerance > 0.0)) {
        throw ConfigError("snapping_tolerance must be positive, got " +
                          std::to_string(snapping_tolerance));
    }
    if (!(relaxation_lambda > 0.0) || !(relaxation_lambda < 1.0)) {
        throw ConfigError("relaxation_lambda must lie in (0, 1), got " +
                          std::to_string(relaxation_lambda));
    }
    if (relaxation_rounds < 0) {
        throw ConfigError("relaxation_rounds must be non-negative, got " +
                          std::to_string(relaxation_rounds));
    }
}

ConstraintSet::ConstraintSet(const TriMesh& mesh) {
    targets_ = mesh.fixed_indices();
    if (targets_.empty()) {
        throw DegenerateInputError("constraint set requires at least one fixed vertex");
    }
    target_pos_.reserve(targets_.size());
    for (int t : targets_) {
        target_pos_.push_back(mesh.positions[static_cast<std::size_t>(t)]);
    }
    satisfied_.assign(targets_.size(), 0);
    rebuild_index();
}

void ConstraintSet::rebuild_index() {
    std::vector<Vec3> pts;
    std::vector<int> labels;
    for (std::size_t s = 0; s < targets_.size(); ++s) {
        if (!satisfied_[s]) {
            pts.push_back(target_pos_[s]);
            labels.push_back(targets_[s]);
        }
    }
    unsatisfied_index_ = SpatialIndex(pts, labels);
}

std::vector<int> ConstraintSet::unsatisfied() const {
    std::vector<int> out;
    for (std::size_t s = 0; s < targets_.size(); ++s) {
        if (!satisfied_[s]) out.push_back(targets_[s]);
    }
    return out;
}

SnapReport ConstraintSet::snap_pass(TriMesh& mesh, const Adjacency& adj, const SnapConfig& cfg) {
    cfg.validate();
    SnapReport report;

    if (!unsatisfied_index_.empty()) {
        // Slot lookup by mesh vertex index for commit bookkeeping.
        auto slot_of = [&](int target_vertex) {
            const auto it = std::find(targets_.begin(), targets_.end(), target_vertex);
            return static_cast<std::size_t>(it - targets_.begin());
        };

        // Candidate pairs against the pass-start unsatisfied set, then commits
        // in ascending foil-vertex order; a target taken this pass stays taken.
        bool any = false;
        for (int v = 0; v < mesh.vertex_count(); ++v) {
            if (mesh.is_fixed(v)) continue;
            const SpatialIndex::Hit hit =
                unsatisfied_index_.nearest(mesh.positions[static_cast<std::size_t>(v)]);
            if (!(hit.distance < cfg.snapping_tolerance)) continue;
            const std::size_t slot = slot_of(hit.label);
            if (satisfied_[slot]) continue;  // claimed earlier this pass
            mesh.positions[static_cast<std::size_t>(v)] = target_pos_[slot];
            mesh.fixed[static_cast<std::size_t>(v)] = 1;
            satisfied_[slot] = 1;
            ++total_snapped_;
            report.snapped_this_pass.emplace_back(v, targets_[slot]);
            any = true;
        }
        if (any) rebuild_index();

        // Local relaxation: Jacobi rounds of x' = (1-lambda) x + lambda * mean
        // of neighbors, restricted to the non-fixed 1-ring of the vertices
        // snapped this pass. The convex combination keeps each vertex inside
        // the hull of itself and its neighbors.
        if (!report.snapped_this_pass.empty() && cfg.relaxation_rounds > 0) {
            std::vector<int> ring;
            for (const auto& [foil_v, target] : report.snapped_this_pass) {
                (void)target;
                for (int nb : adj.neighbors[static_cast<std::size_t>(foil_v)]) {
                    if (!mesh.is_fixed(nb)) ring.push_back(nb);
                }
            }
            std::sort(ring.begin(), ring.end());
            ring.erase(std::unique(ring.begin(), ring.end()), ring.end());

            for (int round = 0; round < cfg.relaxation_rounds; ++round) {
                std::vector<Vec3> updated;
                updated.reserve(ring.size());
                for (int v : ring) {
                    const auto& nbs = adj.neighbors[static_cast<std::size_t>(v)];
                    Vec3 mean{0.0, 0.0, 0.0};
                    for (int nb : nbs) mean += mesh.positions[static_cast<std::size_t>(nb)];
                    mean = mean / static_cast<double>(nbs.size());
                    const Vec3& x = mesh.positions[static_cast<std::size_t>(v)];
                    updated.push_back(x * (1.0 - cfg.relaxation_lambda) +
                                      mean * cfg.relaxation_lambda);
                }
                for (std::size_t r = 0; r < ring.size(); ++r) {
                    mesh.positions[static_cast<std::size_t>(ring[r])] = updated[r];
                }
            }
        }
    }

    report.total_snapped = total_snapped_;
    report.unsatisfied_fixed = unsatisfied();
    return report;
}

double radius_of_effectiveness(const MaterialParams& params, double d, const SnapConfig& cfg) {
    if (!(d > 0.0)) {
        throw ConfigError("mesh spacing d must be positive, got " + std::to_string(d));
    }
    cfg.validate();
    if (params.distance_factor_strength <= 0.0) return cfg.snapping_tolerance;
    return std::min(99.0 * d / params.distance_factor_strength, cfg.snapping_tolerance);
}

double affected_neighbors(const MaterialParams& params, double d, const SnapConfig& cfg) {
    if (!(d > 0.0)) {
        throw ConfigError("mesh spacing d must be positive, got " + std::to_string(d));
    }
    cfg.validate();
    if (params.distance_factor_strength <= 0.0) return cfg.snapping_tolerance / d;
    return std::min(99.0 / params.distance_factor_strength, cfg.snapping_tolerance / d);
}

}  // namespace foil
