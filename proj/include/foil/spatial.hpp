#pragma once

#include <utility>
#include <vector>

#include "foil/vec3.hpp"

namespace foil {

// kd-tree over a fixed point set. Queries return exactly what a linear scan
// would: the minimum of (squared distance, label) in lexicographic order, so
// ties always resolve to the lowest label. Immutable after construction;
// concurrent queries are safe.
class SpatialIndex {
public:
    SpatialIndex() = default;

    // `labels` names each point (defaults to 0..n-1); results report labels.
    explicit SpatialIndex(std::vector<Vec3> points, std::vector<int> labels = {});

    bool empty() const { return points_.empty(); }
    int size() const { return static_cast<int>(points_.size()); }

    struct Hit {
        int label = -1;
        double distance = 0.0;
    };

    // Throws DegenerateInputError when the index is empty.
    Hit nearest(const Vec3& query) const;

    // Nearest point whose slot differs from `exclude_slot` (slot = position
    // in the constructor's `points`, not the label). Needs >= 2 points.
    Hit nearest_excluding(const Vec3& query, int exclude_slot) const;

private:
    struct Node {
        int point = -1;  // slot into points_
        int axis = 0;
        int left = -1;
        int right = -1;
    };

    int build(std::vector<int>& slots, int begin, int end, int depth);
    void search(int node, const Vec3& q, int exclude_slot,
                double& best_d2, int& best_slot) const;

    std::vector<Vec3> points_;
    std::vector<int> labels_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

// Nearest constraint target to `query`.
SpatialIndex::Hit nearest_fixed(const SpatialIndex& index, const Vec3& query);

// Mean over all points of the distance to their nearest other point.
// Throws DegenerateInputError for fewer than 2 points.
double average_nn_distance(const std::vector<Vec3>& points);

}  // namespace foil
