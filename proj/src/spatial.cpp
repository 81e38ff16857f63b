#include "foil/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "foil/error.hpp"

namespace foil {

namespace {

double coord(const Vec3& p, int axis) {
    return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}

}  // namespace

SpatialIndex::SpatialIndex(std::vector<Vec3> points, std::vector<int> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
    if (labels_.empty()) {
        labels_.resize(points_.size());
        std::iota(labels_.begin(), labels_.end(), 0);
    }
    if (labels_.size() != points_.size()) {
        throw StructuralError("spatial index: label count does not match point count");
    }
    if (points_.empty()) return;
    std::vector<int> slots(points_.size());
    std::iota(slots.begin(), slots.end(), 0);
    nodes_.reserve(points_.size());
    root_ = build(slots, 0, static_cast<int>(slots.size()), 0);
}

int SpatialIndex::build(std::vector<int>& slots, int begin, int end, int depth) {
    if (begin >= end) return -1;
    const int axis = depth % 3;
    const int mid = begin + (end - begin) / 2;
    std::nth_element(slots.begin() + begin, slots.begin() + mid, slots.begin() + end,
                     [&](int a, int b) {
                         const double ca = coord(points_[a], axis);
                         const double cb = coord(points_[b], axis);
                         return ca < cb || (ca == cb && a < b);
                     });
    const int node_index = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{slots[mid], axis, -1, -1});
    const int left = build(slots, begin, mid, depth + 1);
    const int right = build(slots, mid + 1, end, depth + 1);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return node_index;
}

void SpatialIndex::search(int node, const Vec3& q, int exclude_slot,
                          double& best_d2, int& best_slot) const {
    if (node < 0) return;
    const Node& n = nodes_[node];
    const int slot = n.point;
    if (slot != exclude_slot) {
        const double d2 = distance2(q, points_[slot]);
        if (d2 < best_d2 ||
            (d2 == best_d2 && (best_slot < 0 || labels_[slot] < labels_[best_slot]))) {
            best_d2 = d2;
            best_slot = slot;
        }
    }
    const double delta = coord(q, n.axis) - coord(points_[slot], n.axis);
    const int near_child = delta < 0.0 ? n.left : n.right;
    const int far_child = delta < 0.0 ? n.right : n.left;
    search(near_child, q, exclude_slot, best_d2, best_slot);
    // Equal-distance candidates beyond the split plane may carry a lower
    // label, so only prune on a strictly larger plane distance.
    if (delta * delta > best_d2) return;
    search(far_child, q, exclude_slot, best_d2, best_slot);
}

SpatialIndex::Hit SpatialIndex::nearest(const Vec3& query) const {
    return nearest_excluding(query, -1);
}

SpatialIndex::Hit SpatialIndex::nearest_excluding(const Vec3& query, int exclude_slot) const {
    const int needed = exclude_slot >= 0 ? 2 : 1;
    if (size() < needed) {
        throw DegenerateInputError("spatial index: nearest query needs at least " +
                                   std::to_string(needed) + " points");
    }
    double best_d2 = std::numeric_limits<double>::infinity();
    int best_slot = -1;
    search(root_, query, exclude_slot, best_d2, best_slot);
    return {labels_[best_slot], std::sqrt(best_d2)};
}

SpatialIndex::Hit nearest_fixed(const SpatialIndex& index, const Vec3& query) {
    if (index.empty()) {
        throw DegenerateInputError("nearest_fixed: the fixed set is empty");
    }
    return index.nearest(query);
}

double average_nn_distance(const std::vector<Vec3>& points) {
    if (points.size() < 2) {
        throw DegenerateInputError("average_nn_distance: need at least 2 points");
    }
    const SpatialIndex index(points);
    double sum = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
        sum += index.nearest_excluding(points[i], static_cast<int>(i)).distance;
    }
    return sum / static_cast<double>(points.size());
}

}  // namespace foil
