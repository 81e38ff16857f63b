#pragma once

#include <utility>
#include <vector>

#include "foil/forces.hpp"
#include "foil/mesh.hpp"
#include "foil/spatial.hpp"
#include "foil/vec3.hpp"

namespace foil {

struct SnapConfig {
    double snapping_tolerance = 0.15;  // world units, strict snap-distance bound
    double relaxation_lambda = 0.5;    // in (0, 1)
    int relaxation_rounds = 3;         // >= 0

    void validate() const;
};

struct SnapReport {
    // (foil vertex index, fixed target index) pairs committed this pass.
    std::vector<std::pair<int, int>> snapped_this_pass;
    int total_snapped = 0;  // cumulative over the constraint set's lifetime
    std::vector<int> unsatisfied_fixed;
};

// Tracks which fixed targets have been hit. Targets are the vertices flagged
// fixed when the set is built (the input constraints); vertices that become
// fixed later by snapping are pinned but never attract anything themselves.
class ConstraintSet {
public:
    explicit ConstraintSet(const TriMesh& mesh);

    // One snapping sweep: every non-fixed vertex is paired with its nearest
    // target among those unsatisfied when the pass started; a vertex whose
    // pair distance is below the tolerance snaps (position copied bitwise,
    // fixed flag set) unless a lower-index vertex already claimed the target
    // this pass — losers wait for a later pass. After all commits,
    // relaxation_rounds of neighborhood averaging (weight relaxation_lambda)
    // run on the non-fixed 1-ring of the newly snapped vertices.
    SnapReport snap_pass(TriMesh& mesh, const Adjacency& adj, const SnapConfig& cfg);

    int total_snapped() const { return total_snapped_; }
    std::vector<int> unsatisfied() const;
    std::size_t target_count() const { return targets_.size(); }

private:
    std::vector<int> targets_;       // mesh vertex indices of the input constraints
    std::vector<Vec3> target_pos_;   // captured positions (never move)
    std::vector<uint8_t> satisfied_;
    int total_snapped_ = 0;
    SpatialIndex unsatisfied_index_;  // labels are mesh vertex indices

    void rebuild_index();
};

// Radius inside which stiffness decay matters: min(99 d / strength,
// snapping_tolerance); with zero strength the decay branch is unbounded and
// the tolerance wins.
double radius_of_effectiveness(const MaterialParams& params, double d, const SnapConfig& cfg);

// Influence radius expressed in units of the mesh spacing:
// min(99 / strength, snapping_tolerance / d).
double affected_neighbors(const MaterialParams& params, double d, const SnapConfig& cfg);

}  // namespace foil
