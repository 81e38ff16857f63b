#pragma once

#include <string>
#include <vector>

#include "foil/vec3.hpp"

namespace foil {

enum class BoxVariant {
    lateral,  // four side-face centers: (+-s, 0, 0), (0, +-s, 0)
    mixed,    // two side + top/bottom:  (+-s, 0, 0), (0, 0, +-s)
};

BoxVariant box_variant_from_name(const std::string& name);

// Four constraint points at face centers of an origin-centered axis-aligned
// cube, pulled toward the center so each sits at inset_fraction * side/2.
std::vector<Vec3> box_scenario(double side, double inset_fraction,
                               BoxVariant variant = BoxVariant::lateral);

}  // namespace foil
