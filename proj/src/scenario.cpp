#include "foil/scenario.hpp"

#include <cmath>

#include "foil/error.hpp"

namespace foil {

BoxVariant box_variant_from_name(const std::string& name) {
    if (name == "lateral") return BoxVariant::lateral;
    if (name == "mixed") return BoxVariant::mixed;
    throw ConfigError("unknown box variant '" + name + "' (use lateral or mixed)");
}

std::vector<Vec3> box_scenario(double side, double inset_fraction, BoxVariant variant) {
    if (!(side > 0.0) || !std::isfinite(side)) {
        throw ConfigError("box side must be positive, got " + std::to_string(side));
    }
    if (!(inset_fraction > 0.0) || inset_fraction > 1.0) {
        throw ConfigError("box inset fraction must lie in (0, 1], got " +
                          std::to_string(inset_fraction));
    }
    const double s = inset_fraction * side / 2.0;
    if (variant == BoxVariant::lateral) {
        return {Vec3{s, 0.0, 0.0}, Vec3{-s, 0.0, 0.0}, Vec3{0.0, s, 0.0}, Vec3{0.0, -s, 0.0}};
    }
    return {Vec3{s, 0.0, 0.0}, Vec3{-s, 0.0, 0.0}, Vec3{0.0, 0.0, s}, Vec3{0.0, 0.0, -s}};
}

}  // namespace foil
