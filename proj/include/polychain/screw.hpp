#pragma once

#include "polychain/common.hpp"

namespace polychain {

// Small-displacement screw: linearized rigid displacement with rotation
// vector `rotation` and translation `translation` expressed at the reduction
// point `point`.
struct Screw {
    Vec3 rotation = Vec3::Zero();
    Vec3 translation = Vec3::Zero();
    Vec3 point = Vec3::Zero();
};

// Moves the reduction point: the translation picks up rotation x (new - old).
inline Screw transport(const Screw& s, const Vec3& new_point) {
    Screw out;
    out.rotation = s.rotation;
    out.translation = s.translation + s.rotation.cross(Vec3(new_point - s.point));
    out.point = new_point;
    return out;
}

inline Vec6 screw_components(const Screw& s) {
    Vec6 v;
    v << s.rotation, s.translation;
    return v;
}

}  // namespace polychain
