#pragma once

#include "polychain/common.hpp"

#include <cmath>
#include <vector>

namespace polychain {

// Discretization point N of a nominal surface, with the outward unit normal
// and the lever arm from the reduction point M (lever = N - M). Normals point
// to the exterior of the material; that orientation is an input contract.
struct SurfaceSample {
    Vec3 point = Vec3::Zero();
    Vec3 normal = Vec3::UnitZ();
    Vec3 lever = Vec3::Zero();
};

struct Frame {
    Vec3 origin = Vec3::Zero();
    Vec3 x = Vec3::UnitX();
    Vec3 y = Vec3::UnitY();
    Vec3 z = Vec3::UnitZ();

    // Builds a right-handed orthonormal frame with the given z axis.
    static Frame from_normal(const Vec3& origin, const Vec3& normal, const Vec3& x_hint = Vec3::UnitX()) {
        const double n = normal.norm();
        if (!(n > 0.0)) throw DegenerateNormal("frame normal must be nonzero");
        Frame f;
        f.origin = origin;
        f.z = normal / n;
        Vec3 hx = x_hint - x_hint.dot(f.z) * f.z;
        if (hx.norm() < 1e-9) {
            const Vec3 alt = std::abs(f.z.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
            hx = alt - alt.dot(f.z) * f.z;
        }
        f.x = hx.normalized();
        f.y = f.z.cross(f.x);
        return f;
    }
};

// Rectangular plane patch: half-extents along the frame's x and y axes, the
// frame's z axis is the outward normal.
struct PlanePatch {
    Frame frame;
    double half_a = 1.0;
    double half_b = 1.0;
};

// Regular grid over the rectangle including the four corners.
inline std::vector<SurfaceSample> sample_plane(double half_a, double half_b, const Frame& frame,
                                               const Vec3& reduction_point, int nx, int ny) {
    if (!(half_a > 0.0) || !(half_b > 0.0)) throw BadGrid("plane half-extents must be positive");
    if (nx < 2 || ny < 2) throw BadGrid("plane grid needs at least 2x2 points");
    std::vector<SurfaceSample> out;
    out.reserve(size_t(nx) * size_t(ny));
    for (int i = 0; i < nx; ++i) {
        const double u = -half_a + 2.0 * half_a * double(i) / double(nx - 1);
        for (int j = 0; j < ny; ++j) {
            const double v = -half_b + 2.0 * half_b * double(j) / double(ny - 1);
            SurfaceSample s;
            s.point = frame.origin + u * frame.x + v * frame.y;
            s.normal = frame.z;
            s.lever = s.point - reduction_point;
            out.push_back(s);
        }
    }
    return out;
}

inline std::vector<SurfaceSample> sample_plane(const PlanePatch& patch, const Vec3& reduction_point,
                                               int nx = 2, int ny = 2) {
    return sample_plane(patch.half_a, patch.half_b, patch.frame, reduction_point, nx, ny);
}

// Lateral cylinder surface around the frame's z axis; both end circles are
// always included. Normals are radial, pointing away from the axis.
inline std::vector<SurfaceSample> sample_cylinder(double radius, double half_length, const Frame& frame,
                                                  const Vec3& reduction_point, int n_circ = 8,
                                                  int n_axial = 2) {
    if (!(radius > 0.0)) throw BadGrid("cylinder radius must be positive");
    if (n_circ < 3 || n_axial < 2) throw BadGrid("cylinder grid needs n_circ >= 3 and n_axial >= 2");
    std::vector<SurfaceSample> out;
    out.reserve(size_t(n_circ) * size_t(n_axial));
    for (int a = 0; a < n_axial; ++a) {
        const double w = -half_length + 2.0 * half_length * double(a) / double(n_axial - 1);
        for (int i = 0; i < n_circ; ++i) {
            const double th = 2.0 * M_PI * double(i) / double(n_circ);
            const Vec3 radial = std::cos(th) * frame.x + std::sin(th) * frame.y;
            SurfaceSample s;
            s.point = frame.origin + radius * radial + w * frame.z;
            s.normal = radial;
            s.lever = s.point - reduction_point;
            out.push_back(s);
        }
    }
    return out;
}

// Spiral point set over the sphere; the first and last samples sit at the
// +z and -z poles.
inline std::vector<SurfaceSample> sample_sphere(double radius, const Vec3& center,
                                                const Vec3& reduction_point, int count) {
    if (!(radius > 0.0)) throw BadGrid("sphere radius must be positive");
    if (count < 2) throw BadGrid("sphere sampling needs at least 2 points");
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    std::vector<SurfaceSample> out;
    out.reserve(size_t(count));
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - 2.0 * double(i) / double(count - 1);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double th = golden * double(i);
        Vec3 n(r * std::cos(th), r * std::sin(th), z);
        n.normalize();
        SurfaceSample s;
        s.point = center + radius * n;
        s.normal = n;
        s.lever = s.point - reduction_point;
        out.push_back(s);
    }
    return out;
}

namespace clip {

struct P2 {
    double x, y;
};

// Sutherland-Hodgman clip of a convex polygon against the halfplane
// n.(p) <= d.
inline std::vector<P2> clip_halfplane(const std::vector<P2>& poly, double nx, double ny, double d) {
    std::vector<P2> out;
    const int n = int(poly.size());
    for (int i = 0; i < n; ++i) {
        const P2& a = poly[size_t(i)];
        const P2& b = poly[size_t((i + 1) % n)];
        const double ra = nx * a.x + ny * a.y - d;
        const double rb = nx * b.x + ny * b.y - d;
        if (ra <= 0.0) out.push_back(a);
        if ((ra < 0.0 && rb > 0.0) || (ra > 0.0 && rb < 0.0)) {
            const double t = ra / (ra - rb);
            out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
    return out;
}

inline double area(const std::vector<P2>& poly) {
    double s = 0.0;
    const int n = int(poly.size());
    for (int i = 0; i < n; ++i) {
        const P2& a = poly[size_t(i)];
        const P2& b = poly[size_t((i + 1) % n)];
        s += a.x * b.y - b.x * a.y;
    }
    return 0.5 * std::abs(s);
}

}  // namespace clip

// Intersection of the two rectangles projected along the common normal onto
// the reference patch's plane. Returned points lie on the reference plane;
// the polygon is empty when the patches do not overlap.
inline std::vector<Vec3> plane_overlap_polygon(const PlanePatch& moving, const PlanePatch& reference) {
    const Frame& rf = reference.frame;
    std::vector<clip::P2> poly;
    for (double sa : {-1.0, 1.0}) {
        for (double sb : {sa < 0 ? -1.0 : 1.0, sa < 0 ? 1.0 : -1.0}) {
            const Vec3 corner =
                moving.frame.origin + sa * moving.half_a * moving.frame.x + sb * moving.half_b * moving.frame.y;
            const Vec3 rel = corner - rf.origin;
            poly.push_back({rel.dot(rf.x), rel.dot(rf.y)});
        }
    }
    poly = clip::clip_halfplane(poly, 1.0, 0.0, reference.half_a);
    if (!poly.empty()) poly = clip::clip_halfplane(poly, -1.0, 0.0, reference.half_a);
    if (!poly.empty()) poly = clip::clip_halfplane(poly, 0.0, 1.0, reference.half_b);
    if (!poly.empty()) poly = clip::clip_halfplane(poly, 0.0, -1.0, reference.half_b);
    std::vector<Vec3> out;
    out.reserve(poly.size());
    for (const clip::P2& p : poly) out.push_back(rf.origin + p.x * rf.x + p.y * rf.y);
    return out;
}

inline double plane_overlap_area(const PlanePatch& moving, const PlanePatch& reference) {
    const Frame& rf = reference.frame;
    std::vector<clip::P2> poly;
    const std::vector<Vec3> pts = plane_overlap_polygon(moving, reference);
    for (const Vec3& p : pts) {
        const Vec3 rel = p - rf.origin;
        poly.push_back({rel.dot(rf.x), rel.dot(rf.y)});
    }
    return poly.size() >= 3 ? clip::area(poly) : 0.0;
}

}  // namespace polychain
