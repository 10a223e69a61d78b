#pragma once

#include "polychain/common.hpp"
#include "polychain/linalg.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace polychain {

// Closed halfspace {x : normal.x <= offset}. The normal is stored with unit
// Euclidean norm; the offset is rescaled to match.
struct Halfspace {
    Vec normal;
    double offset = 0.0;

    Halfspace() = default;
    Halfspace(Vec n, double off) {
        const double len = n.norm();
        if (!(len > 0.0) || !std::isfinite(len))
            throw DegenerateNormal("halfspace normal must have positive finite norm");
        normal = n / len;
        offset = off / len;
    }

    int dim() const { return int(normal.size()); }

    double residual(const Vec& x) const { return normal.dot(x) - offset; }
    bool admits(const Vec& x, double tol) const { return residual(x) <= tol; }

    Halfspace flipped() const {
        Halfspace h;
        h.normal = -normal;
        h.offset = offset;
        return h;
    }
};

inline bool lex_less(const Halfspace& a, const Halfspace& b, double tol) {
    for (int i = 0; i < a.normal.size(); ++i) {
        if (std::abs(a.normal(i) - b.normal(i)) > tol) return a.normal(i) < b.normal(i);
    }
    if (std::abs(a.offset - b.offset) > tol) return a.offset < b.offset;
    return false;
}

struct HRep {
    int dim = 0;
    std::vector<Halfspace> halfspaces;

    HRep() = default;
    HRep(int d, std::vector<Halfspace> hs) : dim(d), halfspaces(std::move(hs)) {
        if (dim < 0 || dim > kScrewDim) throw Error("HRep dimension must be in [0, 6]");
        for (const Halfspace& h : halfspaces)
            if (h.dim() != dim) throw DimensionMismatch(h.dim(), dim);
    }

    Mat normal_matrix() const {
        Mat a(int(halfspaces.size()), dim);
        for (int i = 0; i < int(halfspaces.size()); ++i) a.row(i) = halfspaces[i].normal.transpose();
        return a;
    }
    Vec offset_vector() const {
        Vec b(int(halfspaces.size()));
        for (int i = 0; i < int(halfspaces.size()); ++i) b(i) = halfspaces[i].offset;
        return b;
    }

    void sort_canonical(double tol) {
        std::sort(halfspaces.begin(), halfspaces.end(),
                  [tol](const Halfspace& a, const Halfspace& b) { return lex_less(a, b, tol); });
    }
};

struct VRep {
    int dim = 0;
    std::vector<Vec> vertices;

    VRep() = default;
    VRep(int d, std::vector<Vec> pts) : dim(d), vertices(std::move(pts)) {
        if (dim < 0 || dim > kScrewDim) throw Error("VRep dimension must be in [0, 6]");
        for (const Vec& v : vertices)
            if (int(v.size()) != dim) throw DimensionMismatch(int(v.size()), dim);
    }
};

// Orthonormal directions along which a halfspace system imposes no bound:
// the kinematic degrees of freedom of the joint the system came from.
struct FreeDirections {
    int dim = 0;
    std::vector<Vec> basis;

    int count() const { return int(basis.size()); }
};

inline std::vector<Vec> dedupe_points(const std::vector<Vec>& pts, double tol) {
    std::vector<Vec> out;
    for (const Vec& p : pts) {
        bool seen = false;
        for (const Vec& q : out) {
            if (approx_equal(p, q, tol)) {
                seen = true;
                break;
            }
        }
        if (!seen) out.push_back(p);
    }
    return out;
}

}  // namespace polychain
