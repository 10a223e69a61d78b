#pragma once

#include "polychain/common.hpp"
#include "polychain/enumerate.hpp"
#include "polychain/linalg.hpp"
#include "polychain/lp.hpp"
#include "polychain/representation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace polychain {

// Extreme points of the feasible set of h, in canonical lexicographic order.
inline VRep vertices_of(const HRep& h, double eps = kDefaultEps) {
    return VRep(h.dim, enumerate_vertices(h.halfspaces, h.dim, eps));
}

// Minimal subsystem of h with the same feasible set. Each halfspace is kept
// only if its slack can be driven past its offset subject to the others.
// Input order of the survivors is preserved.
inline HRep remove_redundant(const HRep& h, double eps = kDefaultEps) {
    const int n = int(h.halfspaces.size());
    if (n == 0) return h;
    const Vec b = h.offset_vector();
    const double bound = 1e7 * (1.0 + b.cwiseAbs().maxCoeff());
    {
        Mat A = h.normal_matrix();
        if (!lp_feasible(A, b, bound)) throw EmptySystem();
    }
    std::vector<bool> kept(size_t(n), true);
    for (int i = 0; i < n; ++i) {
        std::vector<int> others;
        for (int j = 0; j < n; ++j)
            if (j != i && kept[size_t(j)]) others.push_back(j);
        if (others.empty()) continue;
        Mat A(int(others.size()), h.dim);
        Vec bb(int(others.size()));
        for (int t = 0; t < int(others.size()); ++t) {
            A.row(t) = h.halfspaces[size_t(others[size_t(t)])].normal.transpose();
            bb(t) = h.halfspaces[size_t(others[size_t(t)])].offset;
        }
        const Halfspace& hi = h.halfspaces[size_t(i)];
        LpResult r = lp_maximize(A, bb, hi.normal, bound);
        if (r.status == LpResult::Status::optimal && !r.hit_bound &&
            r.value <= hi.offset + eps * (1.0 + std::abs(hi.offset)))
            kept[size_t(i)] = false;
    }
    std::vector<Halfspace> out;
    for (int i = 0; i < n; ++i)
        if (kept[size_t(i)]) out.push_back(h.halfspaces[size_t(i)]);
    return HRep(h.dim, std::move(out));
}

// Keeps the rows that support a facet of the hull of the given points:
// touching set of affine rank >= (hull dim - 1), near-duplicates collapsed.
// Equivalent to LP-based redundancy removal but priced per dot product, for
// the paths where the vertex set is already known.
inline std::vector<Halfspace> prune_by_points(const std::vector<Halfspace>& hs,
                                              const std::vector<Vec>& pts, int dim, double eps) {
    if (hs.empty() || pts.empty()) return hs;
    double mag = 0.0;
    for (const Vec& p : pts) mag = std::max(mag, p.lpNorm<Eigen::Infinity>());
    const double tol = eps * (1.0 + mag);

    int hull_dim = 0;
    if (pts.size() > 1) {
        Mat disp(int(pts.size()) - 1, dim);
        for (int i = 1; i < int(pts.size()); ++i) disp.row(i - 1) = (pts[size_t(i)] - pts[0]).transpose();
        hull_dim = rank_of(disp, eps);
    }

    std::vector<Halfspace> out;
    for (const Halfspace& h : hs) {
        std::vector<const Vec*> tight;
        for (const Vec& p : pts)
            if (std::abs(h.residual(p)) <= tol) tight.push_back(&p);
        if (tight.empty()) continue;
        int trank = 0;
        if (tight.size() > 1) {
            Mat disp(int(tight.size()) - 1, dim);
            for (int i = 1; i < int(tight.size()); ++i)
                disp.row(i - 1) = (*tight[size_t(i)] - *tight[0]).transpose();
            trank = rank_of(disp, eps);
        }
        if (trank < hull_dim - 1) continue;
        bool dup = false;
        for (const Halfspace& g : out) {
            if ((g.normal - h.normal).lpNorm<Eigen::Infinity>() <= eps &&
                std::abs(g.offset - h.offset) <= tol) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(h);
    }
    return out;
}

namespace hulldetail {

// Supporting halfspace of the cloud {y_i} that cuts off the query point, or
// nothing when the query lies inside the hull. The separator comes from the
// polar program max q.z subject to y_i.z <= 1, whose value exceeds 1 exactly
// for outside points.
inline std::optional<Halfspace> separating_support(const Mat& ypts, const Vec& q, double tol) {
    Vec ones = Vec::Ones(ypts.rows());
    LpResult r = lp_maximize(ypts, ones, q, 1e8);
    if (r.status != LpResult::Status::optimal) return std::nullopt;
    if (r.value <= 1.0 + tol) return std::nullopt;
    const double zn = r.x.norm();
    if (!(zn > 0.0)) return std::nullopt;
    return Halfspace(r.x, 1.0);
}

// Facets of the full-dimensional hull of the rows of ypts (centroid at the
// origin). A first candidate set comes from vertex enumeration of the polar;
// because heavily degenerate polars can lose vertices in floating point, the
// candidate hull is then re-enumerated and every candidate vertex is checked
// against the cloud, adding LP-certified supporting cuts until the
// description is tight.
inline std::vector<Halfspace> facets_of_cloud(const Mat& ypts, double eps, double tol) {
    const int r = int(ypts.cols());
    double ymax = 0.0;
    for (int i = 0; i < ypts.rows(); ++i) ymax = std::max(ymax, ypts.row(i).norm());

    std::vector<Halfspace> dual;
    for (int i = 0; i < ypts.rows(); ++i) {
        const Vec y = ypts.row(i).transpose();
        // points essentially at the centroid are interior; their polar rows
        // would only add enormous redundant offsets
        if (y.norm() <= 1e-7 * ymax) continue;
        dual.emplace_back(y, 1.0);
    }
    std::vector<Halfspace> facets;
    for (const Vec& z : enumerate_vertices(dual, r, eps)) {
        if (!(z.norm() > 0.0)) continue;
        facets.emplace_back(z, 1.0);
    }

    for (int round = 0; round < 64; ++round) {
        std::vector<Vec> candidates;
        try {
            candidates = enumerate_vertices(facets, r, eps);
        } catch (const Unbounded& u) {
            std::optional<Halfspace> cut = separating_support(ypts, u.direction, tol);
            if (!cut) throw Error("hull repair failed to bound a recession direction");
            facets.push_back(*cut);
            continue;
        }
        std::vector<Halfspace> cuts;
        for (const Vec& cand : candidates) {
            // candidates that coincide with cloud points are inside
            bool is_cloud_point = false;
            for (int i = 0; i < ypts.rows() && !is_cloud_point; ++i)
                if ((ypts.row(i).transpose() - cand).lpNorm<Eigen::Infinity>() <= 1e-7)
                    is_cloud_point = true;
            if (is_cloud_point) continue;
            std::optional<Halfspace> cut = separating_support(ypts, cand, tol);
            if (!cut) continue;
            bool dup = false;
            for (const Halfspace& c : cuts) {
                if ((c.normal - cut->normal).lpNorm<Eigen::Infinity>() <= 1e-9 &&
                    std::abs(c.offset - cut->offset) <= 1e-9) {
                    dup = true;
                    break;
                }
            }
            if (!dup) cuts.push_back(*cut);
        }
        if (cuts.empty()) return facets;
        facets.insert(facets.end(), cuts.begin(), cuts.end());
    }
    throw Error("hull repair did not converge");
}

}  // namespace hulldetail

// Irredundant facet description of the convex hull of v. When the points span
// only a proper affine subspace, paired halfspaces pin that subspace and the
// facets are enumerated inside it. Facet enumeration goes through the polar
// dual: with the vertex centroid shifted to the origin, facets of the hull
// are exactly the vertices of {z : y_i . z <= 1}.
inline HRep hull_of(const VRep& v, double eps = kDefaultEps) {
    if (v.vertices.empty()) throw EmptyPolytope("hull_of needs at least one point");
    const int d = v.dim;
    if (d == 0) return HRep(0, {});

    double mag = 0.0;
    for (const Vec& p : v.vertices) mag = std::max(mag, p.lpNorm<Eigen::Infinity>());
    const double tol = eps * (1.0 + mag);

    std::vector<Vec> pts = dedupe_points(v.vertices, tol);
    const int n = int(pts.size());
    Vec c = Vec::Zero(d);
    for (const Vec& p : pts) c += p;
    c /= double(n);

    Mat disp(n, d);
    for (int i = 0; i < n; ++i) disp.row(i) = (pts[size_t(i)] - c).transpose();
    Eigen::JacobiSVD<Mat> svd(disp, Eigen::ComputeFullV);
    const Vec& sing = svd.singularValues();
    const double cut = eps * std::max(1.0, sing.size() ? sing(0) : 0.0);
    int r = 0;
    for (int i = 0; i < sing.size(); ++i)
        if (sing(i) > cut) ++r;
    Mat basis = svd.matrixV().leftCols(r);

    std::vector<Halfspace> out;
    for (int j = r; j < d; ++j) {
        Vec w = svd.matrixV().col(j);
        for (int t = 0; t < d; ++t) {
            if (std::abs(w(t)) > tol) {
                if (w(t) < 0) w = -w;
                break;
            }
        }
        out.emplace_back(w, w.dot(c));
        out.emplace_back(-w, -w.dot(c));
    }
    if (r == 0) {
        HRep h(d, std::move(out));
        h.sort_canonical(eps);
        return h;
    }

    if (r == 1) {
        Vec u = basis.col(0);
        for (int t = 0; t < d; ++t) {
            if (std::abs(u(t)) > tol) {
                if (u(t) < 0) u = -u;
                break;
            }
        }
        double ymin = 0.0, ymax = 0.0;
        for (const Vec& p : pts) {
            const double y = u.dot(p - c);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
        out.emplace_back(u, u.dot(c) + ymax);
        out.emplace_back(-u, -(u.dot(c) + ymin));
        HRep h(d, std::move(out));
        h.sort_canonical(eps);
        return h;
    }

    Mat ypts(n, r);
    double ymax_norm = 0.0;
    for (int i = 0; i < n; ++i) {
        ypts.row(i) = (basis.transpose() * (pts[size_t(i)] - c)).transpose();
        ymax_norm = std::max(ymax_norm, ypts.row(i).norm());
    }
    ypts /= ymax_norm;  // work at unit cloud radius
    std::vector<Halfspace> facets = hulldetail::facets_of_cloud(ypts, eps, 10.0 * eps);
    {
        std::vector<Vec> ylist;
        ylist.reserve(size_t(n));
        for (int i = 0; i < n; ++i) ylist.push_back(ypts.row(i).transpose());
        facets = prune_by_points(facets, ylist, r, eps);
    }
    for (const Halfspace& f : facets) {
        const Vec nw = basis * f.normal;
        out.emplace_back(nw, nw.dot(c) + f.offset * ymax_norm);
    }
    HRep h(d, std::move(out));
    h.sort_canonical(eps);
    return h;
}

class Polytope {
public:
    Polytope() = default;

    static Polytope empty(int dim, double eps = kDefaultEps) {
        Polytope p;
        p.dim_ = dim;
        p.eps_ = eps;
        p.empty_ = true;
        if (dim >= 1) {
            std::vector<Halfspace> hs;
            hs.emplace_back(Vec::Unit(dim, 0), -1.0);
            hs.emplace_back(-Vec::Unit(dim, 0), -1.0);
            p.hrep_ = HRep(dim, std::move(hs));
        } else {
            p.hrep_ = HRep(0, {});
        }
        p.vrep_ = VRep(dim, {});
        return p;
    }

    // Throws EmptySystem when infeasible and Unbounded when a recession
    // direction exists.
    static Polytope from_hrep(const HRep& h, double eps = kDefaultEps) {
        Polytope p;
        p.dim_ = h.dim;
        p.eps_ = eps;
        p.vrep_ = vertices_of(h, eps);
        p.hrep_ = HRep(h.dim, prune_by_points(h.halfspaces, p.vrep_.vertices, h.dim, eps));
        p.hrep_.sort_canonical(eps);
        p.empty_ = false;
        return p;
    }

    static Polytope from_points(int dim, const std::vector<Vec>& pts, double eps = kDefaultEps) {
        if (pts.empty()) return empty(dim, eps);
        Polytope p;
        p.dim_ = dim;
        p.eps_ = eps;
        p.empty_ = false;
        if (dim == 0) {
            p.hrep_ = HRep(0, {});
            p.vrep_ = VRep(0, {Vec(0)});
            return p;
        }
        p.hrep_ = hull_of(VRep(dim, pts), eps);

        double mag = 0.0;
        for (const Vec& q : pts) mag = std::max(mag, q.lpNorm<Eigen::Infinity>());
        const double tol = eps * (1.0 + mag);
        std::vector<Vec> uniq = dedupe_points(pts, tol);

        // A point of the hull is extreme exactly when its tight halfspace
        // normals span the full ambient space (subspace-pinning pairs supply
        // the complement directions).
        std::vector<Vec> vertices;
        for (const Vec& q : uniq) {
            std::vector<int> tight;
            for (int i = 0; i < int(p.hrep_.halfspaces.size()); ++i)
                if (std::abs(p.hrep_.halfspaces[size_t(i)].residual(q)) <= tol) tight.push_back(i);
            if (int(tight.size()) < dim) continue;
            Mat nm(int(tight.size()), dim);
            for (int t = 0; t < int(tight.size()); ++t)
                nm.row(t) = p.hrep_.halfspaces[size_t(tight[size_t(t)])].normal.transpose();
            if (rank_of(nm, eps) == dim) vertices.push_back(q);
        }
        sort_points_lex(vertices, tol);
        p.vrep_ = VRep(dim, std::move(vertices));
        return p;
    }

    static Polytope point(const Vec& x, double eps = kDefaultEps) {
        return from_points(int(x.size()), {x}, eps);
    }

    bool is_empty() const { return empty_; }
    int dim() const { return dim_; }
    double eps() const { return eps_; }
    const HRep& hrep() const { return hrep_; }
    const VRep& vrep() const { return vrep_; }
    const std::vector<Vec>& vertices() const { return vrep_.vertices; }

    // {-x : x in P}
    Polytope negated() const {
        Polytope p = *this;
        for (Halfspace& h : p.hrep_.halfspaces) h.normal = -h.normal;
        for (Vec& v : p.vrep_.vertices) v = -v;
        p.hrep_.sort_canonical(eps_);
        sort_points_lex(p.vrep_.vertices, eps_);
        return p;
    }

    Polytope scaled_about(const Vec& center, double lambda) const {
        if (empty_) return *this;
        std::vector<Vec> pts;
        pts.reserve(vrep_.vertices.size());
        for (const Vec& v : vrep_.vertices) pts.push_back(center + lambda * (v - center));
        return from_points(dim_, pts, eps_);
    }

private:
    int dim_ = 0;
    double eps_ = kDefaultEps;
    bool empty_ = true;
    HRep hrep_;
    VRep vrep_;
};

inline Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch(q.dim(), p.dim());
    const double eps = std::max(p.eps(), q.eps());
    if (p.is_empty() || q.is_empty()) return Polytope::empty(p.dim(), eps);
    std::vector<Vec> sums;
    sums.reserve(p.vertices().size() * q.vertices().size());
    for (const Vec& a : p.vertices())
        for (const Vec& b : q.vertices()) sums.push_back(a + b);
    return Polytope::from_points(p.dim(), sums, eps);
}

// Concatenates both halfspace lists and prunes. The empty marker is a legal
// result, not a failure.
inline Polytope intersect(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch(q.dim(), p.dim());
    const double eps = std::max(p.eps(), q.eps());
    if (p.is_empty() || q.is_empty()) return Polytope::empty(p.dim(), eps);
    std::vector<Halfspace> hs = p.hrep().halfspaces;
    hs.insert(hs.end(), q.hrep().halfspaces.begin(), q.hrep().halfspaces.end());
    try {
        return Polytope::from_hrep(HRep(p.dim(), std::move(hs)), eps);
    } catch (const EmptySystem&) {
        return Polytope::empty(p.dim(), eps);
    }
}

// true iff every vertex of inner satisfies every halfspace of outer within eps.
inline bool contains(const Polytope& outer, const Polytope& inner, double eps = kDefaultEps) {
    if (outer.dim() != inner.dim()) throw DimensionMismatch(inner.dim(), outer.dim());
    if (inner.is_empty()) return true;
    if (outer.is_empty()) return false;
    for (const Vec& v : inner.vertices()) {
        const double tol = eps * (1.0 + v.lpNorm<Eigen::Infinity>());
        for (const Halfspace& h : outer.hrep().halfspaces)
            if (h.residual(v) > tol) return false;
    }
    return true;
}

inline double support(const Polytope& p, const Vec& u) {
    if (p.is_empty()) throw EmptyPolytope("support of empty polytope");
    if (int(u.size()) != p.dim()) throw DimensionMismatch(int(u.size()), p.dim());
    if (!(u.norm() > 0.0)) throw Error("support direction must be nonzero");
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec& v : p.vertices()) best = std::max(best, u.dot(v));
    return best;
}

// Dimension of the affine hull of p (0 for a point).
inline int dim_of(const Polytope& p) {
    if (p.is_empty()) throw EmptyPolytope("dim_of empty polytope");
    const auto& vs = p.vertices();
    if (vs.size() <= 1) return 0;
    Mat disp(int(vs.size()) - 1, p.dim());
    for (int i = 1; i < int(vs.size()); ++i) disp.row(i - 1) = (vs[size_t(i)] - vs[0]).transpose();
    return rank_of(disp, p.eps());
}

// Orthonormal basis of the null space of the constraint normals: the
// directions the system leaves unbounded.
inline FreeDirections free_directions(const Mat& normals, double eps = kDefaultEps) {
    FreeDirections f;
    f.dim = int(normals.cols());
    Mat ns = null_space_basis(normals, eps);
    for (int i = 0; i < ns.rows(); ++i) f.basis.push_back(ns.row(i).transpose());
    return f;
}

}  // namespace polychain
