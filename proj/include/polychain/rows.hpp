#pragma once

#include "polychain/common.hpp"
#include "polychain/polytope.hpp"
#include "polychain/screw.hpp"
#include "polychain/surface.hpp"

#include <string>
#include <utility>
#include <vector>

namespace polychain {

// Tolerance zone of width t around the nominal surface, split by fraction k:
// the admissible normal deviation at every sample is [(k-1)t, kt].
struct ToleranceSpec {
    double width = 0.0;  // t > 0
    double split = 0.5;  // k in [0, 1]

    void validate() const {
        if (!(width > 0.0)) throw ValidationError("tolerance width t must be positive");
        if (split < 0.0 || split > 1.0) throw ValidationError("zone split k must lie in [0, 1]");
    }
};

// Positioning constraint of a joint: the gap at every sample stays within
// [0, max_clearance]; max_clearance = 0 is permanent contact. The nominal
// separation shifts the admissible screw deviation accordingly.
struct ContactSpec {
    double max_clearance = 0.0;      // D >= 0
    double nominal_separation = 0.0;  // d >= 0

    void validate() const {
        if (max_clearance < 0.0) throw ValidationError("contact clearance D must be nonnegative");
        if (nominal_separation < 0.0) throw ValidationError("nominal separation d must be nonnegative");
    }
};

// One double-bounded linear inequality over the six screw components
// (rho_x, rho_y, rho_z, eps_x, eps_y, eps_z) at the reduction point.
struct ConstraintRow {
    Vec6 coeffs = Vec6::Zero();
    double lower = 0.0;
    double upper = 0.0;
    Vec3 point = Vec3::Zero();

    double value(const Screw& s) const {
        const Screw at_m = transport(s, point);
        return coeffs.head<3>().dot(at_m.rotation) + coeffs.tail<3>().dot(at_m.translation);
    }

    // The same linear functional over screws expressed at another reduction
    // point: the translation part is unchanged, the rotation part picks up
    // (new - old) x translation coefficients.
    ConstraintRow at(const Vec3& new_point) const {
        ConstraintRow r = *this;
        const Vec3 shift = point - new_point;
        r.coeffs.head<3>() += shift.cross(Vec3(coeffs.tail<3>()));
        r.point = new_point;
        return r;
    }

    std::pair<Halfspace, Halfspace> halfspaces() const {
        Vec n(kScrewDim);
        n << coeffs;
        return {Halfspace(n, upper), Halfspace(-n, -lower)};
    }
};

struct MatingReport {
    bool satisfied = false;
    std::vector<std::string> reasons;

    static MatingReport ok() { return {true, {}}; }
};

namespace rowdetail {

// Coefficients of ((eps_M + rho x MN) . z_N) over the screw components:
// rotation part MN x z_N, translation part z_N.
inline Vec6 sample_coeffs(const SurfaceSample& s) {
    Vec6 c;
    c << s.lever.cross(s.normal), s.normal;
    return c;
}

inline Vec3 common_reduction_point(const std::vector<SurfaceSample>& samples, double eps) {
    if (samples.empty()) throw EmptySamples();
    const Vec3 m0 = samples.front().point - samples.front().lever;
    for (const SurfaceSample& s : samples) {
        if (std::abs(s.normal.norm() - 1.0) > eps)
            throw DegenerateNormal("sample normal is not unit length");
        const Vec3 m = s.point - s.lever;
        if ((m - m0).norm() > eps * (1.0 + m0.norm()))
            throw ReductionPointMismatch("samples use different reduction points");
    }
    return m0;
}

inline std::vector<ConstraintRow> bounded_rows(const std::vector<SurfaceSample>& samples, double lower,
                                               double upper, double eps) {
    const Vec3 m = common_reduction_point(samples, eps);
    std::vector<ConstraintRow> rows;
    rows.reserve(samples.size());
    for (const SurfaceSample& s : samples) {
        ConstraintRow r;
        r.coeffs = sample_coeffs(s);
        r.lower = lower;
        r.upper = upper;
        r.point = m;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace rowdetail

// One row per sample, bounding the local normal deviation to [(k-1)t, kt].
inline std::vector<ConstraintRow> geometric_rows(const std::vector<SurfaceSample>& samples,
                                                 const ToleranceSpec& spec, double eps = kDefaultEps) {
    spec.validate();
    return rowdetail::bounded_rows(samples, (spec.split - 1.0) * spec.width, spec.split * spec.width, eps);
}

// Contact rows demand a satisfied mating report for the joint that produced
// the samples. The gap bound [0, D] translates to screw deviations in
// [-d_nominal, D - d_nominal].
inline std::vector<ConstraintRow> contact_rows(const std::vector<SurfaceSample>& samples,
                                               const ContactSpec& spec, const MatingReport& mating,
                                               double eps = kDefaultEps) {
    spec.validate();
    if (!mating.satisfied) {
        std::string what = "mating conditions violated:";
        for (const std::string& r : mating.reasons) what += " " + r;
        throw MatingViolated(what);
    }
    return rowdetail::bounded_rows(samples, -spec.nominal_separation,
                                   spec.max_clearance - spec.nominal_separation, eps);
}

// Same mechanics as geometric rows; the rows constrain the relative screw of
// two surfaces that may belong to different parts.
inline std::vector<ConstraintRow> functional_rows(const std::vector<SurfaceSample>& samples,
                                                  const ToleranceSpec& spec, double eps = kDefaultEps) {
    spec.validate();
    return rowdetail::bounded_rows(samples, (spec.split - 1.0) * spec.width, spec.split * spec.width, eps);
}

inline const char* kReasonNotParallel = "cross-product-nonzero";
inline const char* kReasonNotOpposed = "normals-not-opposed";
inline const char* kReasonOverlapNotPlanar = "S-not-planar";

// Mating conditions for a parallel-plane joint: antiparallel outward normals
// and a two-dimensional overlap once the patches are projected onto a common
// plane. A line, point, or empty overlap fails the planarity clause.
inline MatingReport check_mating_parallel_planes(const PlanePatch& plane1, const PlanePatch& plane2,
                                                 double /*nominal_separation*/ = 0.0,
                                                 double eps = kDefaultEps) {
    MatingReport rep;
    const Vec3 z1 = plane1.frame.z;
    const Vec3 z2 = plane2.frame.z;
    if (z1.cross(z2).norm() > 1e3 * eps) rep.reasons.push_back(kReasonNotParallel);
    if (!(z1.dot(z2) < 0.0)) rep.reasons.push_back(kReasonNotOpposed);
    if (rep.reasons.empty()) {
        const double area = plane_overlap_area(plane1, plane2);
        const double min_area = eps * (1.0 + plane1.half_a * plane1.half_b + plane2.half_a * plane2.half_b);
        if (area <= min_area) rep.reasons.push_back(kReasonOverlapNotPlanar);
    }
    rep.satisfied = rep.reasons.empty();
    return rep;
}

// Bounded polytope of admissible screws in the constrained subspace, plus the
// free directions and the subspace embedding. Rows of `basis` map subspace
// coordinates to screw components: world = basis^T * local.
struct ScrewPolytope {
    Polytope bounded;
    Mat basis;  // k x 6, orthonormal rows
    FreeDirections free;
    Vec3 reduction_point = Vec3::Zero();

    int ambient_dim() const { return int(basis.cols()); }
    int bounded_dim() const { return int(basis.rows()); }
    bool is_empty() const { return bounded.is_empty(); }

    Vec lift(const Vec& local) const { return basis.transpose() * local; }
    Vec project(const Vec& world) const { return basis * world; }

    // Payload for the same edge traversed in the opposite direction.
    ScrewPolytope reversed() const {
        ScrewPolytope r = *this;
        r.bounded = bounded.negated();
        return r;
    }
};

// Support value in a world-space direction; free components make it infinite.
inline double world_support(const ScrewPolytope& sp, const Vec& direction) {
    if (sp.is_empty()) throw EmptyPolytope("support of empty screw polytope");
    Vec residual = direction;
    residual -= sp.basis.transpose() * (sp.basis * direction);
    for (const Vec& f : sp.free.basis) residual -= f.dot(direction) * f;
    if (residual.norm() > 1e-9 * (1.0 + direction.norm()))
        throw Error("support direction leaves the polytope's subspace");
    for (const Vec& f : sp.free.basis)
        if (std::abs(f.dot(direction)) > 1e-12 * (1.0 + direction.norm()))
            return std::numeric_limits<double>::infinity();
    if (sp.bounded_dim() == 0) return 0.0;
    return support(sp.bounded, sp.project(direction));
}

// Membership test of a physical screw against the compiled polytope.
inline bool admits_screw(const ScrewPolytope& sp, const Screw& s, double tol) {
    if (sp.is_empty()) return false;
    const Screw at_m = transport(s, sp.reduction_point);
    const Vec world = screw_components(at_m);
    const Vec local = sp.project(world);
    for (const Halfspace& h : sp.bounded.hrep().halfspaces)
        if (h.residual(local) > tol) return false;
    return true;
}

// Converts rows to halfspaces over screw space, splits off the directions no
// row constrains, and enumerates the bounded factor in the remaining
// subspace.
inline ScrewPolytope rows_to_polytope(const std::vector<ConstraintRow>& rows, double eps = kDefaultEps) {
    if (rows.empty()) throw EmptySamples();
    const Vec3 m = rows.front().point;
    Mat normals(int(rows.size()), kScrewDim);
    for (int i = 0; i < int(rows.size()); ++i) {
        const ConstraintRow& r = rows[size_t(i)];
        if ((r.point - m).norm() > eps * (1.0 + m.norm()))
            throw ReductionPointMismatch("rows use different reduction points");
        if (r.lower > r.upper) throw Infeasible("row has lower bound above upper bound");
        if (r.coeffs.norm() <= eps) throw DegenerateNormal("row coefficients are all zero");
        normals.row(i) = r.coeffs.transpose();
    }

    ScrewPolytope sp;
    sp.reduction_point = m;
    sp.basis = row_space_basis(normals, eps);
    sp.free = free_directions(normals, eps);

    const int k = int(sp.basis.rows());
    if (k == 0) {
        sp.bounded = Polytope::point(Vec(0), eps);
        return sp;
    }
    std::vector<Halfspace> hs;
    hs.reserve(2 * rows.size());
    for (const ConstraintRow& r : rows) {
        const Vec local = sp.basis * Vec(r.coeffs);
        hs.emplace_back(local, r.upper);
        hs.emplace_back(-local, -r.lower);
    }
    try {
        sp.bounded = Polytope::from_hrep(HRep(k, std::move(hs)), eps);
    } catch (const EmptySystem&) {
        throw Infeasible("constraint rows admit no screw");
    }
    return sp;
}

}  // namespace polychain
