#pragma once

#include "polychain/common.hpp"
#include "polychain/polytope.hpp"
#include "polychain/rows.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polychain {

enum class EdgeKind { geometric, contact };

struct SurfaceNode {
    std::string id;    // "part/surface"
    std::string part;
    bool nominal = false;
};

struct SpecEdge {
    std::string name;
    EdgeKind kind = EdgeKind::geometric;
    std::string from;  // payload bounds the screw of `from` relative to `to`
    std::string to;
    ScrewPolytope poly;
};

// Surfaces-and-specifications graph of a mechanism. Geometric edges connect
// two surfaces of the same part, contact edges surfaces of distinct parts.
class SpecGraph {
public:
    void add_surface(const std::string& id, const std::string& part, bool nominal) {
        if (surfaces_.count(id)) throw ValidationError("duplicate surface '" + id + "'");
        surfaces_[id] = SurfaceNode{id, part, nominal};
    }

    void add_edge(SpecEdge e) {
        const SurfaceNode* a = find_surface(e.from);
        const SurfaceNode* b = find_surface(e.to);
        if (!a || !b)
            throw ValidationError("edge '" + e.name + "' references an unknown surface");
        if (e.kind == EdgeKind::geometric && a->part != b->part)
            throw ValidationError("geometric edge '" + e.name + "' must join surfaces of one part");
        if (e.kind == EdgeKind::contact && a->part == b->part)
            throw ValidationError("contact edge '" + e.name + "' must join surfaces of distinct parts");
        for (const SpecEdge& other : edges_)
            if (other.name == e.name) throw ValidationError("duplicate edge '" + e.name + "'");
        edges_.push_back(std::move(e));
    }

    const SurfaceNode* find_surface(const std::string& id) const {
        auto it = surfaces_.find(id);
        return it == surfaces_.end() ? nullptr : &it->second;
    }
    const SpecEdge* find_edge(const std::string& name) const {
        for (const SpecEdge& e : edges_)
            if (e.name == name) return &e;
        return nullptr;
    }
    const std::vector<SpecEdge>& edges() const { return edges_; }
    const std::map<std::string, SurfaceNode>& surfaces() const { return surfaces_; }

private:
    std::map<std::string, SurfaceNode> surfaces_;
    std::vector<SpecEdge> edges_;
};

// Composition tree: a leaf names an edge (possibly traversed in reverse),
// series and parallel nodes hold at least two children.
struct ChainExpr {
    enum class Kind { leaf, series, parallel };
    Kind kind = Kind::leaf;
    std::string edge;
    bool reversed = false;
    std::vector<ChainExpr> children;

    static ChainExpr make_leaf(std::string name, bool rev = false) {
        ChainExpr e;
        e.kind = Kind::leaf;
        e.edge = std::move(name);
        e.reversed = rev;
        return e;
    }
    static ChainExpr make_series(std::vector<ChainExpr> kids) {
        if (kids.size() < 2) throw ValidationError("series node needs at least two children");
        ChainExpr e;
        e.kind = Kind::series;
        e.children = std::move(kids);
        return e;
    }
    static ChainExpr make_parallel(std::vector<ChainExpr> kids) {
        if (kids.size() < 2) throw ValidationError("parallel node needs at least two children");
        ChainExpr e;
        e.kind = Kind::parallel;
        e.children = std::move(kids);
        return e;
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::leaf:
                return (reversed ? "~" : "") + edge;
            default: {
                std::string s = kind == Kind::series ? "series(" : "parallel(";
                for (size_t i = 0; i < children.size(); ++i)
                    s += (i ? ", " : "") + children[i].to_string();
                return s + ")";
            }
        }
    }
};

namespace chaindetail {

inline void require_composable(const std::vector<ScrewPolytope>& ps) {
    if (ps.empty()) throw Error("composition needs at least one polytope");
    for (const ScrewPolytope& p : ps) {
        if (p.ambient_dim() != ps.front().ambient_dim())
            throw DimensionMismatch(p.ambient_dim(), ps.front().ambient_dim());
        if ((p.reduction_point - ps.front().reduction_point).norm() >
            1e-9 * (1.0 + ps.front().reduction_point.norm()))
            throw ReductionPointMismatch("composition inputs use different reduction points");
    }
}

inline Mat stack_free(const std::vector<ScrewPolytope>& ps, int ambient) {
    int rows = 0;
    for (const ScrewPolytope& p : ps) rows += p.free.count();
    Mat f(rows, ambient);
    int r = 0;
    for (const ScrewPolytope& p : ps)
        for (const Vec& u : p.free.basis) f.row(r++) = u.transpose();
    return f;
}

}  // namespace chaindetail

// Series composition: the free directions of the children are pooled, the
// bounded factors are projected onto the remaining common constrained
// subspace and folded with Minkowski sums.
inline ScrewPolytope compose_series(const std::vector<ScrewPolytope>& ps) {
    chaindetail::require_composable(ps);
    const int ambient = ps.front().ambient_dim();
    double eps = 0.0;
    for (const ScrewPolytope& p : ps) eps = std::max(eps, p.bounded.eps());

    ScrewPolytope out;
    out.reduction_point = ps.front().reduction_point;
    const Mat freestack = chaindetail::stack_free(ps, ambient);
    Mat free_basis = row_space_basis(freestack, eps > 0 ? eps : kDefaultEps);
    out.basis = null_space_basis(free_basis, eps > 0 ? eps : kDefaultEps);
    out.free.dim = ambient;
    for (int i = 0; i < free_basis.rows(); ++i) out.free.basis.push_back(free_basis.row(i).transpose());

    const int k = int(out.basis.rows());
    for (const ScrewPolytope& p : ps) {
        if (p.is_empty()) {
            out.bounded = Polytope::empty(k, eps);
            return out;
        }
    }
    if (k == 0) {
        out.bounded = Polytope::point(Vec(0), eps);
        return out;
    }

    auto project_child = [&](const ScrewPolytope& p) {
        std::vector<Vec> pts;
        pts.reserve(p.bounded.vertices().size());
        if (p.bounded_dim() == 0) {
            pts.push_back(Vec::Zero(k));
        } else {
            for (const Vec& v : p.bounded.vertices()) pts.push_back(out.basis * p.lift(v));
        }
        return Polytope::from_points(k, pts, eps);
    };

    Polytope acc = project_child(ps.front());
    for (size_t i = 1; i < ps.size(); ++i) acc = minkowski_sum(acc, project_child(ps[i]));
    out.bounded = std::move(acc);
    return out;
}

// Parallel composition: every branch constrains its own subspace and is
// unbounded along its free directions, so the intersection is taken over the
// union of the constrained subspaces. Empty is a legal outcome.
inline ScrewPolytope compose_parallel(const std::vector<ScrewPolytope>& branches) {
    if (branches.size() < 2) throw Error("parallel composition needs at least two branches");
    chaindetail::require_composable(branches);
    const int ambient = branches.front().ambient_dim();
    double eps = 0.0;
    for (const ScrewPolytope& p : branches) eps = std::max(eps, p.bounded.eps());

    std::vector<Vec> normals;
    std::vector<double> offsets;
    bool any_empty = false;
    for (const ScrewPolytope& p : branches) {
        if (p.is_empty()) {
            any_empty = true;
            continue;
        }
        for (const Halfspace& h : p.bounded.hrep().halfspaces) {
            normals.push_back(p.basis.transpose() * h.normal);
            offsets.push_back(h.offset);
        }
    }

    ScrewPolytope out;
    out.reduction_point = branches.front().reduction_point;
    Mat nm(int(normals.size()), ambient);
    for (int i = 0; i < int(normals.size()); ++i) nm.row(i) = normals[size_t(i)].transpose();
    out.basis = row_space_basis(nm, eps);
    out.free = free_directions(nm, eps);

    const int k = int(out.basis.rows());
    if (any_empty) {
        out.bounded = Polytope::empty(std::max(k, 1), eps);
        return out;
    }
    if (k == 0) {
        out.bounded = Polytope::point(Vec(0), eps);
        return out;
    }
    std::vector<Halfspace> hs;
    hs.reserve(normals.size());
    for (size_t i = 0; i < normals.size(); ++i)
        hs.emplace_back(out.basis * normals[i], offsets[i]);
    try {
        out.bounded = Polytope::from_hrep(HRep(k, std::move(hs)), eps);
    } catch (const EmptySystem&) {
        out.bounded = Polytope::empty(k, eps);
    }
    return out;
}

// Recursive evaluation of a composition tree over the graph's edge payloads.
inline ScrewPolytope evaluate(const SpecGraph& graph, const ChainExpr& expr) {
    switch (expr.kind) {
        case ChainExpr::Kind::leaf: {
            const SpecEdge* e = graph.find_edge(expr.edge);
            if (!e) throw UnresolvedLeaf("chain references unknown edge '" + expr.edge + "'");
            return expr.reversed ? e->poly.reversed() : e->poly;
        }
        case ChainExpr::Kind::series: {
            std::vector<ScrewPolytope> kids;
            kids.reserve(expr.children.size());
            for (const ChainExpr& c : expr.children) kids.push_back(evaluate(graph, c));
            return compose_series(kids);
        }
        case ChainExpr::Kind::parallel: {
            std::vector<ScrewPolytope> kids;
            kids.reserve(expr.children.size());
            for (const ChainExpr& c : expr.children) kids.push_back(evaluate(graph, c));
            return compose_parallel(kids);
        }
    }
    throw Error("corrupt chain expression");
}

// Simple paths from a to b. One path becomes a series chain; several
// edge-disjoint paths become a parallel of series chains. Paths sharing an
// edge are not supported and must be handled with an explicit expression.
inline ChainExpr paths_between(const SpecGraph& graph, const std::string& a, const std::string& b) {
    if (a == b) throw Error("path endpoints must differ");
    if (!graph.find_surface(a)) throw ValidationError("unknown surface '" + a + "'");
    if (!graph.find_surface(b)) throw ValidationError("unknown surface '" + b + "'");

    struct Step {
        int edge;
        bool forward;
    };
    std::vector<std::vector<Step>> paths;
    std::vector<Step> stack;
    std::vector<std::string> visited{a};

    std::function<void(const std::string&)> dfs = [&](const std::string& node) {
        if (node == b) {
            paths.push_back(stack);
            return;
        }
        for (int i = 0; i < int(graph.edges().size()); ++i) {
            const SpecEdge& e = graph.edges()[size_t(i)];
            std::string next;
            bool forward = false;
            if (e.from == node) {
                next = e.to;
                forward = true;
            } else if (e.to == node) {
                next = e.from;
            } else {
                continue;
            }
            if (std::find(visited.begin(), visited.end(), next) != visited.end()) continue;
            visited.push_back(next);
            stack.push_back({i, forward});
            dfs(next);
            stack.pop_back();
            visited.pop_back();
        }
    };
    dfs(a);

    if (paths.empty()) throw NoPath("no path between '" + a + "' and '" + b + "'");

    std::vector<int> used;
    for (const auto& path : paths) {
        for (const Step& s : path) {
            if (std::find(used.begin(), used.end(), s.edge) != used.end())
                throw SharedEdgeTopology("paths between '" + a + "' and '" + b + "' share an edge");
            used.push_back(s.edge);
        }
    }

    auto path_expr = [&](const std::vector<Step>& path) {
        std::vector<ChainExpr> leaves;
        leaves.reserve(path.size());
        for (const Step& s : path)
            leaves.push_back(ChainExpr::make_leaf(graph.edges()[size_t(s.edge)].name, !s.forward));
        return leaves.size() == 1 ? leaves.front() : ChainExpr::make_series(std::move(leaves));
    };

    if (paths.size() == 1) return path_expr(paths.front());
    std::vector<ChainExpr> branches;
    branches.reserve(paths.size());
    for (const auto& path : paths) branches.push_back(path_expr(path));
    return ChainExpr::make_parallel(std::move(branches));
}

struct RequirementCheck {
    bool satisfied = false;
    // max scaling of the calculated polytope about the functional polytope's
    // vertex centroid that stays inside; >= 1 iff satisfied.
    double margin = 0.0;
    bool vacuous = false;  // calculated polytope was empty
    struct Witness {
        Vec vertex;       // offending calculated screw (world components)
        Vec face_normal;  // violated functional halfspace (world components)
        double face_offset = 0.0;
        std::string note;
    };
    std::optional<Witness> witness;
};

// Inclusion of the calculated polytope inside the functional polytope, with a
// scalar margin anchored at the functional polytope's vertex centroid.
inline RequirementCheck check_requirement(const ScrewPolytope& calculated, const ScrewPolytope& functional,
                                          double eps = kDefaultEps) {
    if (calculated.ambient_dim() != functional.ambient_dim())
        throw DimensionMismatch(calculated.ambient_dim(), functional.ambient_dim());
    if ((calculated.reduction_point - functional.reduction_point).norm() >
        eps * (1.0 + functional.reduction_point.norm()))
        throw ReductionPointMismatch("requirement check needs a common reduction point");
    if (functional.is_empty()) throw EmptyPolytope("functional polytope is empty");

    RequirementCheck rc;
    if (calculated.is_empty()) {
        rc.satisfied = true;
        rc.vacuous = true;
        rc.margin = std::numeric_limits<double>::infinity();
        return rc;
    }

    // A direction that is free for the calculated polytope but constrained by
    // the functional one makes inclusion impossible.
    for (const Vec& f : calculated.free.basis) {
        const Vec in_func = functional.basis * f;
        if (in_func.norm() > 1e-6) {
            rc.satisfied = false;
            rc.margin = 0.0;
            RequirementCheck::Witness w;
            w.vertex = f;
            int worst = 0;
            for (int i = 1; i < int(functional.bounded.hrep().halfspaces.size()); ++i) {
                if (std::abs(functional.bounded.hrep().halfspaces[size_t(i)].normal.dot(in_func)) >
                    std::abs(functional.bounded.hrep().halfspaces[size_t(worst)].normal.dot(in_func)))
                    worst = i;
            }
            const Halfspace& h = functional.bounded.hrep().halfspaces[size_t(worst)];
            w.face_normal = functional.basis.transpose() * h.normal;
            w.face_offset = h.offset;
            w.note = "calculated polytope is unbounded along a direction the functional polytope bounds";
            rc.witness = std::move(w);
            return rc;
        }
    }

    const auto& func_vertices = functional.bounded.vertices();
    const int kf = functional.bounded_dim();
    Vec center = Vec::Zero(kf);
    for (const Vec& v : func_vertices) center += v;
    center /= double(func_vertices.size());

    std::vector<Vec> calc_world;
    if (calculated.bounded_dim() == 0) {
        calc_world.push_back(Vec::Zero(calculated.ambient_dim()));
    } else {
        for (const Vec& v : calculated.bounded.vertices()) calc_world.push_back(calculated.lift(v));
    }

    double scale = 1.0;
    for (const Vec& w : calc_world) scale = std::max(scale, w.lpNorm<Eigen::Infinity>());
    const double tol = eps * scale;

    rc.satisfied = true;
    rc.margin = std::numeric_limits<double>::infinity();
    double worst_violation = -std::numeric_limits<double>::infinity();
    for (const Halfspace& h : functional.bounded.hrep().halfspaces) {
        const double num = h.offset - h.normal.dot(center);
        double den = -std::numeric_limits<double>::infinity();
        const Vec* worst_vertex = nullptr;
        for (const Vec& w : calc_world) {
            const Vec y = functional.basis * w;
            const double d = h.normal.dot(y - center);
            if (d > den) {
                den = d;
                worst_vertex = &w;
            }
        }
        if (den > tol) rc.margin = std::min(rc.margin, num / den);
        const double violation = den - num;  // > 0 when some vertex leaves this face
        if (violation > tol && worst_vertex) {
            rc.satisfied = false;
            if (violation > worst_violation) {
                worst_violation = violation;
                RequirementCheck::Witness w;
                w.vertex = *worst_vertex;
                w.face_normal = functional.basis.transpose() * h.normal;
                w.face_offset = h.offset;
                w.note = "calculated vertex outside functional face";
                rc.witness = std::move(w);
            }
        }
    }
    return rc;
}

}  // namespace polychain
