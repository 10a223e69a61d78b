#pragma once

#include "polychain/common.hpp"
#include "polychain/linalg.hpp"
#include "polychain/lp.hpp"
#include "polychain/representation.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

// Vertex enumeration by double description: start from a bounding box of the
// feasible set and insert halfspaces one at a time, keeping the current
// extreme points together with their sets of tight constraints. New vertices
// appear where an edge between a kept and a cut vertex crosses the inserted
// hyperplane; the edge test is the usual combinatorial one (no third vertex's
// tight set contains the common tight set of the pair).

namespace polychain {
namespace ddetail {

struct Bits {
    std::vector<std::uint64_t> w;
    void resize(int nbits) { w.assign(size_t((nbits + 63) / 64), 0); }
    void set(int i) { w[size_t(i >> 6)] |= std::uint64_t(1) << (i & 63); }
    bool test(int i) const { return (w[size_t(i >> 6)] >> (i & 63)) & 1; }

    template <class F>
    void for_each_set(F f) const {
        for (size_t wi = 0; wi < w.size(); ++wi) {
            std::uint64_t word = w[wi];
            while (word) {
                const int bit = __builtin_ctzll(word);
                f(int(wi * 64) + bit);
                word &= word - 1;
            }
        }
    }
};

inline Bits bits_and(const Bits& a, const Bits& b) {
    Bits r;
    r.w.resize(int(a.w.size()) * 64);
    for (size_t i = 0; i < a.w.size(); ++i) r.w[i] = a.w[i] & b.w[i];
    return r;
}

inline int bits_count(const Bits& a) {
    int c = 0;
    for (std::uint64_t v : a.w) c += int(__builtin_popcountll(v));
    return c;
}

// true when sub <= sup as sets
inline bool bits_subset(const Bits& sub, const Bits& sup) {
    for (size_t i = 0; i < sub.w.size(); ++i)
        if (sub.w[i] & ~sup.w[i]) return false;
    return true;
}

// true when (a & b) <= sup, without materializing the intersection
inline bool and_subset(const Bits& a, const Bits& b, const Bits& sup) {
    for (size_t i = 0; i < a.w.size(); ++i)
        if ((a.w[i] & b.w[i]) & ~sup.w[i]) return false;
    return true;
}

struct Node {
    Vec x;
    Bits active;
};

}  // namespace ddetail

// Extreme points of the intersection of the given halfspaces.
// Throws EmptySystem when infeasible and Unbounded when the feasible set has
// a recession direction.
inline std::vector<Vec> enumerate_vertices(const std::vector<Halfspace>& hs, int dim, double eps) {
    using namespace ddetail;
    const int k = dim;
    if (k == 0) return {Vec(0)};

    Mat A(int(hs.size()), k);
    Vec b(int(hs.size()));
    for (int i = 0; i < int(hs.size()); ++i) {
        A.row(i) = hs[i].normal.transpose();
        b(i) = hs[i].offset;
    }

    auto recession_direction = [&]() -> Vec {
        // Nontrivial d with A d <= 0 iff the cone reaches the unit box wall.
        const Vec zero = Vec::Zero(int(hs.size()));
        for (int i = 0; i < k; ++i) {
            for (double s : {1.0, -1.0}) {
                Vec c = Vec::Zero(k);
                c(i) = s;
                LpResult r = lp_maximize(A, zero, c, 1.0);
                if (r.status == LpResult::Status::optimal && r.value > 1e-6) return r.x / r.x.norm();
            }
        }
        return Vec();
    };

    if (hs.empty()) throw Unbounded(Vec::Unit(k, 0));

    // Bounding box of the feasible set, via 2k support LPs.
    const double scale0 = 1.0 + b.cwiseAbs().maxCoeff();
    double synthetic = 1e7 * scale0;
    Vec lo(k), hi(k);
    for (int attempt = 0;; ++attempt) {
        bool suspect = false;
        for (int i = 0; i < k && !suspect; ++i) {
            for (double s : {1.0, -1.0}) {
                Vec c = Vec::Zero(k);
                c(i) = s;
                LpResult r = lp_maximize(A, b, c, synthetic);
                if (r.status != LpResult::Status::optimal) throw EmptySystem();
                if (r.hit_bound) {
                    suspect = true;
                    break;
                }
                if (s > 0) hi(i) = r.value;
                else lo(i) = -r.value;
            }
        }
        if (!suspect) break;
        Vec dir = recession_direction();
        if (dir.size() > 0) throw Unbounded(dir);
        if (attempt >= 2) throw Error("could not bound feasible set (ill conditioned system)");
        synthetic *= 1e3;
    }

    const double extent = (hi - lo).maxCoeff();
    const double margin = 0.25 * (1.0 + extent);
    const double scale = 1.0 + std::max(hi.cwiseAbs().maxCoeff(), lo.cwiseAbs().maxCoeff()) + margin;
    const double tol = eps * scale;

    // Box rows occupy constraint indices [0, 2k); input rows follow.
    const int total = 2 * k + int(hs.size());
    std::vector<Vec> cons_a(static_cast<size_t>(total));
    std::vector<double> cons_b(static_cast<size_t>(total));
    for (int i = 0; i < k; ++i) {
        Vec e = Vec::Zero(k);
        e(i) = 1.0;
        cons_a[size_t(2 * i)] = e;
        cons_b[size_t(2 * i)] = hi(i) + margin;
        cons_a[size_t(2 * i + 1)] = -e;
        cons_b[size_t(2 * i + 1)] = -(lo(i) - margin);
    }
    for (int j = 0; j < int(hs.size()); ++j) {
        cons_a[size_t(2 * k + j)] = hs[size_t(j)].normal;
        cons_b[size_t(2 * k + j)] = hs[size_t(j)].offset;
    }

    std::vector<Node> nodes;
    nodes.reserve(size_t(1) << k);
    for (int mask = 0; mask < (1 << k); ++mask) {
        Node n;
        n.x = Vec(k);
        n.active.resize(total);
        for (int i = 0; i < k; ++i) {
            const bool high = (mask >> i) & 1;
            n.x(i) = high ? hi(i) + margin : lo(i) - margin;
            n.active.set(high ? 2 * i : 2 * i + 1);
        }
        nodes.push_back(std::move(n));
    }

    // Refines an interpolated crossing to the exact solution of its defining
    // equality system; chained interpolation error would otherwise corrupt
    // the tight sets that the adjacency test depends on.
    auto snap = [&](const Vec& estimate, const Bits& tight, int extra) -> Vec {
        std::vector<int> rows;
        for (int q = 0; q < total; ++q)
            if (tight.test(q)) rows.push_back(q);
        rows.push_back(extra);
        Mat A(int(rows.size()), k);
        Vec rhs(int(rows.size()));
        for (int r = 0; r < int(rows.size()); ++r) {
            A.row(r) = cons_a[size_t(rows[size_t(r)])].transpose();
            rhs(r) = cons_b[size_t(rows[size_t(r)])];
        }
        Eigen::ColPivHouseholderQR<Mat> qr(A);
        if (qr.rank() < k) return estimate;
        const Vec solved = qr.solve(rhs);
        if ((solved - estimate).lpNorm<Eigen::Infinity>() > 1e4 * tol) return estimate;
        return solved;
    };

    std::vector<std::vector<int>> incidence;
    for (int j = 0; j < int(hs.size()); ++j) {
        const int idx = 2 * k + j;
        const Vec& a = cons_a[size_t(idx)];
        const double off = cons_b[size_t(idx)];

        std::vector<int> in, on, out;
        std::vector<double> res(nodes.size());
        for (size_t t = 0; t < nodes.size(); ++t) {
            res[t] = a.dot(nodes[t].x) - off;
            if (res[t] > tol) out.push_back(int(t));
            else if (res[t] < -tol) in.push_back(int(t));
            else on.push_back(int(t));
        }
        if (out.empty()) {
            for (int t : on) nodes[size_t(t)].active.set(idx);
            continue;
        }
        if (in.empty() && on.empty()) throw EmptySystem();

        // constraint -> incident vertex ids; candidate partners of a cut
        // vertex then come from counting shared constraints through these
        // lists instead of scanning every (in, out) pair
        incidence.assign(size_t(idx), {});
        for (size_t t = 0; t < nodes.size(); ++t)
            nodes[t].active.for_each_set([&](int q) {
                if (q < idx) incidence[size_t(q)].push_back(int(t));
            });

        std::vector<int> shared(nodes.size());
        std::vector<Node> fresh;
        for (int iw : out) {
            const Node& w = nodes[size_t(iw)];
            std::fill(shared.begin(), shared.end(), 0);
            w.active.for_each_set([&](int q) {
                if (q < idx)
                    for (int t : incidence[size_t(q)]) ++shared[size_t(t)];
            });
            for (int iu : in) {
                if (shared[size_t(iu)] < k - 1) continue;
                const Node& u = nodes[size_t(iu)];
                int sparsest = -1;
                for (size_t wi = 0; wi < u.active.w.size(); ++wi) {
                    std::uint64_t word = u.active.w[wi] & w.active.w[wi];
                    while (word) {
                        const int q = int(wi * 64) + __builtin_ctzll(word);
                        word &= word - 1;
                        if (q >= idx) continue;
                        if (sparsest < 0 ||
                            incidence[size_t(q)].size() < incidence[size_t(sparsest)].size())
                            sparsest = q;
                    }
                }
                bool edge = true;
                if (sparsest >= 0) {
                    for (int t : incidence[size_t(sparsest)]) {
                        if (t == iu || t == iw) continue;
                        if (and_subset(u.active, w.active, nodes[size_t(t)].active)) {
                            edge = false;
                            break;
                        }
                    }
                }
                if (!edge) continue;
                const double s = res[size_t(iu)] / (res[size_t(iu)] - res[size_t(iw)]);
                Vec p = snap(u.x + s * (w.x - u.x), bits_and(u.active, w.active), idx);
                bool dup = false;
                for (const Node& f : fresh) {
                    if (approx_equal(f.x, p, tol)) {
                        dup = true;
                        break;
                    }
                }
                if (dup) continue;
                Node n;
                n.x = std::move(p);
                n.active.resize(total);
                for (int q = 0; q <= idx; ++q) {
                    if (std::abs(cons_a[size_t(q)].dot(n.x) - cons_b[size_t(q)]) <= tol) n.active.set(q);
                }
                fresh.push_back(std::move(n));
            }
        }

        std::vector<Node> next;
        next.reserve(in.size() + on.size() + fresh.size());
        for (int t : in) next.push_back(std::move(nodes[size_t(t)]));
        for (int t : on) {
            nodes[size_t(t)].active.set(idx);
            next.push_back(std::move(nodes[size_t(t)]));
        }
        for (Node& f : fresh) next.push_back(std::move(f));
        nodes = std::move(next);
        if (nodes.empty()) throw EmptySystem();
    }

    // The LP box plus margin strictly contains the polytope, so no surviving
    // vertex may rest on a synthetic wall.
    for (const Node& n : nodes)
        for (int i = 0; i < 2 * k; ++i)
            if (n.active.test(i)) throw Error("vertex on synthetic bounding box (ill conditioned system)");

    std::vector<Vec> pts;
    pts.reserve(nodes.size());
    for (Node& n : nodes) pts.push_back(std::move(n.x));
    pts = dedupe_points(pts, tol);
    sort_points_lex(pts, tol);
    return pts;
}

}  // namespace polychain
