#pragma once

#include "polychain/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Seidel-style incremental linear programming for the small dimensions used
// here (d <= 6). Every problem is solved inside an explicit bounding box so
// all subproblems stay bounded; callers watch the hit_bound flag to detect
// optima that ran into the synthetic box. The recursion works on raw arrays:
// it sits inside the vertex-enumeration inner loops.

namespace polychain {

struct LpResult {
    enum class Status { optimal, infeasible };
    Status status = Status::infeasible;
    Vec x;
    double value = 0.0;
    bool hit_bound = false;
};

namespace lpdetail {

inline constexpr int kMaxDim = 6;
inline constexpr double kTinyCoeff = 1e-14;

struct RawRow {
    double a[kMaxDim];
    double b;
};

struct Workspace {
    std::vector<RawRow> sub[kMaxDim];
};

// maximize c.x over {rows} intersected with [-bound, bound]^k.
// Returns false when infeasible; fills x (length k) otherwise.
inline bool seidel_raw(const std::vector<RawRow>& rows, int k, const double* c, double bound,
                       double tol, Workspace& ws, int depth, double* x) {
    if (k == 1) {
        double lo = -bound, hi = bound;
        for (const RawRow& r : rows) {
            const double a = r.a[0];
            if (std::abs(a) < kTinyCoeff) {
                if (r.b < -tol * (1.0 + std::abs(r.b))) return false;
                continue;
            }
            const double q = r.b / a;
            if (a > 0.0) hi = std::min(hi, q);
            else lo = std::max(lo, q);
            if (lo > hi + tol * std::max({1.0, std::abs(lo), std::abs(hi)})) return false;
        }
        if (lo > hi) lo = hi = 0.5 * (lo + hi);  // numerically tied interval
        x[0] = (c[0] >= 0.0) ? hi : lo;
        return true;
    }

    for (int j = 0; j < k; ++j) x[j] = c[j] > 0.0 ? bound : (c[j] < 0.0 ? -bound : 0.0);

    for (size_t i = 0; i < rows.size(); ++i) {
        const RawRow& row = rows[i];
        double dot = 0.0, asum = 0.0, xmax = 0.0;
        for (int j = 0; j < k; ++j) {
            dot += row.a[j] * x[j];
            asum += std::abs(row.a[j]);
            xmax = std::max(xmax, std::abs(x[j]));
        }
        if (dot <= row.b + tol * (1.0 + std::abs(row.b) + asum * xmax)) continue;

        // The new optimum lies on row.a x = row.b. Substitute out the
        // variable with the largest coefficient and recurse.
        int p = 0;
        for (int j = 1; j < k; ++j)
            if (std::abs(row.a[j]) > std::abs(row.a[p])) p = j;
        const double ap = row.a[p];
        if (std::abs(ap) < kTinyCoeff) {
            if (row.b < -tol * (1.0 + std::abs(row.b))) return false;
            continue;
        }

        std::vector<RawRow>& sub = ws.sub[size_t(depth)];
        sub.clear();
        sub.reserve(i + 2);
        auto project = [&](const double* ra, double rb) {
            RawRow s;
            int t = 0;
            for (int j = 0; j < k; ++j) {
                if (j == p) continue;
                s.a[t++] = ra[j] - ra[p] * row.a[j] / ap;
            }
            s.b = rb - ra[p] * row.b / ap;
            sub.push_back(s);
        };
        for (size_t q = 0; q < i; ++q) project(rows[q].a, rows[q].b);
        {
            double e[kMaxDim] = {0};
            e[p] = 1.0;
            project(e, bound);
            e[p] = -1.0;
            project(e, bound);
        }

        double cc[kMaxDim];
        {
            int t = 0;
            for (int j = 0; j < k; ++j) {
                if (j == p) continue;
                cc[t++] = c[j] - c[p] * row.a[j] / ap;
            }
        }
        double sx[kMaxDim];
        if (!seidel_raw(sub, k - 1, cc, bound, tol, ws, depth + 1, sx)) return false;

        double xp = row.b / ap;
        int t = 0;
        for (int j = 0; j < k; ++j) {
            if (j == p) continue;
            x[j] = sx[t];
            xp -= row.a[j] / ap * sx[t];
            ++t;
        }
        x[p] = xp;
    }
    return true;
}

}  // namespace lpdetail

// maximize c.x subject to A x <= b and |x_i| <= bound.
// Deterministic: the constraint order is shuffled once with a fixed seed.
inline LpResult lp_maximize(const Mat& A, const Vec& b, const Vec& c, double bound,
                            double tol = 1e-11, std::uint64_t seed = 0x9e3779b97f4a7c15ULL) {
    const int k = int(c.size());
    if (k < 1 || k > lpdetail::kMaxDim) throw Error("lp dimension must lie in [1, 6]");
    std::vector<lpdetail::RawRow> rows(size_t(A.rows()));
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < k; ++j) rows[size_t(i)].a[j] = A(i, j);
        rows[size_t(i)].b = b(i);
    }
    std::mt19937_64 rng(seed ^ (std::uint64_t(A.rows()) << 32) ^ std::uint64_t(k));
    std::shuffle(rows.begin(), rows.end(), rng);

    lpdetail::Workspace ws;
    double x[lpdetail::kMaxDim];
    LpResult res;
    if (!lpdetail::seidel_raw(rows, k, c.data(), bound, tol, ws, 0, x)) return res;
    res.status = LpResult::Status::optimal;
    res.x = Vec(k);
    for (int j = 0; j < k; ++j) res.x(j) = x[j];
    res.value = c.dot(res.x);
    res.hit_bound = res.x.lpNorm<Eigen::Infinity>() >= bound * (1.0 - 1e-9);
    return res;
}

inline bool lp_feasible(const Mat& A, const Vec& b, double bound, double tol = 1e-11) {
    return lp_maximize(A, b, Vec::Zero(A.cols()), bound, tol).status == LpResult::Status::optimal;
}

}  // namespace polychain
