#pragma once

#include "polychain/common.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace polychain {

inline int rank_of(const Mat& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(m);
    const Vec& s = svd.singularValues();
    if (s.size() == 0) return 0;
    const double cut = tol * std::max(1.0, s(0));
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return r;
}

// Reduced row echelon form with partial pivoting. Zero rows are dropped.
inline Mat rref(Mat a, double tol, std::vector<int>* pivot_cols = nullptr) {
    const int rows = int(a.rows()), cols = int(a.cols());
    if (pivot_cols) pivot_cols->clear();
    int lead = 0;
    std::vector<int> pivots;
    for (int col = 0; col < cols && lead < rows; ++col) {
        int piv = lead;
        double best = std::abs(a(piv, col));
        for (int r = lead + 1; r < rows; ++r) {
            if (std::abs(a(r, col)) > best) {
                best = std::abs(a(r, col));
                piv = r;
            }
        }
        if (best <= tol) continue;
        a.row(lead).swap(a.row(piv));
        a.row(lead) /= a(lead, col);
        for (int r = 0; r < rows; ++r) {
            if (r != lead && std::abs(a(r, col)) > 0.0) a.row(r) -= a(r, col) * a.row(lead);
        }
        pivots.push_back(col);
        ++lead;
    }
    if (pivot_cols) *pivot_cols = pivots;
    return a.topRows(lead);
}

// Modified Gram-Schmidt over the rows; near-dependent rows are dropped.
inline Mat orthonormalize_rows(const Mat& rows, double tol) {
    std::vector<Vec> kept;
    for (int i = 0; i < rows.rows(); ++i) {
        Vec v = rows.row(i).transpose();
        for (const Vec& u : kept) v -= u.dot(v) * u;
        const double n = v.norm();
        if (n > tol) kept.push_back(v / n);
    }
    Mat out(int(kept.size()), rows.cols());
    for (int i = 0; i < int(kept.size()); ++i) out.row(i) = kept[i].transpose();
    return out;
}

// Canonical orthonormal basis of the row space (rows of the result).
// Built from the RREF so axis-aligned spans come out as plain unit vectors
// ordered by pivot column.
inline Mat row_space_basis(const Mat& rows, double tol) {
    if (rows.rows() == 0) return Mat(0, rows.cols());
    Mat r = rref(rows, tol);
    return orthonormalize_rows(r, tol);
}

// Canonical orthonormal basis of the null space of the rows.
inline Mat null_space_basis(const Mat& rows, double tol) {
    const int cols = int(rows.cols());
    if (rows.rows() == 0) return Mat::Identity(cols, cols);
    std::vector<int> pivots;
    Mat r = rref(rows, tol, &pivots);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (int j = 0; j < cols; ++j) {
        if (is_pivot[j]) continue;
        Vec v = Vec::Zero(cols);
        v(j) = 1.0;
        for (int i = 0; i < r.rows(); ++i) v(pivots[i]) = -r(i, j);
        basis.push_back(v);
    }
    Mat out(int(basis.size()), cols);
    for (int i = 0; i < int(basis.size()); ++i) out.row(i) = basis[i].transpose();
    return orthonormalize_rows(out, tol);
}

inline bool lex_less(const Vec& a, const Vec& b, double tol) {
    for (int i = 0; i < a.size() && i < b.size(); ++i) {
        if (std::abs(a(i) - b(i)) <= tol) continue;
        return a(i) < b(i);
    }
    return a.size() < b.size();
}

// Canonical ordering used after every vertex-producing operation, so that
// equality tests between vertex sets are order-free.
inline void sort_points_lex(std::vector<Vec>& pts, double tol) {
    std::sort(pts.begin(), pts.end(), [tol](const Vec& a, const Vec& b) { return lex_less(a, b, tol); });
}

inline bool approx_equal(const Vec& a, const Vec& b, double tol) {
    return a.size() == b.size() && (a - b).lpNorm<Eigen::Infinity>() <= tol;
}

// Set equality of two point lists up to tol (greedy matching).
inline bool same_point_set(std::vector<Vec> a, std::vector<Vec> b, double tol) {
    if (a.size() != b.size()) return false;
    sort_points_lex(a, tol);
    sort_points_lex(b, tol);
    for (size_t i = 0; i < a.size(); ++i)
        if (!approx_equal(a[i], b[i], tol)) return false;
    return true;
}

}  // namespace polychain
