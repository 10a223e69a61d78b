#pragma once

#include "polychain/chain.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace polychain {

using Json = nlohmann::json;

namespace recdetail {

inline Json vec_to_json(const Vec& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

inline Vec vec_from_json(const Json& a) {
    Vec v(int(a.size()));
    for (int i = 0; i < int(a.size()); ++i) v(i) = a[size_t(i)].get<double>();
    return v;
}

}  // namespace recdetail

// Self-describing record of a polytope: dimension, tolerance, halfspaces, and
// vertices.
inline Json polytope_record(const Polytope& p) {
    Json j;
    j["dim"] = p.dim();
    j["eps"] = p.eps();
    if (p.is_empty()) j["empty"] = true;
    Json hs = Json::array();
    for (const Halfspace& h : p.hrep().halfspaces)
        hs.push_back(Json{{"normal", recdetail::vec_to_json(h.normal)}, {"offset", h.offset}});
    j["halfspaces"] = std::move(hs);
    Json vs = Json::array();
    for (const Vec& v : p.vertices()) vs.push_back(recdetail::vec_to_json(v));
    j["vertices"] = std::move(vs);
    return j;
}

inline Polytope polytope_from_record(const Json& j) {
    if (!j.contains("dim")) throw ParseError("polytope record lacks 'dim'");
    const int dim = j.at("dim").get<int>();
    const double eps = j.value("eps", kDefaultEps);
    if (j.value("empty", false)) return Polytope::empty(dim, eps);
    std::vector<Vec> pts;
    for (const Json& v : j.value("vertices", Json::array())) pts.push_back(recdetail::vec_from_json(v));
    if (!pts.empty()) return Polytope::from_points(dim, pts, eps);
    std::vector<Halfspace> hs;
    for (const Json& h : j.value("halfspaces", Json::array()))
        hs.emplace_back(recdetail::vec_from_json(h.at("normal")), h.at("offset").get<double>());
    if (hs.empty()) throw ParseError("polytope record has neither vertices nor halfspaces");
    return Polytope::from_hrep(HRep(dim, std::move(hs)), eps);
}

// Extended record carrying the screw-space embedding.
inline Json screw_polytope_record(const ScrewPolytope& sp) {
    Json j = polytope_record(sp.bounded);
    Json basis = Json::array();
    for (int i = 0; i < sp.basis.rows(); ++i)
        basis.push_back(recdetail::vec_to_json(sp.basis.row(i).transpose()));
    j["basis"] = std::move(basis);
    Json free = Json::array();
    for (const Vec& f : sp.free.basis) free.push_back(recdetail::vec_to_json(f));
    j["free"] = std::move(free);
    j["reduction_point"] = recdetail::vec_to_json(Vec(sp.reduction_point));
    return j;
}

inline ScrewPolytope screw_polytope_from_record(const Json& j) {
    ScrewPolytope sp;
    sp.bounded = polytope_from_record(j);
    const Json basis = j.value("basis", Json::array());
    const Json free = j.value("free", Json::array());
    int ambient = kScrewDim;
    if (!basis.empty()) ambient = int(basis[0].size());
    else if (!free.empty()) ambient = int(free[0].size());
    sp.basis = Mat(int(basis.size()), ambient);
    for (int i = 0; i < int(basis.size()); ++i)
        sp.basis.row(i) = recdetail::vec_from_json(basis[size_t(i)]).transpose();
    sp.free.dim = ambient;
    for (const Json& f : free) sp.free.basis.push_back(recdetail::vec_from_json(f));
    if (j.contains("reduction_point")) {
        const Vec m = recdetail::vec_from_json(j.at("reduction_point"));
        if (m.size() == 3) sp.reduction_point = Vec3(m(0), m(1), m(2));
    }
    if (sp.basis.rows() == 0 && !sp.bounded.is_empty())
        sp.basis = Mat::Identity(sp.bounded.dim(), sp.bounded.dim());
    return sp;
}

// Constraint rows share the record idiom.
inline Json rows_record(const std::vector<ConstraintRow>& rows) {
    Json j;
    if (!rows.empty()) j["reduction_point"] = recdetail::vec_to_json(Vec(rows.front().point));
    Json arr = Json::array();
    for (const ConstraintRow& r : rows)
        arr.push_back(Json{{"coeffs", recdetail::vec_to_json(Vec(r.coeffs))},
                           {"lower", r.lower},
                           {"upper", r.upper}});
    j["rows"] = std::move(arr);
    return j;
}

namespace offdetail {

inline std::string fmt_coord(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x == 0.0 ? 0.0 : x);  // normalize -0
    return buf;
}

// Orders the face's vertex indices counterclockwise as seen from outside
// (looking against the outward normal), starting at the smallest index.
inline std::vector<int> order_face(const std::vector<Vec>& verts, const std::vector<int>& idx,
                                   const Vec& normal) {
    const Vec3 nn(normal(0), normal(1), normal(2));
    Vec3 center = Vec3::Zero();
    for (int i : idx) center += Vec3(verts[size_t(i)](0), verts[size_t(i)](1), verts[size_t(i)](2));
    center /= double(idx.size());
    const Vec3 ref = std::abs(nn.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 t1 = nn.cross(ref).normalized();
    const Vec3 t2 = nn.cross(t1);  // (t1, t2, nn) right-handed
    std::vector<std::pair<double, int>> ang;
    for (int i : idx) {
        const Vec3 d = Vec3(verts[size_t(i)](0), verts[size_t(i)](1), verts[size_t(i)](2)) - center;
        ang.push_back({std::atan2(t2.dot(d), t1.dot(d)), i});
    }
    std::sort(ang.begin(), ang.end());
    std::vector<int> out;
    for (auto& [a, i] : ang) out.push_back(i);
    // rotate so the face starts at its smallest vertex index
    int best = 0;
    for (int i = 1; i < int(out.size()); ++i)
        if (out[size_t(i)] < out[size_t(best)]) best = i;
    std::rotate(out.begin(), out.begin() + best, out.end());
    return out;
}

}  // namespace offdetail

// ASCII OFF mesh of a polytope of dimension at most 3. Coordinates of lower
// ambient dimensions are padded with zeros. Faces are emitted with
// counterclockwise winding seen from outside.
inline std::string to_off(const Polytope& p) {
    if (p.dim() > 3) throw DimTooHighForOFF(p.dim());
    if (p.is_empty()) return "OFF\n0 0 0\n";

    std::vector<Vec> verts;
    for (const Vec& v : p.vertices()) {
        Vec w = Vec::Zero(3);
        w.head(v.size()) = v;
        verts.push_back(w);
    }
    const int n = int(verts.size());
    const int k = dim_of(p);

    std::vector<std::vector<int>> faces;
    if (k == 2) {
        // single polygon: orient against the plane's canonical normal
        Mat disp(n, 3);
        Vec c = Vec::Zero(3);
        for (const Vec& v : verts) c += v;
        c /= double(n);
        for (int i = 0; i < n; ++i) disp.row(i) = (verts[size_t(i)] - c).transpose();
        Eigen::JacobiSVD<Mat> svd(disp, Eigen::ComputeFullV);
        Vec normal = svd.matrixV().col(2);
        for (int t = 0; t < 3; ++t) {
            if (std::abs(normal(t)) > 1e-12) {
                if (normal(t) < 0) normal = -normal;
                break;
            }
        }
        std::vector<int> all(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) all[size_t(i)] = i;
        faces.push_back(offdetail::order_face(verts, all, normal));
    } else if (k == 3) {
        const double tol = p.eps() * 100.0 + 1e-12;
        for (const Halfspace& h : p.hrep().halfspaces) {
            Vec normal = Vec::Zero(3);
            normal.head(h.normal.size()) = h.normal;
            std::vector<int> tight;
            for (int i = 0; i < n; ++i) {
                double scale = 1.0 + verts[size_t(i)].lpNorm<Eigen::Infinity>();
                if (std::abs(normal.dot(verts[size_t(i)]) - h.offset) <= tol * scale) tight.push_back(i);
            }
            if (int(tight.size()) >= 3) faces.push_back(offdetail::order_face(verts, tight, normal));
        }
    }

    int edge_count = 0;
    {
        std::vector<std::pair<int, int>> seen;
        for (const auto& f : faces) {
            for (size_t i = 0; i < f.size(); ++i) {
                int a = f[i], b = f[(i + 1) % f.size()];
                if (a > b) std::swap(a, b);
                if (std::find(seen.begin(), seen.end(), std::make_pair(a, b)) == seen.end())
                    seen.push_back({a, b});
            }
        }
        edge_count = int(seen.size());
    }

    std::string out = "OFF\n";
    out += std::to_string(n) + " " + std::to_string(faces.size()) + " " + std::to_string(edge_count) + "\n";
    for (const Vec& v : verts) {
        out += offdetail::fmt_coord(v(0));
        out += " ";
        out += offdetail::fmt_coord(v(1));
        out += " ";
        out += offdetail::fmt_coord(v(2));
        out += "\n";
    }
    for (const auto& f : faces) {
        out += std::to_string(f.size());
        for (int i : f) out += " " + std::to_string(i);
        out += "\n";
    }
    return out;
}

// Bounded display body for a polytope with free directions: the free
// coefficients are capped at +/- cap and appended as extra coordinates.
// cap <= 0 picks ten times the largest bounded extent.
inline Polytope capped_body(const ScrewPolytope& sp, double cap) {
    const int k = sp.bounded_dim();
    const int f = sp.free.count();
    if (sp.is_empty()) return Polytope::empty(std::max(1, k + f), sp.bounded.eps());
    if (f == 0) return sp.bounded;
    if (cap <= 0.0) {
        double extent = 0.0;
        for (const Vec& v : sp.bounded.vertices()) extent = std::max(extent, v.lpNorm<Eigen::Infinity>());
        cap = extent > 0.0 ? 10.0 * extent : 1.0;
    }
    std::vector<Vec> pts;
    const auto& base = sp.bounded.vertices();
    std::vector<Vec> seeds = base.empty() ? std::vector<Vec>{Vec::Zero(0)} : base;
    for (const Vec& v : seeds) {
        for (int mask = 0; mask < (1 << f); ++mask) {
            Vec w(k + f);
            w.head(k) = v;
            for (int i = 0; i < f; ++i) w(k + i) = (mask >> i) & 1 ? cap : -cap;
            pts.push_back(w);
        }
    }
    return Polytope::from_points(k + f, pts, sp.bounded.eps());
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid record: ") + e.what());
    }
}

}  // namespace polychain
