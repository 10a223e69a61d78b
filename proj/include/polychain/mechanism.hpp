#pragma once

#include "polychain/chain.hpp"
#include "polychain/records.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace polychain {

enum class SurfaceType { plane, cylinder, sphere, sampled };
enum class SpecKind { geometric, contact, functional };

struct SurfaceDecl {
    std::string name;
    bool nominal = false;
    SurfaceType type = SurfaceType::plane;
    Vec3 origin = Vec3::Zero();
    Vec3 normal = Vec3::UnitZ();  // plane normal / cylinder axis
    std::optional<Vec3> x_axis;
    double half_a = 1.0, half_b = 1.0;  // plane half-extents
    int nx = 2, ny = 2;                 // plane grid
    double radius = 1.0, half_length = 1.0;
    int n_circ = 8, n_axial = 2;  // cylinder grid
    int count = 8;                // sphere sample count
    std::vector<std::pair<Vec3, Vec3>> samples;  // (point, normal) for sampled surfaces

    Frame frame() const { return Frame::from_normal(origin, normal, x_axis.value_or(Vec3::UnitX())); }
    PlanePatch patch() const { return PlanePatch{frame(), half_a, half_b}; }

    Vec3 center() const {
        if (type != SurfaceType::sampled || samples.empty()) return origin;
        Vec3 c = Vec3::Zero();
        for (const auto& [p, n] : samples) c += p;
        return c / double(samples.size());
    }

    std::vector<SurfaceSample> sample_at(const Vec3& m) const {
        switch (type) {
            case SurfaceType::plane:
                return sample_plane(half_a, half_b, frame(), m, nx, ny);
            case SurfaceType::cylinder:
                return sample_cylinder(radius, half_length, frame(), m, n_circ, n_axial);
            case SurfaceType::sphere:
                return sample_sphere(radius, origin, m, count);
            case SurfaceType::sampled: {
                std::vector<SurfaceSample> out;
                for (const auto& [p, n] : samples) out.push_back({p, n.normalized(), p - m});
                return out;
            }
        }
        throw Error("corrupt surface type");
    }
};

struct PartDecl {
    std::string name;
    std::vector<SurfaceDecl> surfaces;
};

struct SpecDecl {
    std::string name;
    SpecKind kind = SpecKind::geometric;
    std::string target;     // toleranced / moving surface, "part/surface"
    std::string reference;  // datum / reference surface
    double t = 0.0;
    double k = 0.5;
    double D = 0.0;
    double d_nominal = 0.0;
    std::string mating = "auto";  // auto | assume-ok
    double d = 0.0;               // functional zone offset from the datum (metadata)
};

struct MechanismFile {
    std::string units;
    std::optional<double> eps;
    std::optional<Vec3> reduction_point;
    std::vector<PartDecl> parts;
    std::vector<SpecDecl> specs;
    std::string chain;  // optional prefix expression, e.g. "series(g1, ~g2)"

    const SurfaceDecl* find_surface(const std::string& id, const PartDecl** part_out = nullptr) const {
        const auto slash = id.find('/');
        if (slash == std::string::npos) return nullptr;
        const std::string part = id.substr(0, slash), surf = id.substr(slash + 1);
        for (const PartDecl& p : parts) {
            if (p.name != part) continue;
            for (const SurfaceDecl& s : p.surfaces) {
                if (s.name == surf) {
                    if (part_out) *part_out = &p;
                    return &s;
                }
            }
        }
        return nullptr;
    }

    const SpecDecl& functional_spec() const {
        for (const SpecDecl& s : specs)
            if (s.kind == SpecKind::functional) return s;
        throw ValidationError("mechanism has no functional specification");
    }
};

// Default tolerance, overridable through the POLYCHAIN_EPS environment
// variable.
inline double default_eps() {
    if (const char* env = std::getenv("POLYCHAIN_EPS")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0) return v;
    }
    return kDefaultEps;
}

namespace mechdetail {

inline Vec3 vec3_from_json(const Json& a, const std::string& where) {
    if (!a.is_array() || a.size() != 3)
        throw ParseError(where + " must be an array of three numbers");
    return Vec3(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
}

inline Json vec3_to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

// prefix chain notation: ident | ~ident | series(expr, ...) | parallel(expr, ...)
struct ChainParser {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
                text[pos] == '-' || text[pos] == '.'))
            ++pos;
        if (start == pos) throw ParseError("chain expression: identifier expected at offset " +
                                           std::to_string(pos));
        return text.substr(start, pos - start);
    }

    ChainExpr expr() {
        skip_ws();
        if (eat('~')) return ChainExpr::make_leaf(ident(), true);
        const std::string name = ident();
        skip_ws();
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            std::vector<ChainExpr> kids;
            kids.push_back(expr());
            while (eat(',')) kids.push_back(expr());
            if (!eat(')')) throw ParseError("chain expression: expected ')'");
            if (name == "series") return ChainExpr::make_series(std::move(kids));
            if (name == "parallel") return ChainExpr::make_parallel(std::move(kids));
            throw ParseError("chain expression: unknown combinator '" + name + "'");
        }
        return ChainExpr::make_leaf(name);
    }
};

}  // namespace mechdetail

inline ChainExpr parse_chain(const std::string& text) {
    mechdetail::ChainParser p{text};
    ChainExpr e = p.expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw ParseError("chain expression: trailing characters at offset " + std::to_string(p.pos));
    return e;
}

inline MechanismFile mechanism_from_json(const Json& j) {
    MechanismFile m;
    if (!j.contains("units") || !j.at("units").is_string())
        throw ValidationError("mechanism needs a string 'units' tag");
    m.units = j.at("units").get<std::string>();
    if (j.contains("eps")) m.eps = j.at("eps").get<double>();
    if (j.contains("reduction_point"))
        m.reduction_point = mechdetail::vec3_from_json(j.at("reduction_point"), "reduction_point");
    if (j.contains("chain")) m.chain = j.at("chain").get<std::string>();

    for (const Json& pj : j.value("parts", Json::array())) {
        PartDecl part;
        part.name = pj.at("name").get<std::string>();
        for (const Json& sj : pj.value("surfaces", Json::array())) {
            SurfaceDecl s;
            s.name = sj.at("name").get<std::string>();
            const std::string where = "surface '" + part.name + "/" + s.name + "'";
            s.nominal = sj.value("kind", "associated") == std::string("nominal");
            const std::string type = sj.value("type", "plane");
            if (type == "plane") s.type = SurfaceType::plane;
            else if (type == "cylinder") s.type = SurfaceType::cylinder;
            else if (type == "sphere") s.type = SurfaceType::sphere;
            else if (type == "sampled") s.type = SurfaceType::sampled;
            else throw ValidationError(where + ": unknown type '" + type + "'");
            if (sj.contains("origin")) s.origin = mechdetail::vec3_from_json(sj.at("origin"), where);
            if (sj.contains("normal")) s.normal = mechdetail::vec3_from_json(sj.at("normal"), where);
            if (sj.contains("axis")) s.normal = mechdetail::vec3_from_json(sj.at("axis"), where);
            if (sj.contains("x_axis")) s.x_axis = mechdetail::vec3_from_json(sj.at("x_axis"), where);
            if (sj.contains("half_extent")) {
                const Json& he = sj.at("half_extent");
                if (!he.is_array() || he.size() != 2)
                    throw ValidationError(where + ": half_extent must be [a, b]");
                s.half_a = he[0].get<double>();
                s.half_b = he[1].get<double>();
            }
            if (sj.contains("grid")) {
                const Json& g = sj.at("grid");
                if (!g.is_array() || g.size() != 2) throw ValidationError(where + ": grid must be [n1, n2]");
                if (s.type == SurfaceType::cylinder) {
                    s.n_circ = g[0].get<int>();
                    s.n_axial = g[1].get<int>();
                } else {
                    s.nx = g[0].get<int>();
                    s.ny = g[1].get<int>();
                }
            }
            if (sj.contains("radius")) s.radius = sj.at("radius").get<double>();
            if (sj.contains("half_length")) s.half_length = sj.at("half_length").get<double>();
            if (sj.contains("count")) s.count = sj.at("count").get<int>();
            for (const Json& pt : sj.value("samples", Json::array()))
                s.samples.push_back({mechdetail::vec3_from_json(pt.at("point"), where),
                                     mechdetail::vec3_from_json(pt.at("normal"), where)});
            if (s.type == SurfaceType::sampled && s.samples.empty())
                throw ValidationError(where + ": sampled surface needs sample points");
            part.surfaces.push_back(std::move(s));
        }
        m.parts.push_back(std::move(part));
    }

    for (const Json& sj : j.value("specs", Json::array())) {
        SpecDecl s;
        s.name = sj.at("name").get<std::string>();
        const std::string where = "spec '" + s.name + "'";
        const std::string kind = sj.at("kind").get<std::string>();
        if (kind == "geometric") s.kind = SpecKind::geometric;
        else if (kind == "contact") s.kind = SpecKind::contact;
        else if (kind == "functional") s.kind = SpecKind::functional;
        else throw ValidationError(where + ": unknown kind '" + kind + "'");
        const Json& surf = sj.at("surfaces");
        if (!surf.is_array() || surf.size() != 2)
            throw ValidationError(where + ": surfaces must name [target, reference]");
        s.target = surf[0].get<std::string>();
        s.reference = surf[1].get<std::string>();
        s.t = sj.value("t", 0.0);
        s.k = sj.value("k", 0.5);
        s.D = sj.value("D", 0.0);
        s.d_nominal = sj.value("d_nominal", 0.0);
        s.mating = sj.value("mating", "auto");
        s.d = sj.value("d", 0.0);
        if (s.mating != "auto" && s.mating != "assume-ok")
            throw ValidationError(where + ": mating must be 'auto' or 'assume-ok'");
        m.specs.push_back(std::move(s));
    }
    return m;
}

// Structural validation: references resolve, geometric specs stay inside one
// part, contact specs join two parts, and exactly one functional spec exists.
inline void validate_mechanism(const MechanismFile& m) {
    for (const PartDecl& p : m.parts) {
        for (const SurfaceDecl& s : p.surfaces) {
            int seen = 0;
            for (const SurfaceDecl& o : p.surfaces)
                if (o.name == s.name) ++seen;
            if (seen != 1)
                throw ValidationError("duplicate surface '" + p.name + "/" + s.name + "'");
        }
    }
    int functional = 0;
    for (const SpecDecl& s : m.specs) {
        int seen = 0;
        for (const SpecDecl& o : m.specs)
            if (o.name == s.name) ++seen;
        if (seen != 1) throw ValidationError("duplicate spec '" + s.name + "'");

        const PartDecl* pa = nullptr;
        const PartDecl* pb = nullptr;
        if (!m.find_surface(s.target, &pa))
            throw ValidationError("spec '" + s.name + "' references unknown surface '" + s.target + "'");
        if (!m.find_surface(s.reference, &pb))
            throw ValidationError("spec '" + s.name + "' references unknown surface '" + s.reference + "'");
        switch (s.kind) {
            case SpecKind::geometric:
                if (pa->name != pb->name)
                    throw ValidationError("geometric spec '" + s.name +
                                          "' must join surfaces of the same part");
                if (!(s.t > 0.0)) throw ValidationError("spec '" + s.name + "' needs t > 0");
                break;
            case SpecKind::contact:
                if (pa->name == pb->name)
                    throw ValidationError("contact spec '" + s.name +
                                          "' must join surfaces of two distinct parts");
                if (s.D < 0.0) throw ValidationError("spec '" + s.name + "' needs D >= 0");
                break;
            case SpecKind::functional:
                ++functional;
                if (!(s.t > 0.0)) throw ValidationError("spec '" + s.name + "' needs t > 0");
                break;
        }
        if (s.k < 0.0 || s.k > 1.0) throw ValidationError("spec '" + s.name + "' needs k in [0, 1]");
    }
    if (functional != 1)
        throw ValidationError("mechanism needs exactly one functional spec, found " +
                              std::to_string(functional));
}

inline MechanismFile load_mechanism(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    MechanismFile m = mechanism_from_json(j);
    validate_mechanism(m);
    return m;
}

inline Json mechanism_to_json(const MechanismFile& m) {
    Json j;
    j["units"] = m.units;
    if (m.eps) j["eps"] = *m.eps;
    if (m.reduction_point) j["reduction_point"] = mechdetail::vec3_to_json(*m.reduction_point);
    if (!m.chain.empty()) j["chain"] = m.chain;
    Json parts = Json::array();
    for (const PartDecl& p : m.parts) {
        Json pj;
        pj["name"] = p.name;
        Json surfaces = Json::array();
        for (const SurfaceDecl& s : p.surfaces) {
            Json sj;
            sj["name"] = s.name;
            sj["kind"] = s.nominal ? "nominal" : "associated";
            switch (s.type) {
                case SurfaceType::plane:
                    sj["type"] = "plane";
                    sj["origin"] = mechdetail::vec3_to_json(s.origin);
                    sj["normal"] = mechdetail::vec3_to_json(s.normal);
                    sj["half_extent"] = Json::array({s.half_a, s.half_b});
                    sj["grid"] = Json::array({s.nx, s.ny});
                    break;
                case SurfaceType::cylinder:
                    sj["type"] = "cylinder";
                    sj["origin"] = mechdetail::vec3_to_json(s.origin);
                    sj["axis"] = mechdetail::vec3_to_json(s.normal);
                    sj["radius"] = s.radius;
                    sj["half_length"] = s.half_length;
                    sj["grid"] = Json::array({s.n_circ, s.n_axial});
                    break;
                case SurfaceType::sphere:
                    sj["type"] = "sphere";
                    sj["origin"] = mechdetail::vec3_to_json(s.origin);
                    sj["radius"] = s.radius;
                    sj["count"] = s.count;
                    break;
                case SurfaceType::sampled: {
                    sj["type"] = "sampled";
                    Json arr = Json::array();
                    for (const auto& [pt, nm] : s.samples)
                        arr.push_back(Json{{"point", mechdetail::vec3_to_json(pt)},
                                           {"normal", mechdetail::vec3_to_json(nm)}});
                    sj["samples"] = std::move(arr);
                    break;
                }
            }
            if (s.x_axis) sj["x_axis"] = mechdetail::vec3_to_json(*s.x_axis);
            surfaces.push_back(std::move(sj));
        }
        pj["surfaces"] = std::move(surfaces);
        parts.push_back(std::move(pj));
    }
    j["parts"] = std::move(parts);
    Json specs = Json::array();
    for (const SpecDecl& s : m.specs) {
        Json sj;
        sj["name"] = s.name;
        sj["surfaces"] = Json::array({s.target, s.reference});
        switch (s.kind) {
            case SpecKind::geometric:
                sj["kind"] = "geometric";
                sj["t"] = s.t;
                sj["k"] = s.k;
                break;
            case SpecKind::contact:
                sj["kind"] = "contact";
                sj["D"] = s.D;
                sj["d_nominal"] = s.d_nominal;
                sj["mating"] = s.mating;
                break;
            case SpecKind::functional:
                sj["kind"] = "functional";
                sj["t"] = s.t;
                sj["k"] = s.k;
                sj["d"] = s.d;
                break;
        }
        specs.push_back(std::move(sj));
    }
    j["specs"] = std::move(specs);
    return j;
}

struct CompiledSpec {
    std::vector<SurfaceSample> samples;
    std::vector<ConstraintRow> rows;
    ScrewPolytope poly;
    std::optional<MatingReport> mating;
};

// Compiles one specification at the given reduction point. Geometric and
// functional zones sample the target surface; contact rows sample the
// projected overlap of the two patches with the reference surface's outward
// normal.
inline CompiledSpec compile_spec(const MechanismFile& m, const SpecDecl& s, const Vec3& reduction_point,
                                 double eps) {
    const SurfaceDecl* target = m.find_surface(s.target);
    const SurfaceDecl* reference = m.find_surface(s.reference);
    if (!target || !reference) throw ValidationError("spec '" + s.name + "' references unknown surfaces");

    CompiledSpec out;
    switch (s.kind) {
        case SpecKind::geometric:
        case SpecKind::functional: {
            out.samples = target->sample_at(reduction_point);
            const ToleranceSpec zone{s.t, s.k};
            out.rows = s.kind == SpecKind::geometric ? geometric_rows(out.samples, zone, eps)
                                                     : functional_rows(out.samples, zone, eps);
            break;
        }
        case SpecKind::contact: {
            const ContactSpec joint{s.D, s.d_nominal};
            MatingReport rep;
            if (s.mating == "assume-ok") {
                rep = MatingReport::ok();
                out.samples = reference->sample_at(reduction_point);
            } else {
                if (target->type != SurfaceType::plane || reference->type != SurfaceType::plane)
                    throw ValidationError("spec '" + s.name +
                                          "': automatic mating check supports plane pairs only; "
                                          "use mating = \"assume-ok\"");
                rep = check_mating_parallel_planes(target->patch(), reference->patch(), s.d_nominal, eps);
                for (const Vec3& p : plane_overlap_polygon(target->patch(), reference->patch()))
                    out.samples.push_back({p, reference->frame().z, p - reduction_point});
            }
            out.mating = rep;
            out.rows = contact_rows(out.samples, joint, rep, eps);
            break;
        }
    }
    out.poly = rows_to_polytope(out.rows, eps);
    return out;
}

struct EdgeSummary {
    std::string name;
    std::string kind;
    std::string target, reference;
    int dim = 0;
    int vertices = 0;
    int free = 0;
};

struct Report {
    std::string file;
    std::string units;
    double eps = kDefaultEps;
    Vec3 reduction_point = Vec3::Zero();
    std::vector<EdgeSummary> edges;  // sorted by name
    std::string chain_text;
    EdgeSummary calculated;
    EdgeSummary functional;
    std::string verdict;  // satisfied | violated | over-constrained
    double margin = 0.0;
    RequirementCheck check;
    double elapsed_ms = 0.0;  // reported separately, never part of render()

    // Stable plain-text body: identical inputs yield identical bytes.
    std::string render() const {
        std::ostringstream os;
        char buf[64];
        auto num = [&buf](double v) {
            std::snprintf(buf, sizeof(buf), "%.17g", v == 0.0 ? 0.0 : v);
            return std::string(buf);
        };
        os << "file: " << file << "\n";
        os << "units: " << units << "\n";
        os << "eps: " << num(eps) << "\n";
        os << "reduction_point: " << num(reduction_point.x()) << " " << num(reduction_point.y()) << " "
           << num(reduction_point.z()) << "\n";
        os << "edges:\n";
        for (const EdgeSummary& e : edges)
            os << "  " << e.name << " " << e.kind << " " << e.target << " -> " << e.reference
               << " dim=" << e.dim << " vertices=" << e.vertices << " free=" << e.free << "\n";
        os << "chain: " << chain_text << "\n";
        os << "calculated: dim=" << calculated.dim << " vertices=" << calculated.vertices
           << " free=" << calculated.free << "\n";
        os << "functional: dim=" << functional.dim << " vertices=" << functional.vertices
           << " free=" << functional.free << "\n";
        os << "verdict: " << verdict << "\n";
        os << "margin: " << (std::isinf(margin) ? std::string("inf") : num(margin)) << "\n";
        if (check.witness) {
            const auto& w = *check.witness;
            os << "witness_vertex:";
            for (int i = 0; i < w.vertex.size(); ++i) os << " " << num(w.vertex(i));
            os << "\n";
            os << "witness_face_normal:";
            for (int i = 0; i < w.face_normal.size(); ++i) os << " " << num(w.face_normal(i));
            os << "\n";
            os << "witness_face_offset: " << num(w.face_offset) << "\n";
            os << "witness_note: " << w.note << "\n";
        }
        if (check.vacuous)
            os << "note: calculated polytope is empty (assembly over-constrained)\n";
        return os.str();
    }
};

struct RunOptions {
    std::optional<double> eps;
    std::optional<Vec3> reduction_point;
    std::string export_dir;  // when set, edge/calculated/functional records are written there
    std::string file_label;
};

inline EdgeSummary summarize(const std::string& name, const ScrewPolytope& sp) {
    EdgeSummary e;
    e.name = name;
    e.vertices = int(sp.bounded.vertices().size());
    e.free = sp.free.count();
    e.dim = sp.is_empty() || sp.bounded.vertices().empty() ? 0 : dim_of(sp.bounded);
    return e;
}

// Full pipeline: compile every spec, build the graph, derive or parse the
// chain, evaluate, and check the functional requirement.
inline Report run_check(const MechanismFile& m, const RunOptions& opts = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    validate_mechanism(m);

    Report rep;
    rep.file = opts.file_label;
    rep.units = m.units;
    rep.eps = opts.eps ? *opts.eps : (m.eps ? *m.eps : default_eps());

    const SpecDecl& func_spec = m.functional_spec();
    const SurfaceDecl* func_target = m.find_surface(func_spec.target);
    rep.reduction_point = opts.reduction_point ? *opts.reduction_point
                          : m.reduction_point  ? *m.reduction_point
                                               : func_target->center();

    SpecGraph graph;
    for (const PartDecl& p : m.parts)
        for (const SurfaceDecl& s : p.surfaces)
            graph.add_surface(p.name + "/" + s.name, p.name, s.nominal);

    std::map<std::string, CompiledSpec> compiled;
    for (const SpecDecl& s : m.specs) {
        if (s.kind == SpecKind::functional) continue;
        CompiledSpec cs = compile_spec(m, s, rep.reduction_point, rep.eps);
        SpecEdge edge;
        edge.name = s.name;
        edge.kind = s.kind == SpecKind::contact ? EdgeKind::contact : EdgeKind::geometric;
        edge.from = s.target;
        edge.to = s.reference;
        edge.poly = cs.poly;
        graph.add_edge(std::move(edge));

        EdgeSummary es = summarize(s.name, cs.poly);
        es.kind = s.kind == SpecKind::contact ? "contact" : "geometric";
        es.target = s.target;
        es.reference = s.reference;
        rep.edges.push_back(es);
        compiled.emplace(s.name, std::move(cs));
    }
    std::sort(rep.edges.begin(), rep.edges.end(),
              [](const EdgeSummary& a, const EdgeSummary& b) { return a.name < b.name; });

    ChainExpr chain = m.chain.empty() ? paths_between(graph, func_spec.target, func_spec.reference)
                                      : parse_chain(m.chain);
    rep.chain_text = chain.to_string();

    ScrewPolytope calculated = evaluate(graph, chain);
    CompiledSpec func = compile_spec(m, func_spec, rep.reduction_point, rep.eps);

    rep.check = check_requirement(calculated, func.poly, rep.eps);
    rep.margin = rep.check.margin;
    rep.calculated = summarize("calculated", calculated);
    rep.functional = summarize("functional", func.poly);
    if (calculated.is_empty()) rep.verdict = "over-constrained";
    else rep.verdict = rep.check.satisfied ? "satisfied" : "violated";

    if (!opts.export_dir.empty()) {
        auto dump = [&](const std::string& name, const ScrewPolytope& sp) {
            write_text_file(opts.export_dir + "/" + name + ".json", screw_polytope_record(sp).dump(2) + "\n");
            if (!sp.is_empty() && sp.bounded_dim() <= 3)
                write_text_file(opts.export_dir + "/" + name + ".off", to_off(sp.bounded));
        };
        for (const auto& [name, cs] : compiled) dump(name, cs.poly);
        dump("calculated", calculated);
        dump("functional", func.poly);
    }

    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline int exit_code_for(const Report& rep) {
    if (rep.verdict == "satisfied") return 0;
    if (rep.verdict == "violated") return 1;
    return 2;
}

}  // namespace polychain
