#include "polychain/polychain.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace polychain;

Vec3 parse_point(const std::string& text) {
    Vec3 p;
    std::string t = text;
    for (char& c : t)
        if (c == ',') c = ' ';
    std::istringstream is(t);
    if (!(is >> p.x() >> p.y() >> p.z())) throw ParseError("expected reduction point as x,y,z");
    return p;
}

int cmd_check(const std::string& file, const std::string& report_path, const std::string& export_dir,
              std::optional<double> eps, const std::string& reduction_point) {
    MechanismFile mech = load_mechanism(file);
    RunOptions opts;
    opts.eps = eps;
    if (!reduction_point.empty()) opts.reduction_point = parse_point(reduction_point);
    opts.export_dir = export_dir;
    const auto slash = file.find_last_of('/');
    opts.file_label = slash == std::string::npos ? file : file.substr(slash + 1);

    Report rep = run_check(mech, opts);
    const std::string text = rep.render();
    std::cout << text;
    if (!report_path.empty()) write_text_file(report_path, text);
    std::fprintf(stderr, "elapsed_ms: %.3f\n", rep.elapsed_ms);
    return exit_code_for(rep);
}

int cmd_compile(const std::string& file, const std::string& spec_name, const std::string& out_path) {
    MechanismFile mech = load_mechanism(file);
    const SpecDecl* spec = nullptr;
    for (const SpecDecl& s : mech.specs)
        if (s.name == spec_name) spec = &s;
    if (!spec) throw ValidationError("no spec named '" + spec_name + "'");

    const SpecDecl& func = mech.functional_spec();
    const SurfaceDecl* func_target = mech.find_surface(func.target);
    const Vec3 m = mech.reduction_point ? *mech.reduction_point : func_target->center();
    const double eps = mech.eps ? *mech.eps : default_eps();
    CompiledSpec cs = compile_spec(mech, *spec, m, eps);

    std::ostringstream os;
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.12g", v == 0.0 ? 0.0 : v);
        return std::string(buf);
    };
    os << "spec: " << spec->name << "\n";
    os << "surfaces: " << spec->target << " -> " << spec->reference << "\n";
    os << "reduction_point: " << num(m.x()) << " " << num(m.y()) << " " << num(m.z()) << "\n";
    if (cs.mating) {
        os << "mating: " << (cs.mating->satisfied ? "satisfied" : "violated");
        for (const std::string& r : cs.mating->reasons) os << " " << r;
        os << "\n";
    }
    os << "rows: " << cs.rows.size() << "\n";
    for (size_t i = 0; i < cs.rows.size(); ++i) {
        const ConstraintRow& r = cs.rows[i];
        os << "row " << i << ": coeffs=";
        for (int j = 0; j < 6; ++j) os << (j ? " " : "") << num(r.coeffs(j));
        os << " lower=" << num(r.lower) << " upper=" << num(r.upper) << "\n";
    }
    os << "polytope: dim=" << (cs.poly.is_empty() ? 0 : dim_of(cs.poly.bounded))
       << " vertices=" << cs.poly.bounded.vertices().size() << " free=" << cs.poly.free.count() << "\n";
    os << screw_polytope_record(cs.poly).dump(2) << "\n";

    if (out_path.empty()) std::cout << os.str();
    else write_text_file(out_path, os.str());
    return 0;
}

int cmd_export(const std::string& record_path, const std::string& off_path, std::optional<double> cap) {
    ScrewPolytope sp = screw_polytope_from_record(read_json_file(record_path));
    Polytope body = cap ? capped_body(sp, *cap) : sp.bounded;
    write_text_file(off_path, to_off(body));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tolerance analysis with polytopes of small displacements"};
    app.require_subcommand(1);

    std::string file, report_path, export_dir, reduction_point, spec_name, out_path;
    std::string record_path, off_path;
    double eps_value = 0.0, cap_value = 0.0;

    CLI::App* check = app.add_subcommand("check", "verify a mechanism's functional requirement");
    check->add_option("file", file, "mechanism description file")->required();
    check->add_option("--report", report_path, "write the report to this path");
    check->add_option("--export-dir", export_dir, "write polytope records and meshes here");
    CLI::Option* eps_opt = check->add_option("--eps", eps_value, "geometric tolerance");
    check->add_option("--reduction-point", reduction_point, "global reduction point x,y,z");

    CLI::App* compile = app.add_subcommand("compile", "dump one spec's rows and polytope");
    compile->add_option("file", file, "mechanism description file")->required();
    compile->add_option("--spec", spec_name, "spec name")->required();
    compile->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* exportc = app.add_subcommand("export", "convert a polytope record to an OFF mesh");
    exportc->add_option("record", record_path, "polytope record file")->required();
    exportc->add_option("--off", off_path, "output OFF path")->required();
    CLI::Option* cap_opt =
        exportc->add_option("--cap", cap_value, "cap free directions at +/- this value (0 = auto)");

    try {
        app.parse(argc, argv);
        if (check->parsed())
            return cmd_check(file, report_path, export_dir,
                             eps_opt->count() ? std::optional<double>(eps_value) : std::nullopt,
                             reduction_point);
        if (compile->parsed()) return cmd_compile(file, spec_name, out_path);
        if (exportc->parsed())
            return cmd_export(record_path, off_path,
                              cap_opt->count() ? std::optional<double>(cap_value) : std::nullopt);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 3;
}
