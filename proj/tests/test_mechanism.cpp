#include "polychain/mechanism.hpp"

#include <catch2/catch.hpp>
#include <cstdlib>
#include <filesystem>

#ifndef MECHANISMS_DIR
#define MECHANISMS_DIR "mechanisms"
#endif

using namespace polychain;

namespace {

std::string mech_path(const std::string& name) { return std::string(MECHANISMS_DIR) + "/" + name; }

}  // namespace

TEST_CASE("chain expression parser", "[mechanism]") {
    ChainExpr e = parse_chain("series(g22, ~g21, c1, g11, ~g12)");
    REQUIRE(e.kind == ChainExpr::Kind::series);
    REQUIRE(e.children.size() == 5);
    CHECK(e.children[1].reversed);
    CHECK(e.to_string() == "series(g22, ~g21, c1, g11, ~g12)");

    ChainExpr p = parse_chain("parallel(series(a, b), series(c, d))");
    REQUIRE(p.kind == ChainExpr::Kind::parallel);
    CHECK(p.to_string() == "parallel(series(a, b), series(c, d))");

    CHECK_THROWS_AS(parse_chain("series(a)"), ValidationError);
    CHECK_THROWS_AS(parse_chain("loop(a, b)"), ParseError);
    CHECK_THROWS_AS(parse_chain("series(a, b) trailing"), ParseError);
}

TEST_CASE("loading the shipped series mechanism", "[mechanism]") {
    MechanismFile m = load_mechanism(mech_path("fig8.mech"));
    CHECK(m.units == "mm");
    CHECK(m.parts.size() == 2);
    int geometric = 0, contact = 0, functional = 0;
    for (const SpecDecl& s : m.specs) {
        if (s.kind == SpecKind::geometric) ++geometric;
        if (s.kind == SpecKind::contact) ++contact;
        if (s.kind == SpecKind::functional) ++functional;
    }
    CHECK(geometric == 4);
    CHECK(contact == 1);
    CHECK(functional == 1);
}

TEST_CASE("validation diagnoses bad references and placement", "[mechanism]") {
    MechanismFile m = load_mechanism(mech_path("fig8.mech"));

    MechanismFile unknown = m;
    unknown.specs[0].target = "p2/nope";
    try {
        validate_mechanism(unknown);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("p2/nope") != std::string::npos);
    }

    // a contact between two surfaces of one part is rejected
    MechanismFile bad_contact = m;
    for (SpecDecl& s : bad_contact.specs)
        if (s.kind == SpecKind::contact) s.target = "p1/S12";
    CHECK_THROWS_AS(validate_mechanism(bad_contact), ValidationError);

    MechanismFile two_functional = m;
    SpecDecl extra = two_functional.functional_spec();
    extra.name = "req2";
    two_functional.specs.push_back(extra);
    CHECK_THROWS_AS(validate_mechanism(two_functional), ValidationError);

    CHECK_THROWS_AS(load_mechanism(mech_path("missing.mech")), ParseError);
}

TEST_CASE("mechanism JSON round trip", "[mechanism]") {
    MechanismFile m = load_mechanism(mech_path("fig8.mech"));
    MechanismFile back = mechanism_from_json(mechanism_to_json(m));
    validate_mechanism(back);
    CHECK(mechanism_to_json(back) == mechanism_to_json(m));
}

TEST_CASE("run_check on the satisfied series mechanism", "[mechanism]") {
    MechanismFile m = load_mechanism(mech_path("fig8.mech"));
    RunOptions opts;
    opts.file_label = "fig8.mech";
    Report rep = run_check(m, opts);
    CHECK(rep.verdict == "satisfied");
    CHECK(rep.chain_text == "series(g22, ~g21, c1, g11, ~g12)");
    CHECK(rep.margin == Approx(0.8 / 0.7).margin(1e-9));
    // the report carries the check's margin bit for bit
    CHECK(rep.margin == rep.check.margin);
    CHECK(rep.edges.size() == 5);
    CHECK(rep.reduction_point.z() == Approx(20.0));
    // the permanent contact edge is a point with three degrees of freedom
    bool saw_contact = false;
    for (const EdgeSummary& e : rep.edges) {
        if (e.name == "c1") {
            saw_contact = true;
            CHECK(e.dim == 0);
            CHECK(e.vertices == 1);
            CHECK(e.free == 3);
        }
    }
    CHECK(saw_contact);

    // identical inputs render identical bytes
    Report rep2 = run_check(m, opts);
    CHECK(rep.render() == rep2.render());
}

TEST_CASE("run_check flags the violated and over-constrained variants", "[mechanism]") {
    MechanismFile tight = load_mechanism(mech_path("fig8_tight.mech"));
    Report rep = run_check(tight, {});
    CHECK(rep.verdict == "violated");
    CHECK(rep.margin == Approx(0.6 / 0.7).margin(1e-9));
    REQUIRE(rep.check.witness.has_value());
    CHECK(exit_code_for(rep) == 1);

    MechanismFile over = load_mechanism(mech_path("fig10_over.mech"));
    Report orep = run_check(over, {});
    CHECK(orep.verdict == "over-constrained");
    CHECK(orep.check.vacuous);
    CHECK(std::isinf(orep.margin));
    CHECK(exit_code_for(orep) == 2);
    CHECK(orep.chain_text.substr(0, 9) == "parallel(");
}

TEST_CASE("explicit chain expressions override path derivation", "[mechanism]") {
    MechanismFile m = load_mechanism(mech_path("fig8.mech"));
    m.chain = "series(g22, ~g21, c1, g11, ~g12)";
    Report rep = run_check(m, {});
    CHECK(rep.verdict == "satisfied");
    CHECK(rep.margin == Approx(0.8 / 0.7).margin(1e-9));
}

TEST_CASE("eps resolution prefers explicit options", "[mechanism]") {
    MechanismFile m = load_mechanism(mech_path("fig8.mech"));
    RunOptions opts;
    opts.eps = 1e-7;
    Report rep = run_check(m, opts);
    CHECK(rep.eps == Approx(1e-7));
    m.eps = 1e-8;
    Report rep2 = run_check(m, {});
    CHECK(rep2.eps == Approx(1e-8));
}

TEST_CASE("environment variable overrides the default tolerance", "[mechanism]") {
    setenv("POLYCHAIN_EPS", "2.5e-10", 1);
    CHECK(default_eps() == Approx(2.5e-10));
    setenv("POLYCHAIN_EPS", "garbage", 1);
    CHECK(default_eps() == Approx(kDefaultEps));
    unsetenv("POLYCHAIN_EPS");
    CHECK(default_eps() == Approx(kDefaultEps));
}

TEST_CASE("export directory receives records and meshes", "[mechanism]") {
    MechanismFile m = load_mechanism(mech_path("fig8.mech"));
    const std::string dir = "export_test_dir";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directory(dir);
    RunOptions opts;
    opts.export_dir = dir;
    run_check(m, opts);
    CHECK(std::filesystem::exists(dir + "/calculated.json"));
    CHECK(std::filesystem::exists(dir + "/functional.json"));
    CHECK(std::filesystem::exists(dir + "/g11.json"));
    CHECK(std::filesystem::exists(dir + "/calculated.off"));

    // the exported record reloads as the same polytope
    ScrewPolytope calc = screw_polytope_from_record(read_json_file(dir + "/calculated.json"));
    CHECK(calc.bounded_dim() == 3);
    CHECK(calc.free.count() == 3);
    std::filesystem::remove_all(dir);
}

TEST_CASE("cylinder and sphere zones compile through the pipeline", "[mechanism]") {
    MechanismFile m;
    m.units = "mm";
    PartDecl part;
    part.name = "p1";
    SurfaceDecl datum;
    datum.name = "ref";
    datum.nominal = true;
    part.surfaces.push_back(datum);
    SurfaceDecl pin;
    pin.name = "pin";
    pin.type = SurfaceType::cylinder;
    pin.origin = Vec3(0, 0, 0);
    pin.normal = Vec3::UnitZ();
    pin.radius = 0.5;
    pin.half_length = 2.0;
    part.surfaces.push_back(pin);
    SurfaceDecl ball;
    ball.name = "ball";
    ball.type = SurfaceType::sphere;
    ball.origin = Vec3(0, 0, 5);
    ball.radius = 1.0;
    ball.count = 10;
    part.surfaces.push_back(ball);
    m.parts.push_back(part);

    SpecDecl zone;
    zone.name = "gpin";
    zone.kind = SpecKind::geometric;
    zone.target = "p1/pin";
    zone.reference = "p1/ref";
    zone.t = 0.1;
    CompiledSpec pin_spec = compile_spec(m, zone, Vec3::Zero(), 1e-9);
    // radial normals constrain {rx, ry, ex, ey}; rz and ez stay free
    CHECK(pin_spec.poly.bounded_dim() == 4);
    CHECK(pin_spec.poly.free.count() == 2);
    for (const Vec& f : pin_spec.poly.free.basis) {
        CHECK(std::abs(f(0)) < 1e-9);
        CHECK(std::abs(f(1)) < 1e-9);
        CHECK(std::abs(f(3)) < 1e-9);
        CHECK(std::abs(f(4)) < 1e-9);
    }

    zone.name = "gball";
    zone.target = "p1/ball";
    CompiledSpec ball_spec = compile_spec(m, zone, Vec3(0, 0, 5), 1e-9);
    // normals through the center: rotations stay free, translations bounded
    CHECK(ball_spec.poly.bounded_dim() == 3);
    CHECK(ball_spec.poly.free.count() == 3);
}

TEST_CASE("sampled surfaces feed rows directly", "[mechanism]") {
    MechanismFile m;
    m.units = "mm";
    PartDecl part;
    part.name = "p1";
    SurfaceDecl datum;
    datum.name = "ref";
    datum.nominal = true;
    part.surfaces.push_back(datum);
    SurfaceDecl free_form;
    free_form.name = "patch";
    free_form.type = SurfaceType::sampled;
    free_form.samples = {{Vec3(0, 0, 0), Vec3::UnitZ()},
                         {Vec3(1, 0, 0.1), Vec3(0.1, 0, 1).normalized()},
                         {Vec3(0, 1, 0.1), Vec3(0, 0.1, 1).normalized()}};
    part.surfaces.push_back(free_form);
    m.parts.push_back(part);

    SpecDecl zone;
    zone.name = "g";
    zone.kind = SpecKind::geometric;
    zone.target = "p1/patch";
    zone.reference = "p1/ref";
    zone.t = 0.2;
    CompiledSpec cs = compile_spec(m, zone, Vec3::Zero(), 1e-9);
    CHECK(cs.rows.size() == 3);
    CHECK(!cs.poly.is_empty());
}
