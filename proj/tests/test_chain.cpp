#include "polychain/chain.hpp"

#include "oracle.hpp"

#include <catch2/catch.hpp>
#include <random>

using namespace polychain;

namespace {

const Vec3 kM(0, 0, 20);

ScrewPolytope zone(double z_height, double normal_sign, double t, double k = 0.5,
                   const Vec3& m = kM, double half = 1.0) {
    Frame f = Frame::from_normal(Vec3(0, 0, z_height), normal_sign * Vec3::UnitZ());
    auto samples = sample_plane(half, half, f, m, 2, 2);
    return rows_to_polytope(geometric_rows(samples, {t, k}));
}

ScrewPolytope contact(double D, double d_nom, double z_height, const Vec3& m = kM, double half = 1.0) {
    Frame f = Frame::from_normal(Vec3(0, 0, z_height), Vec3::UnitZ());
    auto samples = sample_plane(half, half, f, m, 2, 2);
    return rows_to_polytope(contact_rows(samples, {D, d_nom}, MatingReport::ok()));
}

Vec world_ez() {
    Vec u = Vec::Zero(6);
    u(5) = 1.0;
    return u;
}

SpecGraph fig8_graph(double t22, double t21, double t11, double t12) {
    SpecGraph g;
    g.add_surface("p1/S10", "p1", true);
    g.add_surface("p1/S11", "p1", false);
    g.add_surface("p1/S12", "p1", false);
    g.add_surface("p2/S20", "p2", true);
    g.add_surface("p2/S21", "p2", false);
    g.add_surface("p2/S22", "p2", false);
    g.add_edge({"g22", EdgeKind::geometric, "p2/S22", "p2/S20", zone(20, 1, t22)});
    g.add_edge({"g21", EdgeKind::geometric, "p2/S21", "p2/S20", zone(10, -1, t21)});
    g.add_edge({"c1", EdgeKind::contact, "p2/S21", "p1/S11", contact(0.0, 0.0, 10)});
    g.add_edge({"g11", EdgeKind::geometric, "p1/S11", "p1/S10", zone(10, 1, t11)});
    g.add_edge({"g12", EdgeKind::geometric, "p1/S12", "p1/S10", zone(0, -1, t12)});
    return g;
}

}  // namespace

TEST_CASE("compose_series sums zone windows and ignores the 0-polytope", "[chain]") {
    // two pure eps_z segments
    std::vector<SurfaceSample> one{{kM, Vec3::UnitZ(), Vec3::Zero()}};
    ScrewPolytope a = rows_to_polytope(geometric_rows(one, {0.2, 0.5}));
    ScrewPolytope b = rows_to_polytope(geometric_rows(one, {0.4, 0.5}));
    ScrewPolytope s = compose_series({a, b});
    CHECK(s.bounded_dim() == 1);
    CHECK(support(s.bounded, Vec::Ones(1)) == Approx(0.3).margin(1e-12));

    // five polytopes where the contact one is a point
    std::vector<ScrewPolytope> five = {zone(20, 1, 0.1), zone(10, -1, 0.2), contact(0.0, 0.0, 10),
                                       zone(10, 1, 0.15), zone(0, -1, 0.25)};
    ScrewPolytope sum5 = compose_series(five);
    std::vector<ScrewPolytope> four = {zone(20, 1, 0.1), zone(10, -1, 0.2), zone(10, 1, 0.15),
                                       zone(0, -1, 0.25)};
    ScrewPolytope sum4 = compose_series(four);
    CHECK(same_point_set(sum5.bounded.vertices(), sum4.bounded.vertices(), 1e-9));

    // permuting the inputs leaves the vertex set unchanged
    std::vector<ScrewPolytope> perm = {five[3], five[0], five[4], five[2], five[1]};
    ScrewPolytope sump = compose_series(perm);
    CHECK(same_point_set(sump.bounded.vertices(), sum5.bounded.vertices(), 1e-9));
}

TEST_CASE("compose_series pools free directions", "[chain]") {
    // zone with normal z constrains {rx, ry, ez}; zone with normal x
    // constrains {ry, rz, ex}; the series constrains only the overlap.
    Frame fz = Frame::from_normal(Vec3(0, 0, 0), Vec3::UnitZ());
    Frame fx = Frame::from_normal(Vec3(0, 0, 0), Vec3::UnitX());
    const Vec3 m(0, 0, 0);
    ScrewPolytope pz = rows_to_polytope(geometric_rows(sample_plane(1, 1, fz, m, 2, 2), {0.1, 0.5}));
    ScrewPolytope px = rows_to_polytope(geometric_rows(sample_plane(1, 1, fx, m, 2, 2), {0.1, 0.5}));
    ScrewPolytope s = compose_series({pz, px});
    CHECK(pz.free.count() == 3);
    CHECK(px.free.count() == 3);
    // constrained spans {rx, ry, ez} and {ry, rz, ex} only share rho_y
    CHECK(s.free.count() == 5);
    CHECK(s.bounded_dim() == 1);
    CHECK(approx_equal(s.basis.row(0).transpose(), Vec(Vec::Unit(6, 1)), 1e-9));
}

TEST_CASE("compose_parallel keeps nested intervals and intersects octahedra", "[chain]") {
    std::vector<SurfaceSample> one{{kM, Vec3::UnitZ(), Vec3::Zero()}};
    ScrewPolytope wide = rows_to_polytope(geometric_rows(one, {0.6, 0.5}));
    ScrewPolytope narrow = rows_to_polytope(geometric_rows(one, {0.4, 0.5}));
    ScrewPolytope in = compose_parallel({wide, narrow});
    CHECK(support(in.bounded, Vec::Ones(1)) == Approx(0.2).margin(1e-12));

    // two contact polytopes with offset windows: [0, 1] vs [-0.4, 0.6]
    ScrewPolytope a = contact(1.0, 0.0, 10);
    ScrewPolytope b = contact(1.0, 0.4, 10);
    ScrewPolytope both = compose_parallel({a, b});
    REQUIRE(!both.is_empty());
    const Vec ez = world_ez();
    const double sa = world_support(a, ez);
    const double sb = world_support(b, ez);
    const double sboth = world_support(both, ez);
    CHECK(sa == Approx(1.0).margin(1e-9));
    CHECK(sboth < sa - 1e-6);
    CHECK(sboth == Approx(std::min(sa, sb)).margin(1e-9));

    // soundness against the exhaustive solver on the concatenated system
    std::vector<Halfspace> hs;
    for (const ScrewPolytope* sp : {&a, &b})
        for (const Halfspace& h : sp->bounded.hrep().halfspaces)
            hs.emplace_back(both.basis * (sp->basis.transpose() * h.normal), h.offset);
    CHECK(same_point_set(oracle::brute_vertices(HRep(3, hs)), both.bounded.vertices(), 1e-9));

    // branches contain the intersection
    CHECK(contains(a.bounded, both.bounded, 1e-9));  // same canonical basis

    // disjoint windows: assembly infeasible
    ScrewPolytope c = contact(0.1, 0.0, 10);
    ScrewPolytope d = contact(0.1, 0.5, 10);
    CHECK(compose_parallel({c, d}).is_empty());
}

TEST_CASE("evaluate resolves leaves, series, and parallel trees", "[chain]") {
    SpecGraph g = fig8_graph(0.1, 0.2, 0.15, 0.25);

    ChainExpr single = ChainExpr::make_leaf("g11");
    ScrewPolytope p = evaluate(g, single);
    CHECK(same_point_set(p.bounded.vertices(), g.find_edge("g11")->poly.bounded.vertices(), 1e-12));

    ChainExpr series = ChainExpr::make_series({ChainExpr::make_leaf("g22"), ChainExpr::make_leaf("g21", true),
                                               ChainExpr::make_leaf("c1"), ChainExpr::make_leaf("g11"),
                                               ChainExpr::make_leaf("g12", true)});
    ScrewPolytope calc = evaluate(g, series);
    CHECK(world_support(calc, world_ez()) == Approx(0.5 * (0.1 + 0.2 + 0.15 + 0.25)).margin(1e-9));

    CHECK_THROWS_AS(evaluate(g, ChainExpr::make_leaf("nope")), UnresolvedLeaf);
}

TEST_CASE("paths_between derives series and parallel chains", "[chain]") {
    SpecGraph g = fig8_graph(0.1, 0.2, 0.15, 0.25);
    ChainExpr expr = paths_between(g, "p2/S22", "p1/S12");
    REQUIRE(expr.kind == ChainExpr::Kind::series);
    REQUIRE(expr.children.size() == 5);
    CHECK(expr.to_string() == "series(g22, ~g21, c1, g11, ~g12)");

    // parallel topology: two disjoint three-edge branches between the parts
    SpecGraph pg;
    pg.add_surface("p1/S10", "p1", true);
    pg.add_surface("p1/S11", "p1", false);
    pg.add_surface("p1/S12", "p1", false);
    pg.add_surface("p2/S20", "p2", true);
    pg.add_surface("p2/S21", "p2", false);
    pg.add_surface("p2/S22", "p2", false);
    pg.add_edge({"g21", EdgeKind::geometric, "p2/S21", "p2/S20", zone(10, -1, 0.1)});
    pg.add_edge({"c1", EdgeKind::contact, "p2/S21", "p1/S11", contact(0.5, 0.0, 10)});
    pg.add_edge({"g11", EdgeKind::geometric, "p1/S11", "p1/S10", zone(10, 1, 0.1)});
    pg.add_edge({"g22", EdgeKind::geometric, "p2/S22", "p2/S20", zone(10, -1, 0.1)});
    pg.add_edge({"c2", EdgeKind::contact, "p2/S22", "p1/S12", contact(0.5, 0.0, 10)});
    pg.add_edge({"g12", EdgeKind::geometric, "p1/S12", "p1/S10", zone(10, 1, 0.1)});
    ChainExpr pex = paths_between(pg, "p2/S20", "p1/S10");
    REQUIRE(pex.kind == ChainExpr::Kind::parallel);
    REQUIRE(pex.children.size() == 2);
    for (const ChainExpr& branch : pex.children) {
        REQUIRE(branch.kind == ChainExpr::Kind::series);
        CHECK(branch.children.size() == 3);
    }
    ScrewPolytope calc = evaluate(pg, pex);
    CHECK(!calc.is_empty());

    pg.add_surface("p3/lonely", "p3", false);
    CHECK_THROWS_AS(paths_between(pg, "p2/S20", "p3/lonely"), NoPath);

    // a rung between the two branches makes paths share edges
    SpecGraph shared = fig8_graph(0.1, 0.2, 0.15, 0.25);
    shared.add_edge({"c2", EdgeKind::contact, "p2/S21", "p1/S12", contact(0.5, 0.0, 10)});
    CHECK_THROWS_AS(paths_between(shared, "p2/S22", "p1/S12"), SharedEdgeTopology);
}

TEST_CASE("check_requirement margins for scaled copies", "[chain]") {
    ScrewPolytope calc = contact(1.0, 0.0, 10);
    RequirementCheck self = check_requirement(calc, calc);
    CHECK(self.satisfied);
    CHECK(self.margin == Approx(1.0).margin(1e-9));

    auto scaled_copy = [&](double lambda) {
        ScrewPolytope f = calc;
        Vec c = Vec::Zero(3);
        for (const Vec& v : calc.bounded.vertices()) c += v;
        c /= double(calc.bounded.vertices().size());
        f.bounded = calc.bounded.scaled_about(c, lambda);
        return f;
    };

    RequirementCheck big = check_requirement(calc, scaled_copy(2.0));
    CHECK(big.satisfied);
    CHECK(big.margin == Approx(2.0).margin(1e-9));

    RequirementCheck grow = check_requirement(calc, scaled_copy(1.01));
    CHECK(grow.satisfied);
    CHECK(grow.margin == Approx(1.01).margin(1e-6));

    RequirementCheck shrink = check_requirement(calc, scaled_copy(0.99));
    CHECK_FALSE(shrink.satisfied);
    CHECK(shrink.margin == Approx(0.99).margin(1e-6));
    REQUIRE(shrink.witness.has_value());
    // the witness vertex really does violate the witness face
    const auto& w = *shrink.witness;
    ScrewPolytope func = scaled_copy(0.99);
    const Vec y = func.basis * w.vertex;
    const Vec n = func.basis * w.face_normal;
    CHECK(n.dot(y) > w.face_offset + 1e-12);
}

TEST_CASE("check_requirement flags empty and leaking calculated polytopes", "[chain]") {
    ScrewPolytope func = contact(1.0, 0.0, 10);
    ScrewPolytope empty = func;
    empty.bounded = Polytope::empty(3);
    RequirementCheck rc = check_requirement(empty, func);
    CHECK(rc.satisfied);
    CHECK(rc.vacuous);
    CHECK(std::isinf(rc.margin));

    // calculated free along eps_z, which the functional bounds
    std::vector<SurfaceSample> one{{kM, Vec3::UnitX(), Vec3::Zero()}};
    ScrewPolytope leaking = rows_to_polytope(geometric_rows(one, {0.2, 0.5}));
    RequirementCheck bad = check_requirement(leaking, func);
    CHECK_FALSE(bad.satisfied);
    CHECK(bad.margin == 0.0);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->note.find("unbounded") != std::string::npos);
}

TEST_CASE("series monotonicity and parallel shrinkage", "[chain][property]") {
    ScrewPolytope p = zone(10, 1, 0.1);
    ScrewPolytope p_wider = zone(10, 1, 0.2);
    ScrewPolytope q = zone(0, -1, 0.15);
    ScrewPolytope sum_small = compose_series({p, q});
    ScrewPolytope sum_big = compose_series({p_wider, q});
    CHECK(contains(sum_big.bounded, sum_small.bounded, 1e-9));

    ScrewPolytope a = contact(1.0, 0.0, 10);
    ScrewPolytope b = contact(1.0, 0.4, 10);
    ScrewPolytope both = compose_parallel({a, b});
    CHECK(contains(a.bounded, both.bounded, 1e-9));
    CHECK(contains(b.bounded, both.bounded, 1e-9));
}

TEST_CASE("support additivity along series chains", "[chain][property]") {
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> u(0.05, 0.3);
    std::vector<ScrewPolytope> parts = {zone(20, 1, u(rng)), zone(10, -1, u(rng)), zone(10, 1, u(rng)),
                                        zone(0, -1, u(rng))};
    ScrewPolytope total = compose_series(parts);
    for (int trial = 0; trial < 50; ++trial) {
        Vec local = oracle::random_unit(rng, total.bounded_dim());
        Vec world = total.basis.transpose() * local;
        double sum = 0.0;
        for (const ScrewPolytope& p : parts) sum += world_support(p, world);
        const double got = world_support(total, world);
        CHECK(std::abs(got - sum) <= 1e-6 * (1.0 + std::abs(sum)));
    }
}

TEST_CASE("margin and verdict stay coherent on random boxes", "[chain][property]") {
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> u(0.3, 1.6);
    std::uniform_real_distribution<double> shift(-0.2, 0.2);
    for (int trial = 0; trial < 30; ++trial) {
        ScrewPolytope func = contact(1.0, 0.0, 10);
        // inner box in the same subspace
        const double h = u(rng);
        std::vector<Vec> pts;
        for (int mask = 0; mask < 8; ++mask) {
            Vec v(3);
            v << ((mask & 1) ? h : -h) * 0.2 + shift(rng) * 0.01, ((mask & 2) ? h : -h) * 0.2,
                0.5 + ((mask & 4) ? h : -h) * 0.2;
            pts.push_back(v);
        }
        ScrewPolytope calc = func;
        calc.bounded = Polytope::from_points(3, pts);
        RequirementCheck rc = check_requirement(calc, func);
        // the verdict must match a direct vertex check and the margin sign
        bool direct = contains(func.bounded, calc.bounded, 1e-9);
        CHECK(rc.satisfied == direct);
        if (rc.satisfied) CHECK(rc.margin >= 1.0 - 1e-9);
        else CHECK(rc.margin < 1.0 + 1e-9);
    }
}

TEST_CASE("whole-pipeline scale homogeneity", "[chain][property]") {
    ScrewPolytope func = zone(20, 1, 0.8);
    auto margin_for = [&](double lambda) {
        std::vector<ScrewPolytope> parts = {zone(20, 1, 0.1 * lambda), zone(10, -1, 0.2 * lambda),
                                            contact(0.0, 0.0, 10), zone(10, 1, 0.15 * lambda),
                                            zone(0, -1, 0.25 * lambda)};
        return check_requirement(compose_series(parts), func).margin;
    };
    const double m1 = margin_for(1.0);
    for (double lambda : {0.5, 2.0}) {
        const double ml = margin_for(lambda);
        CHECK(1.0 / ml == Approx(lambda / m1).margin(1e-9));
    }
}
