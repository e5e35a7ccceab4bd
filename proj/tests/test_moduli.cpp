#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "oracles.hpp"
#include "tropcurves/generators.hpp"
#include "tropcurves/json_util.hpp"
#include "tropcurves/moduli.hpp"

using namespace tropcurves;
using testsupport::C;
using testsupport::T;
using testsupport::qpoint;

namespace {

CurveInput load_conic_example() {
    std::ifstream in(std::string(TROPCURVES_DATA_DIR) + "/conic_example.json");
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return curve_input_from_json(nlohmann::json::parse(ss.str()));
}

// Projective line with two marks: m = i0 at (0:1), n at (1:t^2), and the
// labeled points at t and 1.
CurveInput line_two_marks() {
    CurveInput in;
    in.degree = projective_degree(1, 1);
    in.i0 = "m";
    in.marks = {"m", "n"};
    in.a["(0,1)"] = T(1);
    in.a["(1,1)"] = C(1);
    in.a["n"] = T(2);
    in.c = {ps_one(), ps_one()};
    return in;
}

RawPluecker raw_on(const std::vector<std::string>& labels,
                   std::initializer_list<std::pair<std::pair<const char*, const char*>, Rat>>
                       entries) {
    RawPluecker raw;
    raw.labels = labels;
    for (const auto& [pr, v] : entries) raw.coords[sorted_pair(pr.first, pr.second)] = v;
    return raw;
}

}  // namespace

TEST_CASE("sorted pairs") {
    CHECK(sorted_pair("b", "a") == LabelPair{"a", "b"});
    CHECK(sorted_pair("a", "b") == LabelPair{"a", "b"});
}

TEST_CASE("gauge normal form of a hand-checked vector") {
    RawPluecker raw = raw_on({"i", "x", "y", "z"},
                             {{{"i", "x"}, Rat(1)},
                              {{"i", "y"}, Rat(2)},
                              {{"i", "z"}, Rat(3)},
                              {{"x", "y"}, Rat(4)},
                              {{"x", "z"}, Rat(5)},
                              {{"y", "z"}, Rat(7)}});
    PlueckerVector nf = pluecker_normal_form(raw, "i");
    CHECK(nf.i0 == "i");
    CHECK(nf.get("i", "x") == Rat(0));
    CHECK(nf.get("x", "y") == Rat(0));
    CHECK(nf.get("x", "z") == Rat(0));
    CHECK(nf.get("y", "z") == Rat(1));
    CHECK(nf.coords.size() == 3);  // pairs not containing i0
}

TEST_CASE("normal form rejects malformed input") {
    RawPluecker raw = raw_on({"i", "x", "y"},
                             {{{"i", "x"}, Rat(1)}, {{"i", "y"}, Rat(2)}});
    // Missing pair (x, y): the lookup failure names the absent pair.
    CHECK_THROWS_AS(pluecker_normal_form(raw, "i"), UnknownLabel);
    raw.coords[sorted_pair("x", "y")] = Rat(3);
    CHECK_NOTHROW(pluecker_normal_form(raw, "i"));
    // i0 not among the labels.
    CHECK_THROWS_AS(pluecker_normal_form(raw, "w"), InvalidInput);
}

TEST_CASE("normal form is a complete gauge-orbit invariant") {
    Generators gen(271828);
    std::uniform_int_distribution<int> nsel(4, 7);
    for (int iter = 0; iter < 60; ++iter) {
        int n = nsel(gen.rng());
        std::vector<std::string> labels;
        for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
        RawPluecker raw;
        raw.labels = labels;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                raw.coords[sorted_pair(labels[i], labels[j])] = gen.rat(-20, 20, 5);
        PlueckerVector nf = pluecker_normal_form(raw, labels[0]);

        // Invariance: shifting by any t-tuple does not change the form.
        for (int shift = 0; shift < 16; ++shift) {
            std::map<std::string, Rat> t;
            for (const auto& l : labels) t[l] = gen.rat(-9, 9, 4);
            CHECK(pluecker_normal_form(testsupport::gauge_shift(raw, t), labels[0]) == nf);
        }

        // Completeness: perturbing one single pair coordinate leaves the
        // orbit (possible because n >= 4), so the form must change.
        RawPluecker perturbed = raw;
        perturbed.coords[sorted_pair(labels[1], labels[2])] += Rat(1);
        CHECK(pluecker_normal_form(perturbed, labels[0]) != nf);
    }
}

TEST_CASE("with three labels every vector is gauge-trivial") {
    RawPluecker a = raw_on({"i", "x", "y"}, {{{"i", "x"}, Rat(3)},
                                             {{"i", "y"}, Rat(-2)},
                                             {{"x", "y"}, Rat(17)}});
    RawPluecker b = raw_on({"i", "x", "y"}, {{{"i", "x"}, Rat(0)},
                                             {{"i", "y"}, Rat(5)},
                                             {{"x", "y"}, Rat(-4)}});
    CHECK(pluecker_normal_form(a, "i") == pluecker_normal_form(b, "i"));
}

TEST_CASE("tree Pluecker vector of a caterpillar") {
    // Two inner vertices joined by an edge of length 7/2; legs a, b on one
    // side, c, d on the other.
    MarkedMetricTree t;
    t.vertices = {MarkedMetricTree::VertexKind::Inner, MarkedMetricTree::VertexKind::Inner,
                  MarkedMetricTree::VertexKind::Foot, MarkedMetricTree::VertexKind::Foot,
                  MarkedMetricTree::VertexKind::Foot, MarkedMetricTree::VertexKind::Foot};
    Rat len = make_rat(7, 2);
    t.edges.push_back({0, 1, false, len});
    t.edges.push_back({0, 2, true, Rat(0)});
    t.edges.push_back({0, 3, true, Rat(0)});
    t.edges.push_back({1, 4, true, Rat(0)});
    t.edges.push_back({1, 5, true, Rat(0)});
    t.legs = {{"a", 1}, {"b", 2}, {"c", 3}, {"d", 4}};

    RawPluecker raw = tropical_pluecker_raw(t);
    CHECK(raw.get("a", "b") == Rat(0));
    CHECK(raw.get("a", "c") == -len / 2);

    PlueckerVector nf = tropical_pluecker(t, "a");
    CHECK(nf.get("b", "c") == Rat(0));
    CHECK(nf.get("b", "d") == Rat(0));
    CHECK(nf.get("c", "d") == len);

    // A star has all distances zero: the normal form vanishes.
    MarkedMetricTree star;
    star.vertices = {MarkedMetricTree::VertexKind::Inner};
    for (int i = 1; i <= 4; ++i) {
        star.vertices.push_back(MarkedMetricTree::VertexKind::Foot);
        star.edges.push_back({0, i, true, Rat(0)});
    }
    star.legs = {{"a", 0}, {"b", 1}, {"c", 2}, {"d", 3}};
    PlueckerVector snf = tropical_pluecker(star, "a");
    for (const auto& [pr, v] : snf.coords) CHECK(v == Rat(0));
}

TEST_CASE("algebraic Pluecker coordinates of the worked example") {
    CurveInput in = load_conic_example();
    AlgPluecker apl = algebraic_pluecker(in);

    // d(x, y) = a_y - a_x; the pair ((1,2), 2) differs by exactly -t^4.
    CHECK(apl.get_ordered("(1,2)", "2") == ps_neg(T(4)));
    CHECK(apl.get_ordered("2", "(1,2)") == T(4));

    // Pairs with the base mark are the signed constants.
    CHECK(apl.get_ordered("1", "2") == C(-1));
    CHECK(apl.get_ordered("2", "1") == C(1));

    // Coordinate-wise valuations give a symmetric tropical vector.
    RawPluecker vals = pluecker_valuations(apl);
    CHECK(vals.get("(1,2)", "2") == Rat(4));
    CHECK(vals.get("(0,1)", "(2,1)") == Rat(0));
    CHECK(vals.get("1", "2") == Rat(0));
}

TEST_CASE("both moduli routes agree on the worked example") {
    CurveInput in = load_conic_example();
    ModuliConsistencyReport rep = moduli_consistency(in);
    CHECK(rep.ok);
    CHECK(rep.from_input == rep.from_curve);
    CHECK(rep.from_input.anchor == qpoint({0, 1}));

    // The serialized point only stores pairs away from the base mark.
    nlohmann::json j = moduli_point_to_json(rep.from_input);
    REQUIRE(j.at("pluecker").is_array());
    // 2 marks + 6 boundary legs, anchored at mark "1": C(7, 2) pairs remain.
    CHECK(j.at("pluecker").size() == 21);
    for (const auto& e : j.at("pluecker")) {
        CHECK(e.at("pair")[0] != "1");
        CHECK(e.at("pair")[1] != "1");
    }
}

TEST_CASE("moduli routes agree on random inputs") {
    Generators gen(1618033);
    const std::vector<std::array<int, 3>> shapes = {
        {2, 2, 2}, {3, 1, 2}, {1, 3, 3}, {2, 1, 1}, {2, 3, 2}};
    for (int i = 0; i < 50; ++i) {
        const auto& sh = shapes[i % shapes.size()];
        CurveInput in = gen.curve_input(sh[0], sh[1], sh[2]);
        ModuliConsistencyReport rep = moduli_consistency(in);
        CHECK(rep.ok);
    }
}

TEST_CASE("a corrupted metric is caught by the moduli comparison") {
    CurveInput in = load_conic_example();
    TropicalizationResult res = corresponding_curve(in);
    ParametrizedTropCurve bad = res.curve;
    for (auto& e : bad.tree.edges)
        if (!e.infinite) {
            e.length += 1;
            break;
        }
    CHECK(curve_moduli_point(bad, in.i0) != trop_moduli_point(in));
    CHECK(curve_moduli_point(res.curve, in.i0) == trop_moduli_point(in));
}

TEST_CASE("marked evaluation on the line") {
    CurveInput in = line_two_marks();
    std::vector<PuiseuxSeries> z = ev_marked(in, "n");
    REQUIRE(z.size() == 2);
    CHECK(z[0] == ps_sub(T(2), T(1)));   // t^2 - t
    CHECK(z[1] == ps_sub(T(2), C(1)));   // t^2 - 1

    // At the base mark the evaluation is the Cox tuple itself.
    std::vector<PuiseuxSeries> z0 = ev_marked(in, "m");
    CHECK(z0[0] == ps_one());
    CHECK(z0[1] == ps_one());

    CHECK(trop_cox(in.degree, z) == QVec{Rat(-1)});

    // Torus coordinate z_1 / z_0 has the matching valuation.
    std::vector<PuiseuxSeries> tc = torus_coords(in.degree, z, Rat(10));
    REQUIRE(tc.size() == 1);
    CHECK(ps_valuation(tc[0]) == Val::of(Rat(-1)));

    // Evaluation at a labeled point would leave the dense torus.
    CurveInput clash = in;
    clash.a["n"] = C(1);
    CHECK_THROWS_AS(ev_marked(clash, "n"), OnBoundary);
}

TEST_CASE("boundary evaluation on the line") {
    CurveInput in = line_two_marks();
    std::vector<PuiseuxSeries> z = ev_boundary(in, "(0,1)");
    REQUIRE(z.size() == 1);
    CHECK(z[0] == ps_sub(T(1), C(1)));  // t - 1

    OrbitPoint op = trop_boundary(in.degree, "(0,1)", z);
    CHECK(op.ray == IVec{-1});
    REQUIRE(op.p.size() == 1);
    CHECK(op.p[0] == Rat(0));
}

TEST_CASE("orbit points compare modulo the rational ray line") {
    OrbitPoint a{qpoint({1, 1}), {-1, -1}};
    OrbitPoint b{QVec{make_rat(1, 2), make_rat(1, 2)}, {-1, -1}};
    OrbitPoint c{qpoint({1, 2}), {-1, -1}};
    OrbitPoint d{qpoint({1, 1}), {0, 1}};
    CHECK(orbit_point_eq(a, b));  // differ by (1/2) * ray
    CHECK_FALSE(orbit_point_eq(a, c));
    CHECK_FALSE(orbit_point_eq(a, d));  // different rays
}

TEST_CASE("the torus coordinates of the conic evaluation match its position") {
    CurveInput in = load_conic_example();
    std::vector<PuiseuxSeries> z = ev_marked(in, "2");
    CHECK(trop_cox(in.degree, z) == qpoint({4, 3}));
    std::vector<PuiseuxSeries> tc = torus_coords(in.degree, z, Rat(30));
    REQUIRE(tc.size() == 2);
    CHECK(ps_valuation(tc[0]) == Val::of(Rat(4)));
    CHECK(ps_valuation(tc[1]) == Val::of(Rat(3)));
}

TEST_CASE("Pluecker-embedded evaluation reproduces the direct one") {
    CurveInput in = load_conic_example();
    AlgPluecker apl = algebraic_pluecker(in);
    std::vector<PuiseuxSeries> direct = ev_marked(in, "2");
    std::vector<PuiseuxSeries> embedded =
        ev_marked_extended(apl, in.degree, in.c, "2", Rat(30));
    REQUIRE(embedded.size() == direct.size());
    for (size_t i = 0; i < direct.size(); ++i) {
        // The embedded route divides by Pluecker coordinates, so its output
        // carries the inverse's precision bound; below that bound it must
        // reproduce the direct evaluation term for term.
        REQUIRE(embedded[i].prec.has_value());
        CHECK(*embedded[i].prec >= Rat(25));
        CHECK(ps_truncate(direct[i], *embedded[i].prec) == embedded[i]);
    }
    CHECK(trop_cox(in.degree, embedded) == trop_cox(in.degree, direct));
}

TEST_CASE("Pluecker-embedded evaluation is invariant under the torus action") {
    CurveInput in = load_conic_example();
    AlgPluecker apl = algebraic_pluecker(in);
    std::vector<PuiseuxSeries> base =
        ev_marked_extended(apl, in.degree, in.c, "2", Rat(30));
    QVec base_trop = trop_cox(in.degree, base);
    CHECK(base_trop == qpoint({4, 3}));

    Generators gen(57721566);
    for (int iter = 0; iter < 5; ++iter) {
        // Rescale coordinate x by lambda_x: d(x, y) -> lambda_x lambda_y d(x, y).
        std::map<std::string, PuiseuxSeries> lam;
        for (const auto& l : apl.labels) lam[l] = gen.series(1, 2, -2, 2);
        AlgPluecker scaled = apl;
        for (auto& [pr, v] : scaled.coords)
            v = ps_mul(ps_mul(lam.at(pr.first), lam.at(pr.second)), v);
        std::vector<PuiseuxSeries> out =
            ev_marked_extended(scaled, in.degree, in.c, "2", Rat(30));
        // In the projective case the action moves the tuple by a common
        // scalar only, so the tropicalized chart point is unchanged.
        CHECK(trop_cox(in.degree, out) == base_trop);
    }

    // A common scalar on the whole vector cancels in every ratio.
    AlgPluecker common = apl;
    PuiseuxSeries gamma = ps_add(ps_scale(Rat(3), T(-2)), T(1));
    for (auto& [pr, v] : common.coords) v = ps_mul(gamma, v);
    std::vector<PuiseuxSeries> out =
        ev_marked_extended(common, in.degree, in.c, "2", Rat(30));
    CHECK(trop_cox(in.degree, out) == base_trop);
}

TEST_CASE("commutativity of tropicalization and evaluation, randomized") {
    Generators gen(141421356);
    const std::vector<std::array<int, 3>> shapes = {
        {2, 2, 2}, {3, 1, 2}, {1, 3, 3}, {2, 1, 1}};
    for (int i = 0; i < 60; ++i) {
        const auto& sh = shapes[i % shapes.size()];
        CurveInput in = gen.curve_input(sh[0], sh[1], sh[2]);
        CommutativityReport rep = verify_commutativity(in);
        CHECK(rep.all_pass);
        for (const auto& e : rep.entries) CHECK(e.pass);
    }
}

TEST_CASE("the commutativity comparison detects corrupted positions") {
    CurveInput in = load_conic_example();
    ParametrizedTropCurve curve = corresponding_curve(in).curve;
    QVec lhs = trop_cox(in.degree, ev_marked(in, "2"));
    CHECK(lhs == tev_marked(curve, "2"));

    ParametrizedTropCurve bad = curve;
    int v2 = leg_vertex(bad.tree, "2");
    bad.positions[v2] = qvec_add(bad.positions[v2], qpoint({1, 0}));
    CHECK(lhs != tev_marked(bad, "2"));
}

TEST_CASE("commutativity report serialization") {
    CurveInput in = load_conic_example();
    CommutativityReport rep = verify_commutativity(in);
    nlohmann::json j = commutativity_report_to_json(rep);
    CHECK(j.at("all_pass") == true);
    REQUIRE(j.at("entries").is_array());
    bool saw_mark = false, saw_boundary = false;
    for (const auto& e : j.at("entries")) {
        CHECK(e.at("pass") == true);
        if (e.at("kind") == "mark") saw_mark = true;
        if (e.at("kind") == "boundary") saw_boundary = true;
    }
    CHECK(saw_mark);
    CHECK(saw_boundary);
}
