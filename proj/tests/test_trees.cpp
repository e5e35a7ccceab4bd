#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "tropcurves/enumerate.hpp"
#include "tropcurves/generators.hpp"
#include "tropcurves/json_util.hpp"
#include "tropcurves/trees.hpp"

using namespace tropcurves;
using testsupport::qpoint;

namespace {

// Star: one inner vertex, legs with the given labels.
MarkedMetricTree star_tree(const std::vector<std::string>& labels) {
    MarkedMetricTree t;
    t.vertices.push_back(MarkedMetricTree::VertexKind::Inner);
    for (size_t i = 0; i < labels.size(); ++i) {
        t.vertices.push_back(MarkedMetricTree::VertexKind::Foot);
        t.edges.push_back({0, static_cast<int>(i + 1), true, Rat(0)});
        t.legs[labels[i]] = static_cast<int>(i);
    }
    return t;
}

// Caterpillar: inner v0 (legs a, b) -- length -- inner v1 (legs c, d).
MarkedMetricTree caterpillar(const Rat& length) {
    MarkedMetricTree t;
    t.vertices = {MarkedMetricTree::VertexKind::Inner, MarkedMetricTree::VertexKind::Inner,
                  MarkedMetricTree::VertexKind::Foot, MarkedMetricTree::VertexKind::Foot,
                  MarkedMetricTree::VertexKind::Foot, MarkedMetricTree::VertexKind::Foot};
    t.edges.push_back({0, 1, false, length});
    t.edges.push_back({0, 2, true, Rat(0)});
    t.edges.push_back({0, 3, true, Rat(0)});
    t.edges.push_back({1, 4, true, Rat(0)});
    t.edges.push_back({1, 5, true, Rat(0)});
    t.legs = {{"a", 1}, {"b", 2}, {"c", 3}, {"d", 4}};
    return t;
}

}  // namespace

TEST_CASE("projective degree data") {
    TropicalDegree deg = projective_degree(2, 2);
    CHECK(deg.r == 2);
    CHECK(deg.projective);
    CHECK(deg.d == 2);
    REQUIRE(deg.rays.size() == 3);
    CHECK(deg.rays[0] == IVec{-1, -1});
    CHECK(deg.rays[1] == IVec{1, 0});
    CHECK(deg.rays[2] == IVec{0, 1});
    CHECK(deg.labels.size() == 6);
    CHECK_NOTHROW(validate_degree(deg));
    // Every label has weight one and the deltas per ray sum to d * u_rho.
    for (const auto& l : deg.labels) CHECK(l.omega == 1);
    CHECK(deg.has_label("(0,1)"));
    CHECK(deg.has_label("(2,2)"));
    CHECK_FALSE(deg.has_label("(3,1)"));
    CHECK(deg.delta(deg.label_index("(1,2)")) == IVec{1, 0});
    CHECK_THROWS_AS(deg.label_index("nope"), UnknownLabel);
}

TEST_CASE("toric degree validation") {
    std::vector<IVec> rays = {{-1, -1}, {1, 0}, {0, 1}};
    using L = TropicalDegree::Label;

    // A weighted balanced fan: 2*(-1,-1) + 2*(1,0) + 2*(0,1) = 0.
    std::vector<L> ok = {{"x", 0, 2}, {"y", 1, 2}, {"z", 2, 2}};
    CHECK_NOTHROW(toric_degree(2, rays, ok));

    // Unbalanced.
    std::vector<L> bad = {{"x", 0, 1}, {"y", 1, 2}, {"z", 2, 1}};
    CHECK_THROWS_AS(toric_degree(2, rays, bad), InvalidDegree);

    // Non-primitive ray.
    CHECK_THROWS_AS(toric_degree(2, {{-2, 0}, {2, 0}}, {L{"x", 0, 1}, L{"y", 1, 1}}),
                    InvalidDegree);

    // Weight < 1, duplicate names, invalid ray index.
    CHECK_THROWS_AS(toric_degree(2, rays, {L{"x", 0, 0}, L{"y", 1, 1}, L{"z", 2, 1}}),
                    InvalidDegree);
    CHECK_THROWS_AS(toric_degree(2, rays, {L{"x", 0, 1}, L{"x", 1, 1}, L{"z", 2, 1}}),
                    InvalidDegree);
    CHECK_THROWS_AS(toric_degree(2, rays, {L{"x", 0, 1}, L{"y", 5, 1}, L{"z", 2, 1}}),
                    InvalidDegree);
}

TEST_CASE("degree JSON round trip") {
    TropicalDegree p = projective_degree(3, 2);
    TropicalDegree p2 = degree_from_json(degree_to_json(p));
    CHECK(p2.projective);
    CHECK(p2.r == 3);
    CHECK(p2.d == 2);
    CHECK(p2.rays == p.rays);

    TropicalDegree t = toric_degree(
        2, {{-1, -1}, {1, 0}, {0, 1}},
        {{"x", 0, 2}, {"y", 1, 2}, {"z", 2, 2}});
    TropicalDegree t2 = degree_from_json(degree_to_json(t));
    CHECK_FALSE(t2.projective);
    CHECK(t2.rays == t.rays);
    REQUIRE(t2.labels.size() == 3);
    CHECK(t2.labels[1].name == "y");
    CHECK(t2.labels[1].omega == 2);
}

TEST_CASE("tree validation accepts well-formed trees") {
    CHECK(validate_tree(star_tree({"a", "b", "c"})) == std::nullopt);
    CHECK(validate_tree(caterpillar(Rat(3))) == std::nullopt);
}

TEST_CASE("tree validation rejects structural violations") {
    // Non-positive length.
    MarkedMetricTree t = caterpillar(Rat(0));
    CHECK(validate_tree(t).has_value());
    t = caterpillar(Rat(-1));
    CHECK(validate_tree(t).has_value());

    // Two-valent inner vertex: subdivide the bounded edge without new legs.
    t = caterpillar(Rat(2));
    t.vertices.push_back(MarkedMetricTree::VertexKind::Inner);  // vertex 6
    t.edges[0] = {0, 6, false, Rat(1)};
    t.edges.push_back({6, 1, false, Rat(1)});
    CHECK(validate_tree(t).has_value());

    // Disconnected: two stars.
    t = star_tree({"a", "b", "c"});
    MarkedMetricTree other = star_tree({"x", "y", "z"});
    int off = static_cast<int>(t.vertices.size());
    int eoff = static_cast<int>(t.edges.size());
    for (auto v : other.vertices) t.vertices.push_back(v);
    for (auto e : other.edges) t.edges.push_back({e.v + off, e.w + off, e.infinite, e.length});
    for (auto& [l, e] : other.legs) t.legs[l] = e + eoff;
    CHECK(validate_tree(t).has_value());

    // Unlabeled infinite edge.
    t = star_tree({"a", "b", "c"});
    t.legs.erase("c");
    CHECK(validate_tree(t).has_value());

    // A foot of valence two.
    t = star_tree({"a", "b", "c"});
    t.vertices.push_back(MarkedMetricTree::VertexKind::Foot);  // vertex 4
    t.edges.push_back({1, 4, true, Rat(0)});
    t.legs["d"] = 3;
    CHECK(validate_tree(t).has_value());

    // Self loop.
    t = star_tree({"a", "b", "c"});
    t.edges[0].w = 0;
    CHECK(validate_tree(t).has_value());
}

TEST_CASE("leg distances sum bounded lengths along the path") {
    MarkedMetricTree t = caterpillar(make_rat(7, 2));
    CHECK(leg_distance(t, "a", "b") == Rat(0));
    CHECK(leg_distance(t, "c", "d") == Rat(0));
    CHECK(leg_distance(t, "a", "c") == make_rat(7, 2));
    CHECK(leg_distance(t, "b", "d") == make_rat(7, 2));
    CHECK(leg_distance(t, "a", "a") == Rat(0));
    CHECK_THROWS_AS(leg_distance(t, "a", "nope"), UnknownLabel);
    CHECK(leg_vertex(t, "a") == 0);
    CHECK(leg_vertex(t, "d") == 1);
}

TEST_CASE("canonical encoding distinguishes trees and ignores vertex order") {
    MarkedMetricTree t1 = caterpillar(Rat(2));

    // The same tree with the two inner vertices swapped.
    MarkedMetricTree t2;
    t2.vertices = t1.vertices;
    t2.edges.push_back({1, 0, false, Rat(2)});
    t2.edges.push_back({1, 2, true, Rat(0)});
    t2.edges.push_back({1, 3, true, Rat(0)});
    t2.edges.push_back({0, 4, true, Rat(0)});
    t2.edges.push_back({0, 5, true, Rat(0)});
    t2.legs = {{"a", 1}, {"b", 2}, {"c", 3}, {"d", 4}};
    CHECK(canonical_encoding(t1, true) == canonical_encoding(t2, true));
    CHECK(canonical_encoding(t1, false) == canonical_encoding(t2, false));

    // Pairing a with c instead of b is a different leg-labeled tree.
    MarkedMetricTree t3 = caterpillar(Rat(2));
    t3.legs = {{"a", 1}, {"c", 2}, {"b", 3}, {"d", 4}};
    CHECK(canonical_encoding(t1, false) != canonical_encoding(t3, false));

    // Same shape, different length: metric encodings differ, combinatorial
    // ones agree.
    MarkedMetricTree t4 = caterpillar(Rat(5));
    CHECK(canonical_encoding(t1, true) != canonical_encoding(t4, true));
    CHECK(canonical_encoding(t1, false) == canonical_encoding(t4, false));
}

TEST_CASE("tree distances satisfy the four point condition") {
    // For legs x, y, z, w the minimum of the three pairings
    //   -d(xy)-d(zw), -d(xz)-d(yw), -d(xw)-d(yz)
    // is attained at least twice on a tree metric.
    Generators gen(1729);
    std::vector<std::string> labels = {"a", "b", "c", "d", "e", "f"};
    for (std::uint64_t idx = 0; idx < type_count(6); ++idx) {
        CombinatorialType ty = realize_type(6, type_digits(6, idx));
        std::vector<Rat> lens;
        for (int k = 0; k < 3; ++k) lens.push_back(gen.rat(1, 9) + Rat(1));
        MarkedMetricTree t = type_to_tree(ty, labels, lens);
        REQUIRE(validate_tree(t) == std::nullopt);
        for (int x = 0; x < 6; ++x)
            for (int y = x + 1; y < 6; ++y)
                for (int z = y + 1; z < 6; ++z)
                    for (int w = z + 1; w < 6; ++w) {
                        Rat s1 = leg_distance(t, labels[x], labels[y]) +
                                 leg_distance(t, labels[z], labels[w]);
                        Rat s2 = leg_distance(t, labels[x], labels[z]) +
                                 leg_distance(t, labels[y], labels[w]);
                        Rat s3 = leg_distance(t, labels[x], labels[w]) +
                                 leg_distance(t, labels[y], labels[z]);
                        Rat mx = std::max({s1, s2, s3});
                        int hits = (s1 == mx) + (s2 == mx) + (s3 == mx);
                        CHECK(hits >= 2);
                    }
    }
}

TEST_CASE("tree JSON round trip") {
    MarkedMetricTree t = caterpillar(make_rat(3, 2));
    MarkedMetricTree u = tree_from_json(tree_to_json(t));
    CHECK(validate_tree(u) == std::nullopt);
    CHECK(u.vertices.size() == t.vertices.size());
    CHECK(u.legs == t.legs);
    CHECK(canonical_encoding(u, true) == canonical_encoding(t, true));
}

TEST_CASE("balancing holds for a star line and detects perturbations") {
    // Degree-1 curve in the plane: a single vertex with the three rays.
    TropicalDegree deg = projective_degree(2, 1);
    ParametrizedTropCurve c;
    c.degree = deg;
    c.marks = {"m"};
    c.tree = star_tree({"(0,1)", "(1,1)", "(2,1)", "m"});
    c.positions[0] = qpoint({5, 7});
    REQUIRE(validate_curve(c) == std::nullopt);
    BalancingReport rep = check_balancing(c);
    CHECK(rep.ok);

    // Two-vertex line: center + subdivided arm in direction (1,0).
    ParametrizedTropCurve c2;
    c2.degree = deg;
    c2.marks = {"m"};
    MarkedMetricTree t;
    t.vertices = {MarkedMetricTree::VertexKind::Inner, MarkedMetricTree::VertexKind::Inner,
                  MarkedMetricTree::VertexKind::Foot, MarkedMetricTree::VertexKind::Foot,
                  MarkedMetricTree::VertexKind::Foot, MarkedMetricTree::VertexKind::Foot};
    t.edges.push_back({0, 1, false, Rat(2)});   // center -> mark vertex on the arm
    t.edges.push_back({0, 2, true, Rat(0)});    // (0,1)
    t.edges.push_back({0, 3, true, Rat(0)});    // (2,1)
    t.edges.push_back({1, 4, true, Rat(0)});    // (1,1)
    t.edges.push_back({1, 5, true, Rat(0)});    // mark leg
    t.legs = {{"(0,1)", 1}, {"(2,1)", 2}, {"(1,1)", 3}, {"m", 4}};
    c2.tree = t;
    c2.positions[0] = qpoint({0, 0});
    c2.positions[1] = qpoint({2, 0});
    REQUIRE(validate_curve(c2) == std::nullopt);
    CHECK(check_balancing(c2).ok);
    CHECK(edge_direction(c2, 0, 0) == IVec{1, 0});
    CHECK(edge_direction(c2, 0, 1) == IVec{-1, 0});
    CHECK(edge_direction(c2, 4, 1) == IVec{0, 0});  // contracted mark leg

    // Moving the arm vertex off the ray direction breaks balancing.
    ParametrizedTropCurve bad = c2;
    bad.positions[1] = qpoint({2, 2});
    BalancingReport rep2 = check_balancing(bad);
    CHECK_FALSE(rep2.ok);
    CHECK(rep2.vertex >= 0);

    // A non-integral position difference is an integrality error.
    ParametrizedTropCurve frac = c2;
    frac.positions[1] = QVec{make_rat(1, 3), Rat(0)};
    CHECK_THROWS_AS(check_balancing(frac), NonIntegralDirection);
}

TEST_CASE("curve JSON round trip and DOT rendering") {
    TropicalDegree deg = projective_degree(2, 1);
    ParametrizedTropCurve c;
    c.degree = deg;
    c.marks = {"m"};
    c.tree = star_tree({"(0,1)", "(1,1)", "(2,1)", "m"});
    c.positions[0] = qpoint({5, 7});

    ParametrizedTropCurve c2 = curve_from_json(curve_to_json(c));
    CHECK(validate_curve(c2) == std::nullopt);
    CHECK(c2.marks == c.marks);
    CHECK(c2.positions.at(0) == c.positions.at(0));
    CHECK(check_balancing(c2).ok);

    std::string dot = curve_to_dot(c);
    CHECK(dot.find("graph") != std::string::npos);
    CHECK(dot.find("(1,1)") != std::string::npos);
    CHECK(dot.find("m") != std::string::npos);
}
