#pragma once

#include <map>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tropcurves/rational.hpp"

namespace tropcurves {

// ---------------------------------------------------------------------------
// Degree data
// ---------------------------------------------------------------------------

// Degree and tangency data for curves in an r-dimensional toric target.
// Everything is expressed in a fixed chart identifying the tropical torus
// with Q^r (lattice Z^r).  A degree consists of distinct primitive rays
// u_rho and boundary labels j, each carrying a ray pi(j) and a weight
// omega(j) >= 1, subject to the balancing condition sum_j omega(j) *
// u_{pi(j)} = 0.
struct TropicalDegree {
    struct Label {
        std::string name;
        int ray = 0;     // index into rays
        int omega = 1;   // tangency weight, >= 1
    };

    int r = 0;
    std::vector<IVec> rays;
    std::vector<Label> labels;
    bool projective = false;  // built by projective_degree
    int d = 0;                // projective degree when projective

    // omega(j) * u_{pi(j)} for the label at index `idx`.
    IVec delta(int idx) const;

    // Index of the label with the given name; throws UnknownLabel.
    int label_index(const std::string& name) const;

    bool has_label(const std::string& name) const;
};

// Degree-d curves in projective r-space: rays (-1,...,-1), e_1, ..., e_r in
// the chart, and d weight-1 labels "(i,j)" (j = 1..d) on each ray i.
TropicalDegree projective_degree(int r, int d);

// General toric degree; validates and throws InvalidDegree on violations.
TropicalDegree toric_degree(int r, std::vector<IVec> rays,
                            std::vector<TropicalDegree::Label> labels);

// Checks the TropicalDegree invariants; throws InvalidDegree on the first
// violation.
void validate_degree(const TropicalDegree& deg);

nlohmann::json degree_to_json(const TropicalDegree& deg);
TropicalDegree degree_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Marked metric trees
// ---------------------------------------------------------------------------

// A genus-0 metric tree with labeled infinite legs.  Feet are the 1-valent
// endpoints of legs; all other vertices are inner.  Bounded edges carry a
// positive rational length; legs have infinite length.
struct MarkedMetricTree {
    enum class VertexKind { Inner, Foot };

    struct Edge {
        int v = 0;
        int w = 0;
        bool infinite = false;
        Rat length;  // meaningful only when !infinite
    };

    std::vector<VertexKind> vertices;
    std::vector<Edge> edges;
    std::map<std::string, int> legs;  // leg label -> edge index (an infinite edge)

    bool is_foot(int v) const { return vertices[v] == VertexKind::Foot; }
};

// Checks the tree invariants in a fixed order and returns the first
// violation as human-readable text, or nullopt if the tree is valid:
//   1. vertex/edge indices in range, no self loops;
//   2. connected with |E| = |V| - 1 (genus 0);
//   3. finite edge lengths are positive;
//   4. every foot is 1-valent and every edge touching a foot is infinite,
//      with the other endpoint inner (rules out the two-feet edge);
//   5. infinite edges touch exactly one foot;
//   6. every inner vertex has valence >= 3;
//   7. legs biject with infinite edges (every infinite edge carries exactly
//      one label).
std::optional<std::string> validate_tree(const MarkedMetricTree& t);

// Adjacency list: for each vertex, the incident (edge index, other endpoint)
// pairs in edge-index order.
std::vector<std::vector<std::pair<int, int>>> tree_adjacency(const MarkedMetricTree& t);

// The inner endpoint of the leg with the given label; throws UnknownLabel.
int leg_vertex(const MarkedMetricTree& t, const std::string& label);

// Distance between the inner endpoints of two legs (sum of bounded-edge
// lengths on the path).  Throws UnknownLabel for unknown labels.
Rat leg_distance(const MarkedMetricTree& t, const std::string& a, const std::string& b);

// Canonical encoding of the leaf-labeled tree, rooted at the inner endpoint
// of the lexicographically smallest leg label, with children sorted
// recursively.  Two trees are isomorphic (as leg-labeled combinatorial
// trees, or as metric trees when with_lengths) iff their encodings match.
std::string canonical_encoding(const MarkedMetricTree& t, bool with_lengths);

nlohmann::json tree_to_json(const MarkedMetricTree& t);
MarkedMetricTree tree_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Parametrized tropical curves
// ---------------------------------------------------------------------------

// A parametrized tropical curve: a marked metric tree whose legs are the
// disjoint union of contracted marks and the degree's boundary labels,
// together with a chart position in Q^r for every inner vertex.  Mark legs
// are contracted (direction 0); the leg of boundary label j points in
// direction delta(j); a bounded edge e = {v, w} has integer direction
// (position(w) - position(v)) / length(e) from v.
struct ParametrizedTropCurve {
    MarkedMetricTree tree;
    TropicalDegree degree;
    std::vector<std::string> marks;
    std::map<int, QVec> positions;  // inner vertex -> chart position
};

// Structural validation: valid tree, legs = marks + degree labels, positions
// present (dimension r) exactly on inner vertices.  Returns the first
// violation, or nullopt.
std::optional<std::string> validate_curve(const ParametrizedTropCurve& c);

struct BalancingReport {
    bool ok = true;
    int vertex = -1;      // first violating inner vertex when !ok
    std::string detail;
};

// Integer direction of edge `e` leaving vertex `from`: for a bounded edge,
// (position(other) - position(from)) / length; for a mark leg, zero; for a
// boundary-label leg, delta(label).  Throws NonIntegralDirection if a
// bounded-edge position difference is not an integer multiple of the length.
IVec edge_direction(const ParametrizedTropCurve& c, int e, int from);

// Verifies the balancing condition at every inner vertex: the outgoing edge
// directions (legs included) sum to zero.  Integrality violations raise
// NonIntegralDirection; balancing violations are reported as a value.
BalancingReport check_balancing(const ParametrizedTropCurve& c);

nlohmann::json curve_to_json(const ParametrizedTropCurve& c);
ParametrizedTropCurve curve_from_json(const nlohmann::json& j);

// Graphviz rendering of the tree (legs labeled, lengths on bounded edges,
// inner vertices annotated with their position when available).
std::string curve_to_dot(const ParametrizedTropCurve& c);

}  // namespace tropcurves
