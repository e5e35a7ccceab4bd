#pragma once

#include <map>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tropcurves/puiseux.hpp"
#include "tropcurves/trees.hpp"

namespace tropcurves {

// ---------------------------------------------------------------------------
// Curve input
// ---------------------------------------------------------------------------

// A parametrized marked rational curve in standard form over the valued
// field: every labeled point and every mark other than i0 sits at (1 : a)
// for a field element a, the fixed mark i0 sits at (0 : 1), and c holds one
// Cox coefficient per ray of the degree.  L denotes the set of legs other
// than i0 (marks + boundary labels); L0 = L + {i0}.
struct CurveInput {
    TropicalDegree degree;
    std::string i0;
    std::vector<std::string> marks;            // includes i0
    std::map<std::string, PuiseuxSeries> a;    // one entry per element of L
    std::vector<PuiseuxSeries> c;              // one entry per ray

    // Sorted L0 = marks + degree labels.
    std::vector<std::string> all_labels() const;
};

// Structural validation; throws InvalidInput (and PrecisionLoss when a Cox
// coefficient is truncated-empty).  Pairwise distinctness of the a-values is
// checked where they are consumed (cluster_tree) and raises DuplicatePoint.
void validate_curve_input(const CurveInput& in);

nlohmann::json curve_input_to_json(const CurveInput& in);
CurveInput curve_input_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Cluster family
// ---------------------------------------------------------------------------

// A family member: a subset A of L with its valuation nu(A) = min over
// pairs inside A of nu(a_x - a_y) (infinity for singletons).  The family
// lists exactly the maximal elements of the containment-with-equal-valuation
// order; it is laminar and contains L and every singleton.
struct Cluster {
    std::vector<std::string> labels;  // sorted
    Val nu;
};

struct ClusterFamily {
    // Sorted by (size descending, labels lexicographic); the root L comes
    // first and the singletons come last.
    std::vector<Cluster> members;
};

// Builds the cluster family of the configuration {a_x} by single-linkage
// merging over descending pairwise valuations, O(|L|^2 log |L|).  Throws
// DuplicatePoint when two values coincide exactly and PrecisionLoss when a
// difference is truncated below its leading term.
ClusterFamily cluster_tree(const std::map<std::string, PuiseuxSeries>& a);

nlohmann::json cluster_family_to_json(const ClusterFamily& f);

// ---------------------------------------------------------------------------
// Tropicalization
// ---------------------------------------------------------------------------

struct TropicalizationResult {
    ClusterFamily family;
    ParametrizedTropCurve curve;
};

// The parametrized tropical curve associated with the input: vertices are
// the family members (singletons and an extra i0 vertex become feet), the
// edge between nested members v < w has length nu(v) - nu(w), the root L
// sits at sum_rho nu(c_rho) u_rho, and each child v hangs off its parent in
// direction s_v = sum_{j in v ∩ J} delta(j).
TropicalizationResult corresponding_curve(const CurveInput& in);

// Tropicalization of the image point f(1 : a): with r_1 < ... < r_k the
// distinct values of nu(a - a_x) over boundary labels x and D_i the set of
// labels with nu >= r_i,
//     trop f(1:a) = sum_rho nu(c_rho) u_rho + sum_{i>=2} (r_i - r_{i-1}) s_{D_i}.
// Throws OnBoundary if a coincides with a labeled point.
QVec trop_image_point(const CurveInput& in, const PuiseuxSeries& a);

// A point on the image of a parametrized tropical curve: the edge (smallest
// id) together with the rational parameter t, where the point equals
// position(tail) + t * dir(e) with t in [0, length] on bounded edges and
// t >= 0 on legs.  The tail of a bounded edge is its stored `v` endpoint;
// the tail of a leg is its inner endpoint.
struct ImageHit {
    int edge = -1;
    Rat t;
};

std::optional<ImageHit> image_membership(const ParametrizedTropCurve& c, const QVec& p);

}  // namespace tropcurves
