#pragma once

#include <map>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <utility>
#include <vector>

#include "tropcurves/tropicalize.hpp"

namespace tropcurves {

// ---------------------------------------------------------------------------
// Pluecker vectors
// ---------------------------------------------------------------------------

// Unordered label pair, stored sorted.
using LabelPair = std::pair<std::string, std::string>;

LabelPair sorted_pair(const std::string& a, const std::string& b);

// Symmetric raw Pluecker-type coordinates on all unordered pairs of L0.
struct RawPluecker {
    std::vector<std::string> labels;       // sorted L0
    std::map<LabelPair, Rat> coords;       // every unordered pair
    const Rat& get(const std::string& a, const std::string& b) const;
};

// Gauge normal form with respect to i0.  The gauge group shifts coords(x, y)
// by t_x + t_y for an arbitrary real tuple t; the normal form is the unique
// orbit representative with zeros on every i0-pair and on the
// lexicographically smallest non-i0 pair.  Two raw vectors lie in the same
// gauge orbit iff their normal forms are equal.
struct PlueckerVector {
    std::string i0;
    std::vector<std::string> labels;       // sorted L0
    std::map<LabelPair, Rat> coords;       // pairs not containing i0
    Rat get(const std::string& a, const std::string& b) const;  // 0 on i0-pairs

    bool operator==(const PlueckerVector& o) const {
        return i0 == o.i0 && labels == o.labels && coords == o.coords;
    }
    bool operator!=(const PlueckerVector& o) const { return !(*this == o); }
};

// Normalizes a raw symmetric vector; throws InvalidInput when i0 is not
// among the labels or pairs are missing.
PlueckerVector pluecker_normal_form(const RawPluecker& raw, const std::string& i0);

// Raw tropical Pluecker vector of a marked metric tree: -dist(x, y)/2 on
// every pair of legs.
RawPluecker tropical_pluecker_raw(const MarkedMetricTree& t);

// Its normal form with respect to i0.
PlueckerVector tropical_pluecker(const MarkedMetricTree& t, const std::string& i0);

// Antisymmetric algebraic Pluecker data: the 2x2 minors d(x, y) of the
// point matrix with columns (0,1) for i0 and (1, a_x) otherwise, so
// d(i0, y) = -1, d(x, i0) = +1 and d(x, y) = a_y - a_x.  Stored on sorted
// pairs with d(x, y) for x < y; access is sign-aware.
struct AlgPluecker {
    std::string i0;
    std::vector<std::string> labels;           // sorted L0
    std::map<LabelPair, PuiseuxSeries> coords; // value d(x, y) for x < y

    PuiseuxSeries get_ordered(const std::string& x, const std::string& y) const;
};

AlgPluecker algebraic_pluecker(const CurveInput& in);

// Coordinate-wise valuation of an algebraic Pluecker vector (a symmetric raw
// tropical vector, since nu(-s) = nu(s)).
RawPluecker pluecker_valuations(const AlgPluecker& apl);

// ---------------------------------------------------------------------------
// Moduli points
// ---------------------------------------------------------------------------

// A point of the tropical moduli of marked parametrized curves: the gauge
// normal form of the Pluecker vector plus the anchor tev_{i0}.
struct ModuliPoint {
    PlueckerVector pl;
    QVec anchor;

    bool operator==(const ModuliPoint& o) const {
        return pl == o.pl && anchor == o.anchor;
    }
    bool operator!=(const ModuliPoint& o) const { return !(*this == o); }
};

// Route 1 (algebraic): normal form of nu(algebraic_pluecker) with anchor
// sum_rho nu(c_rho) u_rho, computed without building the tree.
ModuliPoint trop_moduli_point(const CurveInput& in);

// Route 2 (tropical): normal form of the tree-distance vector with anchor
// the position of the vertex carrying leg i0.
ModuliPoint curve_moduli_point(const ParametrizedTropCurve& c, const std::string& i0);

nlohmann::json moduli_point_to_json(const ModuliPoint& mp);

struct ModuliConsistencyReport {
    bool ok = true;
    std::string detail;
    ModuliPoint from_input;
    ModuliPoint from_curve;
};

// Compares the two routes exactly.
ModuliConsistencyReport moduli_consistency(const CurveInput& in);

// ---------------------------------------------------------------------------
// Evaluation maps
// ---------------------------------------------------------------------------

// Algebraic evaluation at the mark iota: the Cox tuple with one coordinate
// per ray,
//     z_rho = c_rho * prod_{x in J, pi(x) = rho} (a_iota - a_x)^{omega(x)},
// and z = c for iota = i0.  In the projective case this is the homogeneous
// (r+1)-tuple.  Throws OnBoundary if a_iota coincides with a labeled point.
std::vector<PuiseuxSeries> ev_marked(const CurveInput& in, const std::string& iota);

// Tropicalization of a Cox tuple: sum_rho nu(z_rho) u_rho in the chart.
QVec trop_cox(const TropicalDegree& deg, const std::vector<PuiseuxSeries>& z);

// Torus coordinates of a Cox tuple in the chart basis of M: coordinate k is
// prod_rho z_rho^{u_rho[k]}, negative powers via ps_inverse to the given
// order.  (Projective case: z_k / z_0.)
std::vector<PuiseuxSeries> torus_coords(const TropicalDegree& deg,
                                        const std::vector<PuiseuxSeries>& z,
                                        const Rat& inv_order);

// Tropical evaluation at a mark: the position of the inner vertex carrying
// the leg.
QVec tev_marked(const ParametrizedTropCurve& c, const std::string& iota);

// A point of the boundary orbit for ray `ray`: a chart vector modulo the
// rational line through the ray.
struct OrbitPoint {
    QVec p;
    IVec ray;
};

bool orbit_point_eq(const OrbitPoint& a, const OrbitPoint& b);

// Algebraic boundary evaluation at label j: the Cox tuple over all rays
// except pi(j),
//     z_rho = c_rho * prod_{x in J, pi(x) = rho} (a_j - a_x)^{omega(x)},
// listed in increasing ray order.  All factors are nonzero because the
// labeled points are pairwise distinct.
std::vector<PuiseuxSeries> ev_boundary(const CurveInput& in, const std::string& j);

// Tropicalization of a boundary tuple into the orbit:
// sum_{rho != pi(j)} nu(z_rho) u_rho modulo the ray u_{pi(j)}.
OrbitPoint trop_boundary(const TropicalDegree& deg, const std::string& j,
                         const std::vector<PuiseuxSeries>& z);

// Tropical boundary evaluation: the position of the vertex carrying leg j,
// modulo the ray u_{pi(j)}.
OrbitPoint tev_boundary(const ParametrizedTropCurve& c, const std::string& j);

// Evaluation at a mark through the Pluecker embedding:
//     z_rho = c_rho * prod_{x in J, pi(x) = rho}
//                 (d(x, iota) / d(x, i0))^{omega(x)},
// which for apl = algebraic_pluecker(in) equals ev_marked exactly, and in
// general is well defined up to a common scalar (projectively).  Divisions
// by non-unit denominators use ps_inverse at `inv_order`.
std::vector<PuiseuxSeries> ev_marked_extended(const AlgPluecker& apl,
                                              const TropicalDegree& deg,
                                              const std::vector<PuiseuxSeries>& c,
                                              const std::string& iota,
                                              const Rat& inv_order);

// ---------------------------------------------------------------------------
// Commutativity
// ---------------------------------------------------------------------------

struct CommEntry {
    std::string label;
    bool is_mark = true;
    bool pass = false;
    QVec lhs;     // tropicalization of the algebraic evaluation
    QVec rhs;     // tropical evaluation on the corresponding curve
    IVec mod_ray; // comparison ray for boundary labels (empty for marks)
};

struct CommutativityReport {
    bool all_pass = true;
    std::vector<CommEntry> entries;
};

// Checks trop(ev(.)) == tev(.) on the corresponding curve for every mark
// and every boundary label (the latter modulo the label's ray).
CommutativityReport verify_commutativity(const CurveInput& in);

nlohmann::json commutativity_report_to_json(const CommutativityReport& r);

}  // namespace tropcurves
