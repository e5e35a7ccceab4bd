#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tropcurves/linalg.hpp"
#include "tropcurves/trees.hpp"

namespace tropcurves {

// ---------------------------------------------------------------------------
// Combinatorial types
// ---------------------------------------------------------------------------

// A trivalent tree with n labeled leaves, encoded by its leaf-insertion
// sequence: starting from the star on leaves {0, 1, 2}, leaf k (k = 3..n-1)
// is inserted into one of the 2k - 3 existing edges.  Leaves are vertices
// 0..n-1, inner vertices n..2n-3; the edge list is determined by the
// insertion order (splitting edge e keeps the head part at index e and
// appends the tail part and the new leaf edge).
struct CombinatorialType {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

// Number of trivalent leaf-labeled trees on n >= 3 leaves: (2n-5)!!.
// Throws InvalidInput if the count exceeds 2^63 - 1.
std::uint64_t type_count(int n);

// Decomposes a flat index in [0, type_count(n)) into the insertion digits
// (d_3, ..., d_{n-1}) with d_k in [0, 2k-3), most significant first.
std::vector<int> type_digits(int n, std::uint64_t index);

// Builds the tree for the given insertion digits.
CombinatorialType realize_type(int n, const std::vector<int>& digits);

// Converts a combinatorial type into a MarkedMetricTree: leaf i carries the
// label labels[i], and the bounded edges (both endpoints inner, in edge-list
// order) receive the given lengths.
MarkedMetricTree type_to_tree(const CombinatorialType& type,
                              const std::vector<std::string>& labels,
                              const std::vector<Rat>& bounded_lengths);

// ---------------------------------------------------------------------------
// Incidence constraints
// ---------------------------------------------------------------------------

// Requires the evaluation of `label` to lie in the affine subspace
// point + span(dirs); an empty dirs list is a point constraint.  For a
// boundary label the condition lives in the orbit, i.e. the subspace is
// implicitly enlarged by the label's ray.  Direction vectors must be
// integral, nonzero and linearly independent.
struct IncidenceConstraint {
    std::string label;
    QVec point;
    IMat dirs;
};

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

struct CountOptions {
    int threads = 1;
    bool prefilter = true;            // floating-point screening before exact work
    std::uint64_t chunk_size = 16384; // types per work unit
    std::uint64_t max_types = 200000000;  // feasibility guard
};

struct CountSolution {
    std::uint64_t type_index = 0;
    std::string type_encoding;     // canonical leaf-labeled tree encoding
    std::vector<Rat> lengths;      // bounded-edge lengths, edge-list order
    QVec anchor;                   // position of the vertex at the smallest label
    Int multiplicity;
};

struct CountResult {
    Int degree;                       // labeled degree: sum of multiplicities
    std::vector<CountSolution> solutions;
    std::uint64_t total_types = 0;
    std::uint64_t rejected_types = 0; // types contributing no solution
    std::uint64_t exact_checks = 0;   // types that needed exact confirmation
};

// Counts the parametrized tropical curves of the given degree whose marked
// and boundary-label evaluations satisfy the constraints, by enumerating
// every combinatorial type and solving the induced square linear system
// exactly; the multiplicity of a solution is |det| of the integer
// constraint matrix.  The leaf set is marks + degree labels, sorted.
//
// Throws DimensionMismatch when the total constraint codimension differs
// from (n - 3) + r, InvalidInput when the enumeration would exceed
// opts.max_types, and Degenerate when some type yields a
// consistent-but-singular system or a boundary (zero-length) solution --
// the constraints are then not generic and no degree is returned.
CountResult count_curves(const TropicalDegree& deg, const std::vector<std::string>& marks,
                         const std::vector<IncidenceConstraint>& constraints,
                         const CountOptions& opts = {});

// Reconstructs the parametrized curve of a solution.
ParametrizedTropCurve solution_to_curve(const TropicalDegree& deg,
                                        const std::vector<std::string>& marks,
                                        std::uint64_t type_index,
                                        const std::vector<Rat>& lengths,
                                        const QVec& anchor);

// ---------------------------------------------------------------------------
// Independent oracle
// ---------------------------------------------------------------------------

// Number N_d of rational degree-d plane curves through 3d - 1 general
// points, by the quadratic recursion
//   N_d = sum_{d1 + d2 = d} N_{d1} N_{d2} *
//           (d1^2 d2^2 C(3d-4, 3d1-2) - d1^3 d2 C(3d-4, 3d1-1)).
Int kontsevich_oracle(int d);

}  // namespace tropcurves
