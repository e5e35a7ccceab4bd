#pragma once

// Seeded random generators for curve inputs and incidence constraints.
// Everything is driven by a single std::mt19937_64 so that a seed fully
// determines the generated data across platforms.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tropcurves/enumerate.hpp"
#include "tropcurves/tropicalize.hpp"

namespace tropcurves {

class Generators {
   public:
    explicit Generators(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    /// Uniform rational num/den with num in [lo, hi] and den in [1, max_den].
    Rat rat(long lo, long hi, int max_den = 3);

    /// As rat(), but never zero.
    Rat nonzero_rat(long lo, long hi, int max_den = 3);

    /// Exact nonzero series with between min_terms and max_terms terms,
    /// exponents drawn from [e_lo, e_hi] (denominators up to 3).
    PuiseuxSeries series(int min_terms = 1, int max_terms = 4, long e_lo = -3,
                         long e_hi = 5);

    /// Random curve input of projective degree d in dimension r with
    /// n_marks marked points (labelled p0, p1, ...; i0 = p0).  All point
    /// coordinates a_x are pairwise distinct exact series and all c_rho are
    /// nonzero.
    CurveInput curve_input(int r, int d, int n_marks = 1);

    /// Random rational point in Q^r.  The default coordinate space is large
    /// so that the finitely many non-generic hyperplanes cut out by rank-
    /// deficient combinatorial types are hit with negligible probability.
    QVec point(int r, long lo = -1000000, long hi = 1000000, int max_den = 40);

    /// Random primitive integer direction in Z^r.
    IVec primitive_dir(int r, long lo = -3, long hi = 3);

    /// Random direction of a straight line: a nonzero 0/1-vector.  The
    /// closure of the corresponding one-parameter subgroup in projective
    /// space is a line, so incidence with such affine lines realizes
    /// classical line conditions.
    IVec line_dir(int r);

    /// Line constraints (point + one line_dir direction) on the labels.
    std::vector<IncidenceConstraint> line_constraints(
        const std::vector<std::string>& labels, int r);

    /// Point constraints on the given mark labels.
    std::vector<IncidenceConstraint> point_constraints(
        const std::vector<std::string>& labels, int r);

    /// Affine constraints (point + k independent directions) on the labels.
    std::vector<IncidenceConstraint> affine_constraints(
        const std::vector<std::string>& labels, int r, int k);

   private:
    std::mt19937_64 rng_;
};

}  // namespace tropcurves
