#include "tropcurves/generators.hpp"

#include <algorithm>
#include <set>

#include "tropcurves/errors.hpp"
#include "tropcurves/linalg.hpp"

namespace tropcurves {

Rat Generators::rat(long lo, long hi, int max_den) {
    std::uniform_int_distribution<long> num(lo, hi);
    std::uniform_int_distribution<int> den(1, max_den);
    return make_rat(num(rng_), den(rng_));
}

Rat Generators::nonzero_rat(long lo, long hi, int max_den) {
    for (;;) {
        Rat q = rat(lo, hi, max_den);
        if (q != 0) return q;
    }
}

PuiseuxSeries Generators::series(int min_terms, int max_terms, long e_lo, long e_hi) {
    std::uniform_int_distribution<int> nterms(min_terms, max_terms);
    const int k = nterms(rng_);
    std::set<Rat> exps;
    while (static_cast<int>(exps.size()) < k) exps.insert(rat(e_lo, e_hi, 3));
    PuiseuxSeries s;
    for (const Rat& e : exps) s.terms[e] = nonzero_rat(-9, 9, 3);
    return s;
}

CurveInput Generators::curve_input(int r, int d, int n_marks) {
    if (n_marks < 1) throw InvalidInput("curve_input: need at least one mark");
    CurveInput in;
    in.degree = projective_degree(r, d);
    for (int i = 0; i < n_marks; ++i) in.marks.push_back("p" + std::to_string(i));
    in.i0 = "p0";

    // Coordinates exist for every leg except the base mark i0.
    std::vector<std::string> labels(in.marks.begin() + 1, in.marks.end());
    for (const auto& l : in.degree.labels) labels.push_back(l.name);

    // Pairwise-distinct coordinates: resample any collision.
    std::vector<PuiseuxSeries> vals;
    for (size_t i = 0; i < labels.size(); ++i) {
        for (;;) {
            PuiseuxSeries cand = series();
            bool fresh = true;
            for (const auto& prev : vals)
                if (prev == cand) fresh = false;
            if (fresh) {
                vals.push_back(cand);
                break;
            }
        }
    }
    for (size_t i = 0; i < labels.size(); ++i) in.a[labels[i]] = vals[i];
    for (size_t rho = 0; rho < in.degree.rays.size(); ++rho) in.c.push_back(series());
    return in;
}

QVec Generators::point(int r, long lo, long hi, int max_den) {
    QVec p(r);
    for (int k = 0; k < r; ++k) p[k] = rat(lo, hi, max_den);
    return p;
}

IVec Generators::primitive_dir(int r, long lo, long hi) {
    std::uniform_int_distribution<long> coord(lo, hi);
    for (;;) {
        IVec d(r);
        for (int k = 0; k < r; ++k) d[k] = coord(rng_);
        if (ivec_is_zero(d)) continue;
        const std::int64_t g = ivec_gcd(d);
        for (auto& x : d) x /= g;
        return d;
    }
}

IVec Generators::line_dir(int r) {
    std::uniform_int_distribution<int> bit(0, 1);
    for (;;) {
        IVec d(r);
        for (int k = 0; k < r; ++k) d[k] = bit(rng_);
        if (!ivec_is_zero(d)) return d;
    }
}

std::vector<IncidenceConstraint> Generators::line_constraints(
    const std::vector<std::string>& labels, int r) {
    std::vector<IncidenceConstraint> cs;
    for (const auto& l : labels) {
        IncidenceConstraint c;
        c.label = l;
        c.point = point(r);
        c.dirs.push_back(line_dir(r));
        cs.push_back(std::move(c));
    }
    return cs;
}

std::vector<IncidenceConstraint> Generators::point_constraints(
    const std::vector<std::string>& labels, int r) {
    std::vector<IncidenceConstraint> cs;
    for (const auto& l : labels) {
        IncidenceConstraint c;
        c.label = l;
        c.point = point(r);
        cs.push_back(std::move(c));
    }
    return cs;
}

std::vector<IncidenceConstraint> Generators::affine_constraints(
    const std::vector<std::string>& labels, int r, int k) {
    std::vector<IncidenceConstraint> cs;
    for (const auto& l : labels) {
        IncidenceConstraint c;
        c.label = l;
        c.point = point(r);
        for (;;) {
            c.dirs.clear();
            for (int i = 0; i < k; ++i) c.dirs.push_back(primitive_dir(r));
            QMat dq;
            for (const auto& dir : c.dirs) dq.push_back(ivec_to_qvec(dir));
            if (rank_q(dq) == k) break;
        }
        cs.push_back(std::move(c));
    }
    return cs;
}

}  // namespace tropcurves
