#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tropcurves/errors.hpp"

namespace tropcurves {

// Exact rational number.  GMP's canonical form (reduced, positive
// denominator) is maintained by all arithmetic; values built from raw parts
// must be canonicalized before use.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw ZeroDivisor("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "num", "num/den", or a decimal-integer pair, exactly.
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& q);

// A valuation value: a rational or +infinity.  Infinity is absorbing under
// addition and neutral under min.
struct Val {
    bool is_inf = false;
    Rat v;  // meaningful only when !is_inf

    static Val inf() { return Val{true, Rat(0)}; }
    static Val of(Rat q) { return Val{false, std::move(q)}; }

    bool operator==(const Val& o) const {
        if (is_inf != o.is_inf) return false;
        return is_inf || v == o.v;
    }
    bool operator!=(const Val& o) const { return !(*this == o); }
    bool operator<(const Val& o) const {
        if (is_inf) return false;       // inf < x never
        if (o.is_inf) return true;      // finite < inf
        return v < o.v;
    }
    bool operator<=(const Val& o) const { return *this < o || *this == o; }
};

inline Val val_min(const Val& a, const Val& b) { return a < b ? a : (b < a ? b : a); }

inline Val val_add(const Val& a, const Val& b) {
    if (a.is_inf || b.is_inf) return Val::inf();
    return Val::of(a.v + b.v);
}

std::string val_to_string(const Val& v);

// Dense rational vector helpers (used for chart coordinates in Q^r).
using QVec = std::vector<Rat>;

QVec qvec_add(const QVec& a, const QVec& b);
QVec qvec_sub(const QVec& a, const QVec& b);
QVec qvec_scale(const Rat& c, const QVec& a);
bool qvec_is_zero(const QVec& a);

// Integer lattice vector (directions, rays, covectors).
using IVec = std::vector<std::int64_t>;

QVec ivec_to_qvec(const IVec& a);
IVec ivec_add(const IVec& a, const IVec& b);
IVec ivec_scale(std::int64_t c, const IVec& a);
bool ivec_is_zero(const IVec& a);
std::int64_t ivec_gcd(const IVec& a);  // gcd of absolute values, 0 for zero vector
bool ivec_is_primitive(const IVec& a);

}  // namespace tropcurves
