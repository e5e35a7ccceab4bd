#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "tropcurves/rational.hpp"

namespace tropcurves {

// A finite Puiseux-type series: a finite sum of terms c * t^e with rational
// exponents e and rational coefficients c, optionally truncated at a
// precision bound B (terms with exponent >= B are unknown).
//
// Canonical form invariants, maintained by every operation:
//   * coefficients are nonzero;
//   * exponents are strictly increasing (std::map key order);
//   * if a precision bound is present, every stored exponent is < the bound.
//
// The exact zero series has no terms and no precision bound.  A series with
// no terms but a precision bound B represents "O(t^B)": every coefficient
// below B is known to vanish but the series is not certified to be zero.
struct PuiseuxSeries {
    std::map<Rat, Rat> terms;        // exponent -> nonzero coefficient
    std::optional<Rat> prec;         // truncation bound B, if truncated

    bool is_exact() const { return !prec.has_value(); }
    bool is_exact_zero() const { return terms.empty() && !prec; }
    bool is_truncated_empty() const { return terms.empty() && prec.has_value(); }

    bool operator==(const PuiseuxSeries& o) const {
        return terms == o.terms && prec == o.prec;
    }
    bool operator!=(const PuiseuxSeries& o) const { return !(*this == o); }
};

// Construction helpers.  ps_from_terms sums duplicate exponents and drops
// zero coefficients.
PuiseuxSeries ps_zero();
PuiseuxSeries ps_one();
PuiseuxSeries ps_const(const Rat& c);
PuiseuxSeries ps_monomial(const Rat& c, const Rat& e);
PuiseuxSeries ps_from_terms(std::initializer_list<std::pair<Rat, Rat>> ec_pairs,
                            std::optional<Rat> prec = std::nullopt);

// Arithmetic with precision tracking.
//   add/sub: result precision = min of the operands' precision bounds.
//   mul:     result precision = min over { b.prec + nu(a), a.prec + nu(b) }
//            using the valuation lower bound for truncated-empty operands;
//            multiplication by the exact zero series gives exact zero.
PuiseuxSeries ps_neg(const PuiseuxSeries& a);
PuiseuxSeries ps_add(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries ps_sub(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries ps_mul(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries ps_scale(const Rat& c, const PuiseuxSeries& a);

// Intersects the precision bound with B and drops now-unknown terms.
PuiseuxSeries ps_truncate(const PuiseuxSeries& a, const Rat& bound);

// Valuation nu(a): the least exponent with nonzero coefficient; infinity for
// the exact zero series.  Throws PrecisionLoss if a is truncated-empty (the
// truncation masks the leading term).
Val ps_valuation(const PuiseuxSeries& a);

// Leading coefficient (coefficient of t^{nu(a)}).  Throws PrecisionLoss on
// a truncated-empty series and ZeroInverse on the exact zero series, which
// has no leading term.
Rat ps_leading_coeff(const PuiseuxSeries& a);

// A lower bound for nu(a) that is always defined: the leading exponent if
// terms exist, the precision bound for a truncated-empty series, and
// +infinity (Val::inf) for exact zero.
Val ps_valuation_lower_bound(const PuiseuxSeries& a);

// Multiplicative inverse to the requested order: returns b with precision
// bound -nu(a) + order such that a*b == 1 modulo terms of exponent >= order.
// nu(b) = -nu(a) holds exactly.  Throws ZeroInverse for the exact zero
// series and PrecisionLoss for a truncated-empty series or when a's own
// precision bound cannot support the requested order.
PuiseuxSeries ps_inverse(const PuiseuxSeries& a, const Rat& order);

// Integer power (n >= 0) with precision propagation.
PuiseuxSeries ps_pow(const PuiseuxSeries& a, unsigned n);

// True if a and b have identical terms below the bound `upto` (unknown
// regions are not compared).
bool ps_agrees_below(const PuiseuxSeries& a, const PuiseuxSeries& b, const Rat& upto);

// Human-readable rendering, e.g. "t^-2 + 1" or "1 + O(t^3)".
std::string ps_to_string(const PuiseuxSeries& a);

}  // namespace tropcurves
