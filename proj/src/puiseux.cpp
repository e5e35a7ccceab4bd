#include "tropcurves/puiseux.hpp"

#include <numeric>
#include <sstream>

#include "tropcurves/errors.hpp"

namespace tropcurves {

// ---------------------------------------------------------------------------
// Rational / valuation helpers (declared in rational.hpp)
// ---------------------------------------------------------------------------

Rat rat_from_string(const std::string& s) {
    try {
        Rat q(s);
        if (q.get_den() == 0) throw ZeroDivisor("rational with zero denominator: " + s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InvalidInput("cannot parse rational: '" + s + "'");
    }
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

std::string val_to_string(const Val& v) {
    return v.is_inf ? "inf" : rat_to_string(v.v);
}

QVec qvec_add(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("qvec_add: size mismatch");
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

QVec qvec_sub(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("qvec_sub: size mismatch");
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

QVec qvec_scale(const Rat& c, const QVec& a) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

bool qvec_is_zero(const QVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

QVec ivec_to_qvec(const IVec& a) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = Rat(static_cast<long>(a[i]));
    return r;
}

IVec ivec_add(const IVec& a, const IVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("ivec_add: size mismatch");
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IVec ivec_scale(std::int64_t c, const IVec& a) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

bool ivec_is_zero(const IVec& a) {
    for (auto x : a)
        if (x != 0) return false;
    return true;
}

std::int64_t ivec_gcd(const IVec& a) {
    std::int64_t g = 0;
    for (auto x : a) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

bool ivec_is_primitive(const IVec& a) { return ivec_gcd(a) == 1; }

// ---------------------------------------------------------------------------
// Puiseux series
// ---------------------------------------------------------------------------

namespace {

// Restores the canonical-form invariants on a raw term map: removes zero
// coefficients and terms at or above the precision bound.
void canonicalize(PuiseuxSeries& s) {
    for (auto it = s.terms.begin(); it != s.terms.end();) {
        if (it->second == 0 || (s.prec && it->first >= *s.prec))
            it = s.terms.erase(it);
        else
            ++it;
    }
}

std::optional<Rat> min_opt(const std::optional<Rat>& a, const std::optional<Rat>& b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? *a : *b;
}

}  // namespace

PuiseuxSeries ps_zero() { return PuiseuxSeries{}; }

PuiseuxSeries ps_one() { return ps_const(Rat(1)); }

PuiseuxSeries ps_const(const Rat& c) { return ps_monomial(c, Rat(0)); }

PuiseuxSeries ps_monomial(const Rat& c, const Rat& e) {
    PuiseuxSeries s;
    if (c != 0) s.terms.emplace(e, c);
    return s;
}

PuiseuxSeries ps_from_terms(std::initializer_list<std::pair<Rat, Rat>> ec_pairs,
                            std::optional<Rat> prec) {
    PuiseuxSeries s;
    s.prec = std::move(prec);
    for (const auto& [e, c] : ec_pairs) s.terms[e] += c;
    canonicalize(s);
    return s;
}

PuiseuxSeries ps_neg(const PuiseuxSeries& a) {
    PuiseuxSeries r;
    r.prec = a.prec;
    for (const auto& [e, c] : a.terms) r.terms.emplace(e, -c);
    return r;
}

PuiseuxSeries ps_add(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    PuiseuxSeries r;
    r.prec = min_opt(a.prec, b.prec);
    r.terms = a.terms;
    for (const auto& [e, c] : b.terms) r.terms[e] += c;
    canonicalize(r);
    return r;
}

PuiseuxSeries ps_sub(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return ps_add(a, ps_neg(b));
}

Val ps_valuation_lower_bound(const PuiseuxSeries& a) {
    if (!a.terms.empty()) return Val::of(a.terms.begin()->first);
    if (a.prec) return Val::of(*a.prec);
    return Val::inf();
}

PuiseuxSeries ps_mul(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return ps_zero();

    std::optional<Rat> prec;
    const Val nu_a = ps_valuation_lower_bound(a);
    const Val nu_b = ps_valuation_lower_bound(b);
    // Unknown terms of b (exponent >= b.prec) contribute unknowns at
    // exponent >= b.prec + nu(a); symmetrically for a.
    if (b.prec && !nu_a.is_inf) prec = min_opt(prec, *b.prec + nu_a.v);
    if (a.prec && !nu_b.is_inf) prec = min_opt(prec, *a.prec + nu_b.v);

    PuiseuxSeries r;
    r.prec = std::move(prec);
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            Rat e = ea + eb;
            if (r.prec && e >= *r.prec) continue;
            r.terms[e] += ca * cb;
        }
    canonicalize(r);
    return r;
}

PuiseuxSeries ps_scale(const Rat& c, const PuiseuxSeries& a) {
    if (c == 0) return ps_zero();
    PuiseuxSeries r;
    r.prec = a.prec;
    for (const auto& [e, coef] : a.terms) r.terms.emplace(e, c * coef);
    return r;
}

PuiseuxSeries ps_truncate(const PuiseuxSeries& a, const Rat& bound) {
    PuiseuxSeries r = a;
    r.prec = r.prec ? (*r.prec < bound ? *r.prec : bound) : bound;
    canonicalize(r);
    return r;
}

Val ps_valuation(const PuiseuxSeries& a) {
    if (!a.terms.empty()) return Val::of(a.terms.begin()->first);
    if (a.prec)
        throw PrecisionLoss("valuation of truncated series with no known terms (O(t^" +
                            rat_to_string(*a.prec) + "))");
    return Val::inf();
}

Rat ps_leading_coeff(const PuiseuxSeries& a) {
    if (!a.terms.empty()) return a.terms.begin()->second;
    if (a.prec) throw PrecisionLoss("leading coefficient of truncated-empty series");
    throw ZeroInverse("leading coefficient of the zero series");
}

PuiseuxSeries ps_pow(const PuiseuxSeries& a, unsigned n) {
    PuiseuxSeries r = ps_one();
    for (unsigned i = 0; i < n; ++i) r = ps_mul(r, a);
    return r;
}

PuiseuxSeries ps_inverse(const PuiseuxSeries& a, const Rat& order) {
    if (a.is_exact_zero()) throw ZeroInverse("inverse of the zero series");
    if (a.is_truncated_empty())
        throw PrecisionLoss("inverse of truncated series with no known terms");

    const Rat m = a.terms.begin()->first;       // nu(a)
    const Rat c = a.terms.begin()->second;      // leading coefficient
    const Rat target_prec = -m + order;         // precision bound of the result

    // a = c t^m (1 + u) with nu(u) > 0; invert the unit by a geometric sum
    // truncated at exponent `order`, then shift back by (c t^m)^{-1}.
    const PuiseuxSeries lead_inv = ps_monomial(Rat(1) / c, -m);
    PuiseuxSeries u = ps_sub(ps_mul(a, lead_inv), ps_one());
    u = ps_truncate(u, order);

    PuiseuxSeries unit_inv = ps_one();
    if (!u.terms.empty()) {
        const Rat delta = u.terms.begin()->first;  // nu(u) > 0
        if (delta <= 0)
            throw PrecisionLoss("inverse: unit part has non-positive valuation");
        // Remainder after K+1 geometric terms has valuation (K+1)*delta;
        // stop once that reaches `order`.
        PuiseuxSeries term = ps_one();
        Rat reach(0);
        while (reach < order) {
            term = ps_truncate(ps_mul(term, ps_neg(u)), order);
            if (term.terms.empty() && !term.prec) break;  // exact zero: u was nilpotent mod order
            unit_inv = ps_add(unit_inv, term);
            reach += delta;
            if (term.terms.empty()) break;  // truncated-empty: nothing more is known
        }
    } else if (u.prec) {
        // Unit part unknown below `order`: inversion inherits the truncation.
        unit_inv.prec = u.prec;
    }

    PuiseuxSeries b = ps_mul(lead_inv, unit_inv);
    return ps_truncate(b, target_prec);
}

bool ps_agrees_below(const PuiseuxSeries& a, const PuiseuxSeries& b, const Rat& upto) {
    auto ita = a.terms.begin();
    auto itb = b.terms.begin();
    while (true) {
        const bool ea = (ita == a.terms.end() || ita->first >= upto);
        const bool eb = (itb == b.terms.end() || itb->first >= upto);
        if (ea && eb) return true;
        if (ea != eb) return false;
        if (ita->first != itb->first || ita->second != itb->second) return false;
        ++ita;
        ++itb;
    }
}

std::string ps_to_string(const PuiseuxSeries& a) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : a.terms) {
        if (!first) os << " + ";
        first = false;
        if (e == 0) {
            os << rat_to_string(c);
            continue;
        }
        if (c != 1) os << rat_to_string(c) << "*";
        os << "t^" << rat_to_string(e);
    }
    if (a.prec) {
        if (!first) os << " + ";
        os << "O(t^" << rat_to_string(*a.prec) << ")";
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace tropcurves
