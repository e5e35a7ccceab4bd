#include "tropcurves/moduli.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "tropcurves/errors.hpp"
#include "tropcurves/json_util.hpp"

namespace tropcurves {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Pluecker vectors
// ---------------------------------------------------------------------------

LabelPair sorted_pair(const std::string& a, const std::string& b) {
    return a < b ? LabelPair{a, b} : LabelPair{b, a};
}

const Rat& RawPluecker::get(const std::string& a, const std::string& b) const {
    auto it = coords.find(sorted_pair(a, b));
    if (it == coords.end())
        throw UnknownLabel("raw Pluecker vector has no pair (" + a + ", " + b + ")");
    return it->second;
}

Rat PlueckerVector::get(const std::string& a, const std::string& b) const {
    if (a == i0 || b == i0) return Rat(0);
    auto it = coords.find(sorted_pair(a, b));
    if (it == coords.end())
        throw UnknownLabel("Pluecker vector has no pair (" + a + ", " + b + ")");
    return it->second;
}

PlueckerVector pluecker_normal_form(const RawPluecker& raw, const std::string& i0) {
    if (std::find(raw.labels.begin(), raw.labels.end(), i0) == raw.labels.end())
        throw InvalidInput("normal form: i0 '" + i0 + "' is not among the labels");
    PlueckerVector pv;
    pv.i0 = i0;
    pv.labels = raw.labels;
    // Step 1: gauge away the i0 row: subtract x_a + x_b with x_{i0} = 0 and
    // x_a = raw(i0, a), which zeroes every i0-pair.
    for (const auto& a : raw.labels) {
        if (a == i0) continue;
        for (const auto& b : raw.labels) {
            if (b == i0 || !(a < b)) continue;
            pv.coords[{a, b}] = raw.get(a, b) - raw.get(i0, a) - raw.get(i0, b);
        }
    }
    // Step 2: the slice of step 1 is preserved by the residual gauge shifts
    // x = (t, -t, ..., -t), which move every non-i0 pair by the constant
    // -2t.  Fix the residue by zeroing the smallest non-i0 pair.
    if (!pv.coords.empty()) {
        const Rat c = pv.coords.begin()->second;
        if (c != 0)
            for (auto& [pair, v] : pv.coords) {
                (void)pair;
                v -= c;
            }
    }
    return pv;
}

RawPluecker tropical_pluecker_raw(const MarkedMetricTree& t) {
    RawPluecker raw;
    for (const auto& [name, e] : t.legs) {
        (void)e;
        raw.labels.push_back(name);
    }
    std::sort(raw.labels.begin(), raw.labels.end());
    for (size_t i = 0; i < raw.labels.size(); ++i)
        for (size_t k = i + 1; k < raw.labels.size(); ++k)
            raw.coords[{raw.labels[i], raw.labels[k]}] =
                -leg_distance(t, raw.labels[i], raw.labels[k]) / 2;
    return raw;
}

PlueckerVector tropical_pluecker(const MarkedMetricTree& t, const std::string& i0) {
    return pluecker_normal_form(tropical_pluecker_raw(t), i0);
}

AlgPluecker algebraic_pluecker(const CurveInput& in) {
    validate_curve_input(in);
    AlgPluecker apl;
    apl.i0 = in.i0;
    apl.labels = in.all_labels();
    for (size_t i = 0; i < apl.labels.size(); ++i)
        for (size_t k = i + 1; k < apl.labels.size(); ++k) {
            const std::string& x = apl.labels[i];
            const std::string& y = apl.labels[k];
            PuiseuxSeries d;
            if (x == in.i0)
                d = ps_const(Rat(-1));  // det[(0,1), (1,a_y)]
            else if (y == in.i0)
                d = ps_one();           // det[(1,a_x), (0,1)]
            else
                d = ps_sub(in.a.at(y), in.a.at(x));
            apl.coords[{x, y}] = std::move(d);
        }
    return apl;
}

PuiseuxSeries AlgPluecker::get_ordered(const std::string& x, const std::string& y) const {
    if (x == y) return ps_zero();
    auto it = coords.find(sorted_pair(x, y));
    if (it == coords.end())
        throw UnknownLabel("algebraic Pluecker vector has no pair (" + x + ", " + y + ")");
    return x < y ? it->second : ps_neg(it->second);
}

RawPluecker pluecker_valuations(const AlgPluecker& apl) {
    RawPluecker raw;
    raw.labels = apl.labels;
    for (const auto& [pair, s] : apl.coords) {
        Val v = ps_valuation(s);
        if (v.is_inf)
            throw DuplicatePoint("Pluecker coordinate (" + pair.first + ", " + pair.second +
                                 ") vanishes");
        raw.coords[pair] = v.v;
    }
    return raw;
}

// ---------------------------------------------------------------------------
// Moduli points
// ---------------------------------------------------------------------------

namespace {

QVec anchor_from_input(const CurveInput& in) {
    QVec q(in.degree.r, Rat(0));
    for (size_t rho = 0; rho < in.c.size(); ++rho)
        q = qvec_add(q, qvec_scale(ps_valuation(in.c[rho]).v,
                                   ivec_to_qvec(in.degree.rays[rho])));
    return q;
}

}  // namespace

ModuliPoint trop_moduli_point(const CurveInput& in) {
    ModuliPoint mp;
    mp.pl = pluecker_normal_form(pluecker_valuations(algebraic_pluecker(in)), in.i0);
    mp.anchor = anchor_from_input(in);
    return mp;
}

ModuliPoint curve_moduli_point(const ParametrizedTropCurve& c, const std::string& i0) {
    ModuliPoint mp;
    mp.pl = tropical_pluecker(c.tree, i0);
    mp.anchor = c.positions.at(leg_vertex(c.tree, i0));
    return mp;
}

json moduli_point_to_json(const ModuliPoint& mp) {
    json pl = json::array();
    for (const auto& [pair, v] : mp.pl.coords)
        pl.push_back(json{{"pair", json::array({pair.first, pair.second})},
                          {"v", rat_to_json(v)}});
    return json{{"i0", mp.pl.i0}, {"pluecker", pl}, {"anchor", qvec_to_json(mp.anchor)}};
}

ModuliConsistencyReport moduli_consistency(const CurveInput& in) {
    ModuliConsistencyReport rep;
    rep.from_input = trop_moduli_point(in);
    rep.from_curve = curve_moduli_point(corresponding_curve(in).curve, in.i0);
    if (rep.from_input.pl != rep.from_curve.pl) {
        rep.ok = false;
        rep.detail = "Pluecker normal forms differ";
    } else if (rep.from_input.anchor != rep.from_curve.anchor) {
        rep.ok = false;
        rep.detail = "anchors differ";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Evaluation maps
// ---------------------------------------------------------------------------

std::vector<PuiseuxSeries> ev_marked(const CurveInput& in, const std::string& iota) {
    validate_curve_input(in);
    bool is_mark = false;
    for (const auto& m : in.marks) is_mark = is_mark || (m == iota);
    if (!is_mark) throw UnknownLabel("'" + iota + "' is not a mark");
    if (iota == in.i0) return in.c;

    const PuiseuxSeries& ai = in.a.at(iota);
    std::vector<PuiseuxSeries> z = in.c;
    for (size_t idx = 0; idx < in.degree.labels.size(); ++idx) {
        const auto& lab = in.degree.labels[idx];
        PuiseuxSeries diff = ps_sub(ai, in.a.at(lab.name));
        if (diff.is_exact_zero())
            throw OnBoundary("mark '" + iota + "' coincides with labeled point '" +
                             lab.name + "'");
        z[lab.ray] = ps_mul(z[lab.ray], ps_pow(diff, static_cast<unsigned>(lab.omega)));
    }
    return z;
}

QVec trop_cox(const TropicalDegree& deg, const std::vector<PuiseuxSeries>& z) {
    if (z.size() != deg.rays.size())
        throw DimensionMismatch("trop_cox: tuple size != number of rays");
    QVec q(deg.r, Rat(0));
    for (size_t rho = 0; rho < z.size(); ++rho)
        q = qvec_add(q, qvec_scale(ps_valuation(z[rho]).v, ivec_to_qvec(deg.rays[rho])));
    return q;
}

std::vector<PuiseuxSeries> torus_coords(const TropicalDegree& deg,
                                        const std::vector<PuiseuxSeries>& z,
                                        const Rat& inv_order) {
    if (z.size() != deg.rays.size())
        throw DimensionMismatch("torus_coords: tuple size != number of rays");
    std::vector<PuiseuxSeries> out;
    out.reserve(deg.r);
    for (int k = 0; k < deg.r; ++k) {
        PuiseuxSeries coord = ps_one();
        for (size_t rho = 0; rho < z.size(); ++rho) {
            const std::int64_t p = deg.rays[rho][k];
            if (p > 0)
                coord = ps_mul(coord, ps_pow(z[rho], static_cast<unsigned>(p)));
            else if (p < 0)
                coord = ps_mul(coord, ps_pow(ps_inverse(z[rho], inv_order),
                                             static_cast<unsigned>(-p)));
        }
        out.push_back(std::move(coord));
    }
    return out;
}

QVec tev_marked(const ParametrizedTropCurve& c, const std::string& iota) {
    return c.positions.at(leg_vertex(c.tree, iota));
}

bool orbit_point_eq(const OrbitPoint& a, const OrbitPoint& b) {
    if (a.ray != b.ray) return false;
    if (a.p.size() != b.p.size()) return false;
    QVec diff = qvec_sub(a.p, b.p);
    size_t k = 0;
    while (k < a.ray.size() && a.ray[k] == 0) ++k;
    if (k == a.ray.size()) return qvec_is_zero(diff);  // zero ray: plain equality
    Rat s = diff[k] / Rat(static_cast<long>(a.ray[k]));
    for (size_t i = 0; i < diff.size(); ++i)
        if (diff[i] != s * Rat(static_cast<long>(a.ray[i]))) return false;
    return true;
}

std::vector<PuiseuxSeries> ev_boundary(const CurveInput& in, const std::string& j) {
    validate_curve_input(in);
    const int jidx = in.degree.label_index(j);
    const int jray = in.degree.labels[jidx].ray;
    const PuiseuxSeries& aj = in.a.at(j);
    std::vector<PuiseuxSeries> z;
    for (size_t rho = 0; rho < in.degree.rays.size(); ++rho) {
        if (static_cast<int>(rho) == jray) continue;
        PuiseuxSeries zr = in.c[rho];
        for (const auto& lab : in.degree.labels) {
            if (lab.ray != static_cast<int>(rho)) continue;
            PuiseuxSeries diff = ps_sub(aj, in.a.at(lab.name));
            if (diff.is_exact_zero())
                throw DuplicatePoint("labeled points '" + j + "' and '" + lab.name +
                                     "' coincide");
            zr = ps_mul(zr, ps_pow(diff, static_cast<unsigned>(lab.omega)));
        }
        z.push_back(std::move(zr));
    }
    return z;
}

OrbitPoint trop_boundary(const TropicalDegree& deg, const std::string& j,
                         const std::vector<PuiseuxSeries>& z) {
    const int jray = deg.labels[deg.label_index(j)].ray;
    if (z.size() + 1 != deg.rays.size())
        throw DimensionMismatch("trop_boundary: tuple must omit exactly the label's ray");
    OrbitPoint op;
    op.ray = deg.rays[jray];
    op.p = QVec(deg.r, Rat(0));
    size_t pos = 0;
    for (size_t rho = 0; rho < deg.rays.size(); ++rho) {
        if (static_cast<int>(rho) == jray) continue;
        op.p = qvec_add(op.p, qvec_scale(ps_valuation(z[pos]).v, ivec_to_qvec(deg.rays[rho])));
        ++pos;
    }
    return op;
}

OrbitPoint tev_boundary(const ParametrizedTropCurve& c, const std::string& j) {
    const int jray = c.degree.labels[c.degree.label_index(j)].ray;
    OrbitPoint op;
    op.ray = c.degree.rays[jray];
    op.p = c.positions.at(leg_vertex(c.tree, j));
    return op;
}

std::vector<PuiseuxSeries> ev_marked_extended(const AlgPluecker& apl,
                                              const TropicalDegree& deg,
                                              const std::vector<PuiseuxSeries>& c,
                                              const std::string& iota,
                                              const Rat& inv_order) {
    if (c.size() != deg.rays.size())
        throw DimensionMismatch("ev_marked_extended: c size != number of rays");
    std::vector<PuiseuxSeries> z = c;
    for (size_t idx = 0; idx < deg.labels.size(); ++idx) {
        const auto& lab = deg.labels[idx];
        const PuiseuxSeries num = apl.get_ordered(lab.name, iota);
        const PuiseuxSeries den = apl.get_ordered(lab.name, apl.i0);
        if (num.is_exact_zero())
            throw OnBoundary("ev_marked_extended: d(" + lab.name + ", " + iota + ") = 0");
        if (den.is_exact_zero())
            throw ZeroDivisor("ev_marked_extended: d(" + lab.name + ", " + apl.i0 + ") = 0");
        PuiseuxSeries factor = ps_mul(num, ps_inverse(den, inv_order));
        z[lab.ray] = ps_mul(z[lab.ray], ps_pow(factor, static_cast<unsigned>(lab.omega)));
    }
    return z;
}

// ---------------------------------------------------------------------------
// Commutativity
// ---------------------------------------------------------------------------

CommutativityReport verify_commutativity(const CurveInput& in) {
    CommutativityReport rep;
    TropicalizationResult tr = corresponding_curve(in);

    for (const auto& m : in.marks) {
        CommEntry e;
        e.label = m;
        e.is_mark = true;
        e.lhs = trop_cox(in.degree, ev_marked(in, m));
        e.rhs = tev_marked(tr.curve, m);
        e.pass = (e.lhs == e.rhs);
        rep.all_pass = rep.all_pass && e.pass;
        rep.entries.push_back(std::move(e));
    }
    for (const auto& lab : in.degree.labels) {
        CommEntry e;
        e.label = lab.name;
        e.is_mark = false;
        OrbitPoint lhs = trop_boundary(in.degree, lab.name, ev_boundary(in, lab.name));
        OrbitPoint rhs = tev_boundary(tr.curve, lab.name);
        e.lhs = lhs.p;
        e.rhs = rhs.p;
        e.mod_ray = lhs.ray;
        e.pass = orbit_point_eq(lhs, rhs);
        rep.all_pass = rep.all_pass && e.pass;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

json commutativity_report_to_json(const CommutativityReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        json je{{"label", e.label},
                {"kind", e.is_mark ? "mark" : "boundary"},
                {"pass", e.pass},
                {"trop_ev", qvec_to_json(e.lhs)},
                {"tev", qvec_to_json(e.rhs)}};
        if (!e.is_mark) je["mod_ray"] = ivec_to_json(e.mod_ray);
        entries.push_back(std::move(je));
    }
    return json{{"all_pass", r.all_pass}, {"entries", entries}};
}

}  // namespace tropcurves
