#include "tropcurves/tropicalize.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <numeric>

#include "tropcurves/errors.hpp"
#include "tropcurves/json_util.hpp"

namespace tropcurves {

using nlohmann::json;

// ---------------------------------------------------------------------------
// CurveInput
// ---------------------------------------------------------------------------

std::vector<std::string> CurveInput::all_labels() const {
    std::vector<std::string> l0 = marks;
    for (const auto& l : degree.labels) l0.push_back(l.name);
    std::sort(l0.begin(), l0.end());
    return l0;
}

void validate_curve_input(const CurveInput& in) {
    validate_degree(in.degree);
    if (in.marks.empty()) throw InvalidInput("input has no marks");
    bool found_i0 = false;
    for (size_t i = 0; i < in.marks.size(); ++i) {
        const auto& m = in.marks[i];
        if (m.empty()) throw InvalidInput("empty mark name");
        if (m == in.i0) found_i0 = true;
        if (in.degree.has_label(m))
            throw InvalidInput("mark '" + m + "' collides with a degree label");
        for (size_t k = 0; k < i; ++k)
            if (in.marks[k] == m) throw InvalidInput("duplicate mark '" + m + "'");
    }
    if (!found_i0) throw InvalidInput("i0 ('" + in.i0 + "') is not among the marks");
    if (in.marks.size() + in.degree.labels.size() < 3)
        throw InvalidInput("need at least 3 legs (marks + boundary labels)");

    // a must cover exactly L = (marks - {i0}) + degree labels.
    size_t expected = in.marks.size() - 1 + in.degree.labels.size();
    if (in.a.size() != expected)
        throw InvalidInput("a must have one entry per mark (except i0) and per label");
    for (const auto& m : in.marks)
        if (m != in.i0 && !in.a.count(m))
            throw InvalidInput("missing coordinate a for mark '" + m + "'");
    for (const auto& l : in.degree.labels)
        if (!in.a.count(l.name))
            throw InvalidInput("missing coordinate a for label '" + l.name + "'");
    if (in.a.count(in.i0)) throw InvalidInput("i0 must not carry a coordinate");

    if (in.c.size() != in.degree.rays.size())
        throw InvalidInput("c must have one entry per ray");
    for (size_t i = 0; i < in.c.size(); ++i) {
        if (in.c[i].is_exact_zero())
            throw InvalidInput("Cox coefficient " + std::to_string(i) + " is zero");
        ps_valuation(in.c[i]);  // PrecisionLoss if truncated-empty
    }
}

json curve_input_to_json(const CurveInput& in) {
    json a = json::object();
    for (const auto& [name, s] : in.a) a[name] = series_to_json(s);
    json c = json::array();
    for (const auto& s : in.c) c.push_back(series_to_json(s));
    json deg = degree_to_json(in.degree);
    deg.erase("r");
    return json{{"r", in.degree.r}, {"degree", deg},   {"i0", in.i0},
                {"marks", in.marks}, {"a", a},          {"c", c}};
}

CurveInput curve_input_from_json(const json& j) {
    CurveInput in;
    const int r = json_require(j, "r").get<int>();
    json deg = json_require(j, "degree");
    if (!deg.contains("r")) deg["r"] = r;
    if (deg.at("r").get<int>() != r) throw InvalidInput("degree r differs from top-level r");
    in.degree = degree_from_json(deg);
    in.i0 = json_require(j, "i0").get<std::string>();
    for (const auto& m : json_require(j, "marks")) in.marks.push_back(m.get<std::string>());
    for (const auto& [name, s] : json_require(j, "a").items())
        in.a[name] = series_from_json(s);
    for (const auto& s : json_require(j, "c")) in.c.push_back(series_from_json(s));
    validate_curve_input(in);
    return in;
}

// ---------------------------------------------------------------------------
// Cluster family
// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int x, int y) { parent[find(x)] = find(y); }
};

bool cluster_order(const Cluster& a, const Cluster& b) {
    if (a.labels.size() != b.labels.size()) return a.labels.size() > b.labels.size();
    return a.labels < b.labels;
}

}  // namespace

ClusterFamily cluster_tree(const std::map<std::string, PuiseuxSeries>& a) {
    std::vector<std::string> names;
    names.reserve(a.size());
    for (const auto& [name, s] : a) {
        (void)s;
        names.push_back(name);
    }
    const int n = static_cast<int>(names.size());

    // Pairwise valuations nu(a_x - a_y), grouped by value.
    struct Pair {
        Rat nu;
        int x, y;
    };
    std::vector<Pair> pairs;
    pairs.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            PuiseuxSeries diff = ps_sub(a.at(names[x]), a.at(names[y]));
            if (diff.is_exact_zero())
                throw DuplicatePoint("points '" + names[x] + "' and '" + names[y] +
                                     "' coincide");
            Val v = ps_valuation(diff);  // PrecisionLoss if truncated-empty
            pairs.push_back(Pair{v.v, x, y});
        }

    // Descending by valuation: the most deeply agreeing points merge first.
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const Pair& p, const Pair& q) { return p.nu > q.nu; });

    ClusterFamily fam;
    UnionFind uf(n);
    size_t i = 0;
    while (i < pairs.size()) {
        size_t j = i;
        while (j < pairs.size() && pairs[j].nu == pairs[i].nu) ++j;
        // Merge every pair at this level, remembering which components were
        // involved.
        std::vector<int> touched;
        for (size_t k = i; k < j; ++k) {
            uf.unite(pairs[k].x, pairs[k].y);
            touched.push_back(pairs[k].x);
        }
        std::vector<int> roots;
        for (int x : touched) roots.push_back(uf.find(x));
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        // Each touched component contains a pair at exactly this valuation,
        // so its internal minimum is this level's value: it is a maximal
        // member of the family.
        for (int root : roots) {
            Cluster c;
            c.nu = Val::of(pairs[i].nu);
            for (int x = 0; x < n; ++x)
                if (uf.find(x) == root) c.labels.push_back(names[x]);
            fam.members.push_back(std::move(c));
        }
        i = j;
    }
    // Singletons always belong to the family (nu = infinity); for n = 1 the
    // single singleton is the root itself.
    for (int x = 0; x < n; ++x)
        fam.members.push_back(Cluster{{names[x]}, Val::inf()});

    std::sort(fam.members.begin(), fam.members.end(), cluster_order);
    return fam;
}

json cluster_family_to_json(const ClusterFamily& f) {
    json members = json::array();
    for (const auto& m : f.members)
        members.push_back(json{{"labels", m.labels}, {"nu", val_to_json(m.nu)}});
    return members;
}

// ---------------------------------------------------------------------------
// Corresponding curve
// ---------------------------------------------------------------------------

namespace {

// q_L = sum_rho nu(c_rho) u_rho.
QVec root_position(const CurveInput& in) {
    QVec q(in.degree.r, Rat(0));
    for (size_t rho = 0; rho < in.c.size(); ++rho) {
        Val nu = ps_valuation(in.c[rho]);
        q = qvec_add(q, qvec_scale(nu.v, ivec_to_qvec(in.degree.rays[rho])));
    }
    return q;
}

// s_A = sum_{j in A ∩ J} delta(j) as a rational chart vector.
QVec cluster_direction(const TropicalDegree& deg, const std::vector<std::string>& labels) {
    QVec s(deg.r, Rat(0));
    for (const auto& name : labels)
        if (deg.has_label(name))
            s = qvec_add(s, ivec_to_qvec(deg.delta(deg.label_index(name))));
    return s;
}

}  // namespace

TropicalizationResult corresponding_curve(const CurveInput& in) {
    validate_curve_input(in);
    ClusterFamily fam = cluster_tree(in.a);
    const int m = static_cast<int>(fam.members.size());

    // Parent of member k: the smallest member strictly containing it.  The
    // family is laminar, so containment of sorted label vectors suffices.
    auto contains = [](const Cluster& big, const Cluster& small) {
        return std::includes(big.labels.begin(), big.labels.end(), small.labels.begin(),
                             small.labels.end());
    };
    std::vector<int> parent(m, -1);
    for (int k = 1; k < m; ++k) {
        int best = 0;  // the root L contains everything
        for (int p = 0; p < m; ++p) {
            if (p == k) continue;
            if (fam.members[p].labels.size() <= fam.members[k].labels.size()) continue;
            if (!contains(fam.members[p], fam.members[k])) continue;
            if (fam.members[p].labels.size() < fam.members[best].labels.size()) best = p;
        }
        parent[k] = best;
    }

    ParametrizedTropCurve curve;
    curve.degree = in.degree;
    curve.marks = in.marks;

    // Vertices in family order: non-singletons are inner, singletons feet.
    std::vector<int> vertex_of(m);
    for (int k = 0; k < m; ++k) {
        const bool inner = fam.members[k].labels.size() > 1;
        vertex_of[k] = static_cast<int>(curve.tree.vertices.size());
        curve.tree.vertices.push_back(inner ? MarkedMetricTree::VertexKind::Inner
                                            : MarkedMetricTree::VertexKind::Foot);
    }
    for (int k = 1; k < m; ++k) {
        MarkedMetricTree::Edge e;
        e.v = vertex_of[parent[k]];
        e.w = vertex_of[k];
        const Cluster& child = fam.members[k];
        const Cluster& par = fam.members[parent[k]];
        if (child.nu.is_inf) {
            e.infinite = true;
            curve.tree.legs[child.labels[0]] = static_cast<int>(curve.tree.edges.size());
        } else {
            e.length = child.nu.v - par.nu.v;
        }
        curve.tree.edges.push_back(std::move(e));
    }
    // The extra i0 leg at the root.
    {
        const int foot = static_cast<int>(curve.tree.vertices.size());
        curve.tree.vertices.push_back(MarkedMetricTree::VertexKind::Foot);
        MarkedMetricTree::Edge e;
        e.v = vertex_of[0];
        e.w = foot;
        e.infinite = true;
        curve.tree.legs[in.i0] = static_cast<int>(curve.tree.edges.size());
        curve.tree.edges.push_back(std::move(e));
    }

    // Positions: the root at q_L, each inner child shifted from its parent
    // by length * s_child.  Family order is size-descending, so parents
    // always precede children.
    curve.positions[vertex_of[0]] = root_position(in);
    for (int k = 1; k < m; ++k) {
        if (fam.members[k].labels.size() < 2) continue;
        const QVec& pq = curve.positions.at(vertex_of[parent[k]]);
        Rat len = fam.members[k].nu.v - fam.members[parent[k]].nu.v;
        QVec s = cluster_direction(in.degree, fam.members[k].labels);
        curve.positions[vertex_of[k]] = qvec_add(pq, qvec_scale(len, s));
    }

    return TropicalizationResult{std::move(fam), std::move(curve)};
}

// ---------------------------------------------------------------------------
// Image points and membership
// ---------------------------------------------------------------------------

QVec trop_image_point(const CurveInput& in, const PuiseuxSeries& a) {
    validate_curve_input(in);
    // Valuations against the boundary labels only.
    std::vector<std::pair<Rat, int>> nus;  // (nu(a - a_x), label index)
    for (size_t idx = 0; idx < in.degree.labels.size(); ++idx) {
        const auto& name = in.degree.labels[idx].name;
        PuiseuxSeries diff = ps_sub(a, in.a.at(name));
        if (diff.is_exact_zero())
            throw OnBoundary("evaluation point coincides with labeled point '" + name +
                             "': image lies on the toric boundary");
        nus.emplace_back(ps_valuation(diff).v, static_cast<int>(idx));
    }
    std::vector<Rat> levels;
    for (const auto& [nu, idx] : nus) {
        (void)idx;
        levels.push_back(nu);
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    QVec q = root_position(in);
    for (size_t i = 1; i < levels.size(); ++i) {
        QVec s(in.degree.r, Rat(0));
        for (const auto& [nu, idx] : nus)
            if (nu >= levels[i]) s = qvec_add(s, ivec_to_qvec(in.degree.delta(idx)));
        q = qvec_add(q, qvec_scale(levels[i] - levels[i - 1], s));
    }
    return q;
}

std::optional<ImageHit> image_membership(const ParametrizedTropCurve& c, const QVec& p) {
    if (static_cast<int>(p.size()) != c.degree.r)
        throw DimensionMismatch("image_membership: point dimension != r");
    for (size_t e = 0; e < c.tree.edges.size(); ++e) {
        const auto& ed = c.tree.edges[e];
        const int tail = ed.infinite ? (c.tree.is_foot(ed.v) ? ed.w : ed.v) : ed.v;
        const IVec dir = edge_direction(c, static_cast<int>(e), tail);
        const QVec& base = c.positions.at(tail);
        QVec diff = qvec_sub(p, base);
        if (ivec_is_zero(dir)) {
            if (qvec_is_zero(diff)) return ImageHit{static_cast<int>(e), Rat(0)};
            continue;
        }
        int k = 0;
        while (dir[k] == 0) ++k;
        Rat t = diff[k] / Rat(static_cast<long>(dir[k]));
        bool on = true;
        for (int i = 0; i < c.degree.r; ++i)
            if (diff[i] != t * Rat(static_cast<long>(dir[i]))) {
                on = false;
                break;
            }
        const bool in_range = (t >= 0) && (ed.infinite || t <= ed.length);
        if (on && in_range) return ImageHit{static_cast<int>(e), t};
    }
    return std::nullopt;
}

}  // namespace tropcurves
