#include "tropcurves/trees.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <queue>
#include <sstream>

#include "tropcurves/errors.hpp"
#include "tropcurves/json_util.hpp"

namespace tropcurves {

using nlohmann::json;

// ---------------------------------------------------------------------------
// TropicalDegree
// ---------------------------------------------------------------------------

IVec TropicalDegree::delta(int idx) const {
    const Label& l = labels.at(idx);
    return ivec_scale(l.omega, rays.at(l.ray));
}

int TropicalDegree::label_index(const std::string& name) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i].name == name) return static_cast<int>(i);
    throw UnknownLabel("degree has no label '" + name + "'");
}

bool TropicalDegree::has_label(const std::string& name) const {
    for (const auto& l : labels)
        if (l.name == name) return true;
    return false;
}

TropicalDegree projective_degree(int r, int d) {
    if (r < 1) throw InvalidDegree("projective_degree: r must be >= 1");
    if (d < 1) throw InvalidDegree("projective_degree: d must be >= 1");
    TropicalDegree deg;
    deg.r = r;
    deg.projective = true;
    deg.d = d;
    deg.rays.assign(r + 1, IVec(r, 0));
    for (int k = 0; k < r; ++k) deg.rays[0][k] = -1;  // class of e_0
    for (int i = 1; i <= r; ++i) deg.rays[i][i - 1] = 1;
    for (int i = 0; i <= r; ++i)
        for (int j = 1; j <= d; ++j)
            deg.labels.push_back({"(" + std::to_string(i) + "," + std::to_string(j) + ")",
                                  i, 1});
    validate_degree(deg);
    return deg;
}

TropicalDegree toric_degree(int r, std::vector<IVec> rays,
                            std::vector<TropicalDegree::Label> labels) {
    TropicalDegree deg;
    deg.r = r;
    deg.rays = std::move(rays);
    deg.labels = std::move(labels);
    validate_degree(deg);
    return deg;
}

void validate_degree(const TropicalDegree& deg) {
    if (deg.r < 1) throw InvalidDegree("degree: r must be >= 1");
    if (deg.rays.empty()) throw InvalidDegree("degree: no rays");
    for (size_t i = 0; i < deg.rays.size(); ++i) {
        const IVec& u = deg.rays[i];
        if (static_cast<int>(u.size()) != deg.r)
            throw InvalidDegree("degree: ray dimension != r");
        if (!ivec_is_primitive(u))
            throw InvalidDegree("degree: ray " + std::to_string(i) +
                                " is not a primitive nonzero vector");
        for (size_t k = 0; k < i; ++k)
            if (deg.rays[k] == u)
                throw InvalidDegree("degree: duplicate ray " + std::to_string(i));
    }
    if (deg.labels.empty()) throw InvalidDegree("degree: no labels");
    IVec total(deg.r, 0);
    for (size_t i = 0; i < deg.labels.size(); ++i) {
        const auto& l = deg.labels[i];
        if (l.ray < 0 || l.ray >= static_cast<int>(deg.rays.size()))
            throw InvalidDegree("degree: label '" + l.name + "' references invalid ray");
        if (l.omega < 1)
            throw InvalidDegree("degree: label '" + l.name + "' has weight < 1");
        if (l.name.empty()) throw InvalidDegree("degree: empty label name");
        for (size_t k = 0; k < i; ++k)
            if (deg.labels[k].name == l.name)
                throw InvalidDegree("degree: duplicate label name '" + l.name + "'");
        total = ivec_add(total, deg.delta(static_cast<int>(i)));
    }
    if (!ivec_is_zero(total))
        throw InvalidDegree("degree: ray multiset is not balanced (sum of deltas != 0)");
}

json degree_to_json(const TropicalDegree& deg) {
    if (deg.projective) return json{{"kind", "projective"}, {"r", deg.r}, {"d", deg.d}};
    json rays = json::array();
    for (const auto& u : deg.rays) rays.push_back(ivec_to_json(u));
    json labels = json::array();
    for (const auto& l : deg.labels)
        labels.push_back(json{{"name", l.name}, {"ray", l.ray}, {"omega", l.omega}});
    return json{{"kind", "toric"}, {"r", deg.r}, {"rays", rays}, {"labels", labels}};
}

TropicalDegree degree_from_json(const json& j) {
    const std::string kind = json_require(j, "kind").get<std::string>();
    const int r = json_require(j, "r").get<int>();
    if (kind == "projective") return projective_degree(r, json_require(j, "d").get<int>());
    if (kind != "toric") throw InvalidInput("degree kind must be 'projective' or 'toric'");
    std::vector<IVec> rays;
    for (const auto& u : json_require(j, "rays")) rays.push_back(ivec_from_json(u));
    std::vector<TropicalDegree::Label> labels;
    for (const auto& l : json_require(j, "labels")) {
        TropicalDegree::Label lab;
        lab.name = json_require(l, "name").get<std::string>();
        lab.ray = json_require(l, "ray").get<int>();
        lab.omega = json_require(l, "omega").get<int>();
        labels.push_back(std::move(lab));
    }
    return toric_degree(r, std::move(rays), std::move(labels));
}

// ---------------------------------------------------------------------------
// MarkedMetricTree
// ---------------------------------------------------------------------------

std::vector<std::vector<std::pair<int, int>>> tree_adjacency(const MarkedMetricTree& t) {
    std::vector<std::vector<std::pair<int, int>>> adj(t.vertices.size());
    for (size_t e = 0; e < t.edges.size(); ++e) {
        adj[t.edges[e].v].emplace_back(static_cast<int>(e), t.edges[e].w);
        adj[t.edges[e].w].emplace_back(static_cast<int>(e), t.edges[e].v);
    }
    return adj;
}

std::optional<std::string> validate_tree(const MarkedMetricTree& t) {
    const int n = static_cast<int>(t.vertices.size());
    if (n == 0) return "tree has no vertices";
    for (size_t e = 0; e < t.edges.size(); ++e) {
        const auto& ed = t.edges[e];
        if (ed.v < 0 || ed.v >= n || ed.w < 0 || ed.w >= n)
            return "edge " + std::to_string(e) + " references invalid vertex";
        if (ed.v == ed.w) return "edge " + std::to_string(e) + " is a self loop";
    }

    // Connectivity and the genus-0 edge count.
    if (static_cast<int>(t.edges.size()) != n - 1)
        return "not a tree: |E| != |V| - 1";
    auto adj = tree_adjacency(t);
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [e, w] : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
    }
    if (reached != n) return "not a tree: disconnected";

    for (size_t e = 0; e < t.edges.size(); ++e) {
        const auto& ed = t.edges[e];
        if (!ed.infinite && ed.length <= 0)
            return "edge " + std::to_string(e) + " has non-positive length";
    }

    for (int v = 0; v < n; ++v) {
        const size_t val = adj[v].size();
        if (t.is_foot(v)) {
            if (val != 1) return "foot " + std::to_string(v) + " is not 1-valent";
        } else if (val < 3) {
            return "inner vertex " + std::to_string(v) + " has valence < 3";
        }
    }

    for (size_t e = 0; e < t.edges.size(); ++e) {
        const auto& ed = t.edges[e];
        const int feet = int(t.is_foot(ed.v)) + int(t.is_foot(ed.w));
        if (ed.infinite && feet != 1)
            return "infinite edge " + std::to_string(e) +
                   (feet == 0 ? " joins two inner vertices" : " joins two feet");
        if (!ed.infinite && feet != 0)
            return "finite edge " + std::to_string(e) + " touches a foot";
    }

    std::vector<int> labels_on_edge(t.edges.size(), 0);
    for (const auto& [name, e] : t.legs) {
        if (name.empty()) return "empty leg label";
        if (e < 0 || e >= static_cast<int>(t.edges.size()))
            return "leg '" + name + "' references invalid edge";
        if (!t.edges[e].infinite) return "leg '" + name + "' is not an infinite edge";
        ++labels_on_edge[e];
    }
    for (size_t e = 0; e < t.edges.size(); ++e) {
        if (t.edges[e].infinite && labels_on_edge[e] != 1)
            return "infinite edge " + std::to_string(e) +
                   (labels_on_edge[e] == 0 ? " has no leg label" : " has several leg labels");
    }
    return std::nullopt;
}

int leg_vertex(const MarkedMetricTree& t, const std::string& label) {
    auto it = t.legs.find(label);
    if (it == t.legs.end()) throw UnknownLabel("tree has no leg '" + label + "'");
    const auto& e = t.edges[it->second];
    return t.is_foot(e.v) ? e.w : e.v;
}

Rat leg_distance(const MarkedMetricTree& t, const std::string& a, const std::string& b) {
    const int va = leg_vertex(t, a);
    const int vb = leg_vertex(t, b);
    if (va == vb) return Rat(0);
    auto adj = tree_adjacency(t);
    // BFS over bounded edges, accumulating path length.
    std::vector<char> seen(t.vertices.size(), 0);
    std::vector<Rat> dist(t.vertices.size(), Rat(0));
    std::queue<int> q;
    q.push(va);
    seen[va] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [e, w] : adj[v]) {
            if (t.edges[e].infinite || seen[w]) continue;
            seen[w] = 1;
            dist[w] = dist[v] + t.edges[e].length;
            if (w == vb) return dist[w];
            q.push(w);
        }
    }
    throw UnknownLabel("legs '" + a + "' and '" + b + "' are not connected by bounded edges");
}

namespace {

std::string encode_subtree(const MarkedMetricTree& t,
                           const std::vector<std::vector<std::pair<int, int>>>& adj,
                           const std::vector<std::string>& edge_label, int v, int parent_edge,
                           bool with_lengths) {
    std::vector<std::string> parts;
    for (auto [e, w] : adj[v]) {
        if (e == parent_edge) continue;
        std::string part;
        if (t.is_foot(w)) {
            part = "[" + edge_label[e] + "]";
        } else {
            part = encode_subtree(t, adj, edge_label, w, e, with_lengths);
            if (with_lengths) part += "@" + rat_to_string(t.edges[e].length);
        }
        parts.push_back(std::move(part));
    }
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i];
    }
    out += ")";
    return out;
}

}  // namespace

std::string canonical_encoding(const MarkedMetricTree& t, bool with_lengths) {
    if (t.legs.empty()) throw UnknownLabel("canonical_encoding: tree has no legs");
    std::vector<std::string> edge_label(t.edges.size());
    for (const auto& [name, e] : t.legs) edge_label[e] = name;
    const std::string& root_label = t.legs.begin()->first;  // smallest label
    const int root = leg_vertex(t, root_label);
    auto adj = tree_adjacency(t);
    return "[" + root_label + "]" +
           encode_subtree(t, adj, edge_label, root, t.legs.at(root_label), with_lengths);
}

json tree_to_json(const MarkedMetricTree& t) {
    json vertices = json::array();
    for (auto k : t.vertices)
        vertices.push_back(k == MarkedMetricTree::VertexKind::Inner ? "inner" : "foot");
    json edges = json::array();
    for (const auto& e : t.edges) {
        json len = e.infinite ? json("inf") : rat_to_json(e.length);
        edges.push_back(json::array({e.v, e.w, len}));
    }
    json legs = json::object();
    for (const auto& [name, e] : t.legs) legs[name] = e;
    return json{{"vertices", vertices}, {"edges", edges}, {"legs", legs}};
}

MarkedMetricTree tree_from_json(const json& j) {
    MarkedMetricTree t;
    for (const auto& v : json_require(j, "vertices")) {
        const std::string kind = v.get<std::string>();
        if (kind == "inner")
            t.vertices.push_back(MarkedMetricTree::VertexKind::Inner);
        else if (kind == "foot")
            t.vertices.push_back(MarkedMetricTree::VertexKind::Foot);
        else
            throw InvalidInput("vertex kind must be 'inner' or 'foot'");
    }
    for (const auto& e : json_require(j, "edges")) {
        if (!e.is_array() || e.size() != 3)
            throw InvalidInput("edge must be [v, w, length]");
        MarkedMetricTree::Edge ed;
        ed.v = e[0].get<int>();
        ed.w = e[1].get<int>();
        if (e[2].is_string() && e[2].get<std::string>() == "inf")
            ed.infinite = true;
        else
            ed.length = rat_from_json(e[2]);
        t.edges.push_back(std::move(ed));
    }
    for (const auto& [name, e] : json_require(j, "legs").items())
        t.legs[name] = e.get<int>();
    if (auto bad = validate_tree(t)) throw InvalidInput("invalid tree: " + *bad);
    return t;
}

// ---------------------------------------------------------------------------
// ParametrizedTropCurve
// ---------------------------------------------------------------------------

std::optional<std::string> validate_curve(const ParametrizedTropCurve& c) {
    if (auto bad = validate_tree(c.tree)) return bad;
    try {
        validate_degree(c.degree);
    } catch (const InvalidDegree& e) {
        return std::string(e.what());
    }
    std::map<std::string, int> expected;
    for (const auto& m : c.marks) {
        if (c.degree.has_label(m)) return "mark '" + m + "' collides with a degree label";
        if (++expected[m] > 1) return "duplicate mark '" + m + "'";
    }
    for (const auto& l : c.degree.labels) expected[l.name] = 1;
    if (expected.size() != c.tree.legs.size())
        return "legs do not biject with marks + degree labels";
    for (const auto& [name, e] : c.tree.legs) {
        (void)e;
        if (!expected.count(name)) return "leg '" + name + "' is neither a mark nor a degree label";
    }
    for (size_t v = 0; v < c.tree.vertices.size(); ++v) {
        const bool inner = !c.tree.is_foot(static_cast<int>(v));
        const auto it = c.positions.find(static_cast<int>(v));
        if (inner && it == c.positions.end())
            return "inner vertex " + std::to_string(v) + " has no position";
        if (!inner && it != c.positions.end())
            return "foot " + std::to_string(v) + " has a position";
        if (inner && static_cast<int>(it->second.size()) != c.degree.r)
            return "position of vertex " + std::to_string(v) + " has wrong dimension";
    }
    return std::nullopt;
}

IVec edge_direction(const ParametrizedTropCurve& c, int e, int from) {
    const auto& ed = c.tree.edges.at(e);
    if (ed.v != from && ed.w != from)
        throw UnknownLabel("edge_direction: vertex not an endpoint");
    if (ed.infinite) {
        // Identify the leg's label: marks are contracted, boundary labels
        // point along their weighted ray.
        for (const auto& [name, le] : c.tree.legs) {
            if (le != e) continue;
            for (const auto& m : c.marks)
                if (m == name) return IVec(c.degree.r, 0);
            return c.degree.delta(c.degree.label_index(name));
        }
        throw UnknownLabel("edge_direction: unlabeled infinite edge");
    }
    const int other = (ed.v == from) ? ed.w : ed.v;
    const QVec& pf = c.positions.at(from);
    const QVec& po = c.positions.at(other);
    IVec dir(c.degree.r, 0);
    for (int k = 0; k < c.degree.r; ++k) {
        Rat comp = (po[k] - pf[k]) / ed.length;
        if (comp.get_den() != 1)
            throw NonIntegralDirection("edge " + std::to_string(e) +
                                       ": position difference is not an integer multiple "
                                       "of the length");
        if (!comp.get_num().fits_slong_p())
            throw NonIntegralDirection("edge " + std::to_string(e) +
                                       ": direction component out of range");
        dir[k] = comp.get_num().get_si();
    }
    return dir;
}

BalancingReport check_balancing(const ParametrizedTropCurve& c) {
    auto adj = tree_adjacency(c.tree);
    for (size_t v = 0; v < c.tree.vertices.size(); ++v) {
        if (c.tree.is_foot(static_cast<int>(v))) continue;
        IVec sum(c.degree.r, 0);
        for (auto [e, w] : adj[v]) {
            (void)w;
            sum = ivec_add(sum, edge_direction(c, e, static_cast<int>(v)));
        }
        if (!ivec_is_zero(sum)) {
            std::ostringstream os;
            os << "vertex " << v << ": direction sum (";
            for (size_t k = 0; k < sum.size(); ++k) os << (k ? "," : "") << sum[k];
            os << ") != 0";
            return BalancingReport{false, static_cast<int>(v), os.str()};
        }
    }
    return BalancingReport{};
}

json curve_to_json(const ParametrizedTropCurve& c) {
    json positions = json::object();
    for (const auto& [v, p] : c.positions) positions[std::to_string(v)] = qvec_to_json(p);
    return json{{"tree", tree_to_json(c.tree)},
                {"degree", degree_to_json(c.degree)},
                {"marks", c.marks},
                {"positions", positions}};
}

ParametrizedTropCurve curve_from_json(const json& j) {
    ParametrizedTropCurve c;
    c.tree = tree_from_json(json_require(j, "tree"));
    c.degree = degree_from_json(json_require(j, "degree"));
    for (const auto& m : json_require(j, "marks")) c.marks.push_back(m.get<std::string>());
    for (const auto& [k, p] : json_require(j, "positions").items())
        c.positions[std::stoi(k)] = qvec_from_json(p);
    if (auto bad = validate_curve(c)) throw InvalidInput("invalid curve: " + *bad);
    return c;
}

std::string curve_to_dot(const ParametrizedTropCurve& c) {
    std::ostringstream os;
    std::vector<std::string> edge_label(c.tree.edges.size());
    for (const auto& [name, e] : c.tree.legs) edge_label[e] = name;
    os << "graph tropical_curve {\n  node [fontsize=10];\n";
    for (size_t v = 0; v < c.tree.vertices.size(); ++v) {
        os << "  v" << v;
        if (c.tree.is_foot(static_cast<int>(v))) {
            os << " [shape=none, label=\"\"];\n";
        } else {
            os << " [shape=point, xlabel=\"";
            auto it = c.positions.find(static_cast<int>(v));
            if (it != c.positions.end()) {
                os << "(";
                for (size_t k = 0; k < it->second.size(); ++k)
                    os << (k ? "," : "") << rat_to_string(it->second[k]);
                os << ")";
            }
            os << "\"];\n";
        }
    }
    for (size_t e = 0; e < c.tree.edges.size(); ++e) {
        const auto& ed = c.tree.edges[e];
        os << "  v" << ed.v << " -- v" << ed.w << " [label=\"";
        if (ed.infinite)
            os << edge_label[e];
        else
            os << rat_to_string(ed.length);
        os << "\"";
        if (ed.infinite) os << ", style=dashed";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace tropcurves
