#include "tropcurves/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <thread>

#include "tropcurves/errors.hpp"

namespace tropcurves {

// ---------------------------------------------------------------------------
// Combinatorial types
// ---------------------------------------------------------------------------

std::uint64_t type_count(int n) {
    if (n < 3) throw InvalidInput("type_count: need at least 3 leaves");
    std::uint64_t total = 1;
    for (int i = 0; i + 4 <= n; ++i) {
        const std::uint64_t radix = 2 * static_cast<std::uint64_t>(i) + 3;
        if (total > UINT64_MAX / radix / 2)
            throw InvalidInput("type_count: (2n-5)!! exceeds the supported range");
        total *= radix;
    }
    return total;
}

std::vector<int> type_digits(int n, std::uint64_t index) {
    const int len = n - 3;
    std::vector<int> digits(len, 0);
    // Least significant digit belongs to the last inserted leaf.
    for (int i = len - 1; i >= 0; --i) {
        const std::uint64_t radix = 2 * static_cast<std::uint64_t>(i) + 3;
        digits[i] = static_cast<int>(index % radix);
        index /= radix;
    }
    if (index != 0) throw InvalidInput("type_digits: index out of range");
    return digits;
}

CombinatorialType realize_type(int n, const std::vector<int>& digits) {
    if (n < 3) throw InvalidInput("realize_type: need at least 3 leaves");
    if (static_cast<int>(digits.size()) != n - 3)
        throw InvalidInput("realize_type: expected n - 3 insertion digits");
    CombinatorialType t;
    t.n = n;
    t.edges.reserve(2 * n - 3);
    t.edges = {{0, n}, {1, n}, {2, n}};
    for (int i = 0; i < n - 3; ++i) {
        const int leaf = i + 3;
        const int w = n + i + 1;  // new inner vertex
        const int e = digits[i];
        if (e < 0 || e >= static_cast<int>(t.edges.size()))
            throw InvalidInput("realize_type: insertion digit out of range");
        const int y = t.edges[e].second;
        t.edges[e].second = w;
        t.edges.emplace_back(w, y);
        t.edges.emplace_back(leaf, w);
    }
    return t;
}

MarkedMetricTree type_to_tree(const CombinatorialType& type,
                              const std::vector<std::string>& labels,
                              const std::vector<Rat>& bounded_lengths) {
    const int n = type.n;
    if (static_cast<int>(labels.size()) != n)
        throw DimensionMismatch("type_to_tree: one label per leaf required");
    MarkedMetricTree t;
    t.vertices.assign(2 * n - 2, MarkedMetricTree::VertexKind::Inner);
    for (int i = 0; i < n; ++i) t.vertices[i] = MarkedMetricTree::VertexKind::Foot;
    size_t next_len = 0;
    for (const auto& [v, w] : type.edges) {
        MarkedMetricTree::Edge e;
        e.v = v;
        e.w = w;
        if (v < n || w < n) {
            e.infinite = true;
            const int leaf = v < n ? v : w;
            t.legs[labels[leaf]] = static_cast<int>(t.edges.size());
        } else {
            if (next_len >= bounded_lengths.size())
                throw DimensionMismatch("type_to_tree: not enough bounded lengths");
            e.length = bounded_lengths[next_len++];
        }
        t.edges.push_back(std::move(e));
    }
    if (next_len != bounded_lengths.size())
        throw DimensionMismatch("type_to_tree: too many bounded lengths");
    return t;
}

// ---------------------------------------------------------------------------
// Counting machinery
// ---------------------------------------------------------------------------

namespace {

// Screening thresholds for the floating-point stage.  Matrix entries are
// exact small integers in doubles; only the right-hand side carries rounding
// error, so modest relative margins are safe.  Rejections must clear the
// margin; anything closer is re-verified exactly.
constexpr double PIV_EPS = 1e-9;
constexpr double RES_EPS = 1e-7;
constexpr double LEN_EPS = 1e-7;

struct PreparedConstraint {
    int leaf = -1;                 // index into the sorted leaf labels
    IMat rows;                     // integral covectors
    QVec rhs;                      // <w, target> per row
    std::vector<double> rhs_d;
};

struct Problem {
    int n = 0;   // leaves
    int r = 0;
    int nb = 0;  // bounded edges = n - 3
    int m = 0;   // nb + r
    std::vector<std::string> leaf_labels;      // sorted L0
    std::vector<IVec> delta_leaf;              // delta(label) per leaf, 0 for marks
    std::vector<PreparedConstraint> constraints;
    double scale = 1.0;                        // max |rhs|, >= 1
};

enum class ScreenOutcome { RejectClear, NeedExact };

struct TypeOutcome {
    enum Kind { Accepted, Rejected, Degenerate } kind = Rejected;
    std::vector<Rat> lengths;
    QVec anchor;
    Int multiplicity;
    std::string detail;
};

// Per-worker scratch buffers; everything is allocated once and reused across
// the millions of types.
struct Scratch {
    std::vector<int> digits;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> bounded;                  // bounded edge ids
    std::vector<std::uint32_t> far_mask;       // per edge: leaves beyond it
    std::vector<std::int64_t> u;               // nb x r directions (flat)
    std::vector<int> visit, parent_edge, visit_edge;
    std::vector<std::uint32_t> vmask;
    std::vector<std::array<int, 3>> adj;       // incident edge ids per vertex
    std::vector<int> adj_n;
    std::vector<double> M;                     // m x (m+1) augmented matrix
    std::vector<double> x;
    std::vector<int> pivot_col;

    void init(const Problem& pb) {
        const int n = pb.n;
        digits.assign(std::max(n - 3, 0), 0);
        edges.reserve(2 * n - 3);
        bounded.reserve(pb.nb);
        far_mask.assign(2 * n - 3, 0);
        u.assign(static_cast<size_t>(pb.nb) * pb.r, 0);
        visit.reserve(2 * n - 2);
        parent_edge.assign(2 * n - 2, -1);
        visit_edge.reserve(2 * n - 2);
        vmask.assign(2 * n - 2, 0);
        adj.assign(2 * n - 2, {});
        adj_n.assign(2 * n - 2, 0);
        M.assign(static_cast<size_t>(pb.m) * (pb.m + 1), 0.0);
        x.assign(pb.m, 0.0);
        pivot_col.assign(pb.m, -1);
    }
};

// Rebuilds the tree arrays, leaf masks and edge directions for the type
// given by sc.digits.
void realize_into(const Problem& pb, Scratch& sc) {
    const int n = pb.n;
    sc.edges.clear();
    sc.edges.emplace_back(0, n);
    sc.edges.emplace_back(1, n);
    sc.edges.emplace_back(2, n);
    for (int i = 0; i < n - 3; ++i) {
        const int leaf = i + 3;
        const int w = n + i + 1;
        const int e = sc.digits[i];
        const int y = sc.edges[e].second;
        sc.edges[e].second = w;
        sc.edges.emplace_back(w, y);
        sc.edges.emplace_back(leaf, w);
    }

    const int nv = 2 * n - 2;
    std::fill(sc.adj_n.begin(), sc.adj_n.end(), 0);
    for (int e = 0; e < static_cast<int>(sc.edges.size()); ++e) {
        const auto [v, w] = sc.edges[e];
        sc.adj[v][sc.adj_n[v]++] = e;
        sc.adj[w][sc.adj_n[w]++] = e;
    }

    // DFS from the inner neighbor of leaf 0 (edge 0 is always {0, root}).
    const int root = sc.edges[0].second;
    sc.visit.clear();
    sc.visit_edge.clear();
    std::fill(sc.parent_edge.begin(), sc.parent_edge.begin() + nv, -1);
    sc.visit.push_back(root);
    sc.parent_edge[root] = 0;
    for (size_t head = 0; head < sc.visit.size(); ++head) {
        const int v = sc.visit[head];
        for (int k = 0; k < sc.adj_n[v]; ++k) {
            const int e = sc.adj[v][k];
            if (e == sc.parent_edge[v]) continue;
            const auto [a, b] = sc.edges[e];
            const int w = (a == v) ? b : a;
            if (w >= n) {
                sc.parent_edge[w] = e;
                sc.visit.push_back(w);
            }
        }
    }
    // Bottom-up accumulation of leaf masks (children appear after parents in
    // the visit order).
    for (size_t i = sc.visit.size(); i-- > 0;) {
        const int v = sc.visit[i];
        std::uint32_t mask = 0;
        for (int k = 0; k < sc.adj_n[v]; ++k) {
            const int e = sc.adj[v][k];
            if (e == sc.parent_edge[v]) continue;
            const auto [a, b] = sc.edges[e];
            const int w = (a == v) ? b : a;
            mask |= (w < n) ? (1u << w) : sc.vmask[w];
        }
        sc.vmask[v] = mask;
        if (v != sc.visit[0]) sc.far_mask[sc.parent_edge[v]] = mask;
    }

    // Bounded edges (both endpoints inner) in edge-list order, with their
    // integer directions u_e = sum of delta over the far-side leaves.
    sc.bounded.clear();
    for (int e = 0; e < static_cast<int>(sc.edges.size()); ++e) {
        const auto [a, b] = sc.edges[e];
        if (a >= n && b >= n) sc.bounded.push_back(e);
    }
    for (size_t j = 0; j < sc.bounded.size(); ++j) {
        std::int64_t* uj = &sc.u[j * pb.r];
        std::fill(uj, uj + pb.r, 0);
        std::uint32_t mask = sc.far_mask[sc.bounded[j]];
        while (mask) {
            const int leaf = __builtin_ctz(mask);
            mask &= mask - 1;
            const IVec& d = pb.delta_leaf[leaf];
            if (!d.empty())
                for (int k = 0; k < pb.r; ++k) uj[k] += d[k];
        }
    }
}

// Builds the augmented float matrix for the current type.
void build_float_matrix(const Problem& pb, Scratch& sc) {
    const int m = pb.m;
    double* M = sc.M.data();
    std::memset(M, 0, sizeof(double) * static_cast<size_t>(m) * (m + 1));
    int row = 0;
    for (const auto& pc : pb.constraints) {
        for (size_t q = 0; q < pc.rows.size(); ++q, ++row) {
            const IVec& w = pc.rows[q];
            double* out = M + static_cast<size_t>(row) * (m + 1);
            for (int j = 0; j < pb.nb; ++j) {
                if (!(sc.far_mask[sc.bounded[j]] >> pc.leaf & 1u)) continue;
                const std::int64_t* uj = &sc.u[static_cast<size_t>(j) * pb.r];
                std::int64_t dot = 0;
                for (int k = 0; k < pb.r; ++k) dot += w[k] * uj[k];
                out[j] = static_cast<double>(dot);
            }
            for (int k = 0; k < pb.r; ++k) out[pb.nb + k] = static_cast<double>(w[k]);
            out[m] = pc.rhs_d[q];
        }
    }
}

// Floating-point screening: eliminate, then either reject with a clear
// margin or defer to the exact stage.
ScreenOutcome float_screen(const Problem& pb, Scratch& sc) {
    const int m = pb.m;
    double* M = sc.M.data();
    auto at = [&](int i, int j) -> double& { return M[static_cast<size_t>(i) * (m + 1) + j]; };

    double entry_scale = pb.scale;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) entry_scale = std::max(entry_scale, std::fabs(at(i, j)));

    int row = 0;
    int pivots = 0;
    sc.pivot_col.assign(m, -1);
    for (int col = 0; col < m && row < m; ++col) {
        int p = row;
        double best = 0.0;
        for (int i = row; i < m; ++i) {
            const double v = std::fabs(at(i, col));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) continue;  // structurally empty column: skip safely
        if (best < PIV_EPS * entry_scale) return ScreenOutcome::NeedExact;
        if (p != row)
            for (int j = col; j <= m; ++j) std::swap(at(p, j), at(row, j));
        const double inv = 1.0 / at(row, col);
        for (int i = row + 1; i < m; ++i) {
            const double f = at(i, col) * inv;
            if (f == 0.0) continue;
            for (int j = col + 1; j <= m; ++j) at(i, j) -= f * at(row, j);
            at(i, col) = 0.0;
        }
        sc.pivot_col[row] = col;
        ++row;
        ++pivots;
    }

    if (pivots < m) {
        // Rank-deficient: reject only if some residual row is clearly
        // inconsistent; otherwise decide exactly.
        bool clear = false;
        for (int i = pivots; i < m; ++i)
            if (std::fabs(at(i, m)) > RES_EPS * entry_scale) clear = true;
        return clear ? ScreenOutcome::RejectClear : ScreenOutcome::NeedExact;
    }

    // Unique float solution: back substitution.
    for (int i = m; i-- > 0;) {
        const int col = sc.pivot_col[i];
        double s = at(i, m);
        for (int j = col + 1; j < m; ++j) s -= at(i, j) * sc.x[j];
        sc.x[col] = s / at(i, col);
    }
    // Lengths are the first nb unknowns: a clearly negative length rejects
    // the type (sound even if other lengths sit near zero, since any
    // negative exact length already rejects).  Everything else, including
    // every acceptance candidate, is confirmed exactly.
    for (int j = 0; j < pb.nb; ++j)
        if (sc.x[j] < -LEN_EPS * pb.scale) return ScreenOutcome::RejectClear;
    return ScreenOutcome::NeedExact;
}

// Exact decision for the current type.
TypeOutcome exact_solve(const Problem& pb, Scratch& sc) {
    const int m = pb.m;
    QMat A(m, QVec(m, Rat(0)));
    QVec b(m, Rat(0));
    IMat Ai(m, IVec(m, 0));
    int row = 0;
    for (const auto& pc : pb.constraints) {
        for (size_t q = 0; q < pc.rows.size(); ++q, ++row) {
            const IVec& w = pc.rows[q];
            for (int j = 0; j < pb.nb; ++j) {
                if (!(sc.far_mask[sc.bounded[j]] >> pc.leaf & 1u)) continue;
                const std::int64_t* uj = &sc.u[static_cast<size_t>(j) * pb.r];
                std::int64_t dot = 0;
                for (int k = 0; k < pb.r; ++k) dot += w[k] * uj[k];
                Ai[row][j] = dot;
                A[row][j] = Rat(static_cast<long>(dot));
            }
            for (int k = 0; k < pb.r; ++k) {
                Ai[row][pb.nb + k] = w[k];
                A[row][pb.nb + k] = Rat(static_cast<long>(w[k]));
            }
            b[row] = pc.rhs[q];
        }
    }

    LinSolveResult res = solve_square(A, b);
    TypeOutcome out;
    if (res.kind == SolveKind::Inconsistent) {
        out.kind = TypeOutcome::Rejected;
        return out;
    }
    if (res.kind == SolveKind::Underdetermined) {
        out.kind = TypeOutcome::Degenerate;
        out.detail = "singular consistent system";
        return out;
    }
    // Negative lengths leave the closed cell: reject.  A zero length is a
    // wall solution; since the system is regular here its multiplicity
    // would be nonzero, and wall contributions are not computable in this
    // framework, so the constraints are declared non-generic.
    bool wall = false;
    for (int j = 0; j < pb.nb; ++j) {
        if (res.solution[j] < 0) {
            out.kind = TypeOutcome::Rejected;
            return out;
        }
        if (res.solution[j] == 0) wall = true;
    }
    if (wall) {
        out.kind = TypeOutcome::Degenerate;
        out.detail = "regular solution on a cell wall (zero edge length)";
        return out;
    }
    out.kind = TypeOutcome::Accepted;
    out.lengths.assign(res.solution.begin(), res.solution.begin() + pb.nb);
    out.anchor.assign(res.solution.begin() + pb.nb, res.solution.end());
    out.multiplicity = abs(det_int(Ai));
    return out;
}

struct ChunkOut {
    Int degree;
    std::vector<CountSolution> solutions;
    std::uint64_t rejected = 0;
    std::uint64_t exact_checks = 0;
    bool degenerate = false;
    std::uint64_t degenerate_type = 0;
    std::string degenerate_detail;
};

Problem prepare_problem(const TropicalDegree& deg, const std::vector<std::string>& marks,
                        const std::vector<IncidenceConstraint>& constraints) {
    validate_degree(deg);
    Problem pb;
    pb.r = deg.r;
    pb.leaf_labels = marks;
    for (const auto& l : deg.labels) pb.leaf_labels.push_back(l.name);
    std::sort(pb.leaf_labels.begin(), pb.leaf_labels.end());
    if (std::adjacent_find(pb.leaf_labels.begin(), pb.leaf_labels.end()) !=
        pb.leaf_labels.end())
        throw InvalidInput("count: duplicate leaf label");
    pb.n = static_cast<int>(pb.leaf_labels.size());
    if (pb.n < 3) throw InvalidInput("count: need at least 3 leaves");
    if (pb.n > 30) throw InvalidInput("count: too many leaves");
    pb.nb = pb.n - 3;
    pb.m = pb.nb + pb.r;

    pb.delta_leaf.assign(pb.n, IVec());
    for (int i = 0; i < pb.n; ++i)
        if (deg.has_label(pb.leaf_labels[i]))
            pb.delta_leaf[i] = deg.delta(deg.label_index(pb.leaf_labels[i]));

    int total_rows = 0;
    for (const auto& ic : constraints) {
        PreparedConstraint pc;
        auto it = std::lower_bound(pb.leaf_labels.begin(), pb.leaf_labels.end(), ic.label);
        if (it == pb.leaf_labels.end() || *it != ic.label)
            throw UnknownLabel("constraint on unknown label '" + ic.label + "'");
        pc.leaf = static_cast<int>(it - pb.leaf_labels.begin());
        if (static_cast<int>(ic.point.size()) != pb.r)
            throw DimensionMismatch("constraint target dimension != r");

        IMat dirs = ic.dirs;
        for (const auto& d : dirs) {
            if (static_cast<int>(d.size()) != pb.r)
                throw DimensionMismatch("constraint direction dimension != r");
            if (ivec_is_zero(d)) throw InvalidInput("constraint direction is zero");
        }
        if (deg.has_label(ic.label)) {
            // Boundary-label conditions live in the orbit: quotient by the ray.
            dirs.push_back(deg.rays[deg.labels[deg.label_index(ic.label)].ray]);
        }
        if (dirs.empty()) {
            for (int k = 0; k < pb.r; ++k) {
                IVec w(pb.r, 0);
                w[k] = 1;
                pc.rows.push_back(std::move(w));
            }
        } else {
            QMat dq;
            for (const auto& d : dirs) dq.push_back(ivec_to_qvec(d));
            if (rank_q(dq) != static_cast<int>(dirs.size()))
                throw InvalidInput("constraint directions are linearly dependent");
            pc.rows = integer_kernel(dirs);
        }
        for (const auto& w : pc.rows) {
            Rat rhs(0);
            for (int k = 0; k < pb.r; ++k)
                rhs += Rat(static_cast<long>(w[k])) * ic.point[k];
            pc.rhs.push_back(rhs);
            pc.rhs_d.push_back(pc.rhs.back().get_d());
            pb.scale = std::max(pb.scale, std::fabs(pc.rhs_d.back()));
        }
        total_rows += static_cast<int>(pc.rows.size());
        pb.constraints.push_back(std::move(pc));
    }
    if (total_rows != pb.m)
        throw DimensionMismatch(
            "constraint codimensions sum to " + std::to_string(total_rows) +
            " but the moduli dimension is " + std::to_string(pb.m) +
            " (= #leaves - 3 + r)");
    return pb;
}

void process_chunk(const Problem& pb, const CountOptions& opts, std::uint64_t chunk_id,
                   std::uint64_t total, Scratch& sc, ChunkOut& out) {
    const std::uint64_t lo = chunk_id * opts.chunk_size;
    const std::uint64_t hi = std::min<std::uint64_t>(lo + opts.chunk_size, total);
    sc.digits = type_digits(pb.n, lo);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        realize_into(pb, sc);

        bool need_exact = true;
        if (opts.prefilter) {
            build_float_matrix(pb, sc);
            need_exact = (float_screen(pb, sc) == ScreenOutcome::NeedExact);
        }
        if (need_exact) {
            ++out.exact_checks;
            TypeOutcome t = exact_solve(pb, sc);
            switch (t.kind) {
                case TypeOutcome::Accepted: {
                    CountSolution sol;
                    sol.type_index = idx;
                    sol.lengths = std::move(t.lengths);
                    sol.anchor = std::move(t.anchor);
                    sol.multiplicity = t.multiplicity;
                    out.degree += sol.multiplicity;
                    out.solutions.push_back(std::move(sol));
                    break;
                }
                case TypeOutcome::Rejected:
                    ++out.rejected;
                    break;
                case TypeOutcome::Degenerate:
                    if (!out.degenerate) {
                        out.degenerate = true;
                        out.degenerate_type = idx;
                        out.degenerate_detail = t.detail;
                    }
                    ++out.rejected;
                    break;
            }
        } else {
            ++out.rejected;
        }

        // Increment the mixed-radix insertion counter.
        for (int i = pb.n - 4; i >= 0; --i) {
            if (++sc.digits[i] < 2 * i + 3) break;
            sc.digits[i] = 0;
        }
    }
}

}  // namespace

CountResult count_curves(const TropicalDegree& deg, const std::vector<std::string>& marks,
                         const std::vector<IncidenceConstraint>& constraints,
                         const CountOptions& opts) {
    Problem pb = prepare_problem(deg, marks, constraints);
    const std::uint64_t total = type_count(pb.n);
    if (total > opts.max_types)
        throw InvalidInput("count: " + std::to_string(total) +
                           " combinatorial types exceed the feasibility limit");

    const std::uint64_t chunk_size = std::max<std::uint64_t>(opts.chunk_size, 1);
    CountOptions eff = opts;
    eff.chunk_size = chunk_size;
    const std::uint64_t num_chunks = (total + chunk_size - 1) / chunk_size;
    std::vector<ChunkOut> outs(num_chunks);

    const int threads =
        std::max(1, std::min<int>(opts.threads, static_cast<int>(
                                                    std::min<std::uint64_t>(num_chunks, 256))));
    if (threads <= 1) {
        Scratch sc;
        sc.init(pb);
        for (std::uint64_t c = 0; c < num_chunks; ++c)
            process_chunk(pb, eff, c, total, sc, outs[c]);
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&]() {
            Scratch sc;
            sc.init(pb);
            while (true) {
                const std::uint64_t c = next.fetch_add(1);
                if (c >= num_chunks) break;
                process_chunk(pb, eff, c, total, sc, outs[c]);
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Deterministic merge in chunk order.
    CountResult res;
    res.total_types = total;
    for (const auto& out : outs) {
        if (out.degenerate)
            throw Degenerate("constraints are not generic: " + out.degenerate_detail +
                             " at combinatorial type " + std::to_string(out.degenerate_type));
        res.degree += out.degree;
        res.rejected_types += out.rejected;
        res.exact_checks += out.exact_checks;
        for (const auto& s : out.solutions) res.solutions.push_back(s);
    }
    // Attach canonical encodings to the accepted types.
    for (auto& s : res.solutions) {
        CombinatorialType t = realize_type(pb.n, type_digits(pb.n, s.type_index));
        s.type_encoding = canonical_encoding(type_to_tree(t, pb.leaf_labels, s.lengths), false);
    }
    return res;
}

ParametrizedTropCurve solution_to_curve(const TropicalDegree& deg,
                                        const std::vector<std::string>& marks,
                                        std::uint64_t type_index,
                                        const std::vector<Rat>& lengths, const QVec& anchor) {
    validate_degree(deg);
    std::vector<std::string> leaf_labels = marks;
    for (const auto& l : deg.labels) leaf_labels.push_back(l.name);
    std::sort(leaf_labels.begin(), leaf_labels.end());
    const int n = static_cast<int>(leaf_labels.size());

    CombinatorialType type = realize_type(n, type_digits(n, type_index));
    ParametrizedTropCurve c;
    c.degree = deg;
    c.marks = marks;
    c.tree = type_to_tree(type, leaf_labels, lengths);

    // Positions: anchor at the vertex of leaf 0, then walk outward adding
    // length * direction per bounded edge.
    std::vector<IVec> delta_leaf(n);
    for (int i = 0; i < n; ++i)
        if (deg.has_label(leaf_labels[i]))
            delta_leaf[i] = deg.delta(deg.label_index(leaf_labels[i]));

    auto adj = tree_adjacency(c.tree);
    const int root = type.edges[0].second;
    std::vector<int> stack{root};
    std::vector<char> seen(c.tree.vertices.size(), 0);
    seen[root] = 1;
    c.positions[root] = anchor;
    // Leaf masks for directions.
    std::vector<std::uint32_t> far(c.tree.edges.size(), 0);
    {
        // Compute far-side masks by a DFS identical to the solver's.
        std::vector<int> order{root}, pedge(c.tree.vertices.size(), -1);
        pedge[root] = c.tree.legs.at(leaf_labels[0]);
        for (size_t h = 0; h < order.size(); ++h) {
            int v = order[h];
            for (auto [e, w] : adj[v]) {
                if (e == pedge[v] || c.tree.is_foot(w)) continue;
                pedge[w] = e;
                order.push_back(w);
            }
        }
        std::vector<std::uint32_t> vmask(c.tree.vertices.size(), 0);
        for (size_t i = order.size(); i-- > 0;) {
            int v = order[i];
            std::uint32_t mask = 0;
            for (auto [e, w] : adj[v]) {
                if (e == pedge[v]) continue;
                mask |= c.tree.is_foot(w) ? (1u << w) : vmask[w];
            }
            vmask[v] = mask;
            if (v != root) far[pedge[v]] = mask;
        }
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [e, w] : adj[v]) {
            if (c.tree.is_foot(w) || seen[w]) continue;
            seen[w] = 1;
            QVec dir(deg.r, Rat(0));
            std::uint32_t mask = far[e];
            while (mask) {
                const int leaf = __builtin_ctz(mask);
                mask &= mask - 1;
                if (!delta_leaf[leaf].empty())
                    dir = qvec_add(dir, ivec_to_qvec(delta_leaf[leaf]));
            }
            c.positions[w] = qvec_add(c.positions.at(v), qvec_scale(c.tree.edges[e].length, dir));
            stack.push_back(w);
        }
    }
    return c;
}

Int kontsevich_oracle(int d) {
    if (d < 1) throw InvalidInput("kontsevich_oracle: d >= 1 required");
    std::vector<Int> N(d + 1, Int(0));
    N[1] = 1;
    for (int k = 2; k <= d; ++k) {
        Int sum(0);
        for (int d1 = 1; d1 < k; ++d1) {
            const int d2 = k - d1;
            Int b1, b2;
            mpz_bin_uiui(b1.get_mpz_t(), 3 * k - 4, 3 * d1 - 2);
            mpz_bin_uiui(b2.get_mpz_t(), 3 * k - 4, 3 * d1 - 1);
            Int term = N[d1] * N[d2];
            Int d1z(d1), d2z(d2);
            sum += term * (d1z * d1z * d2z * d2z * b1 - d1z * d1z * d1z * d2z * b2);
        }
        N[k] = sum;
    }
    return N[d];
}

}  // namespace tropcurves
