// tropcurve — command-line interface.
//
// Subcommands:
//   tropicalize   cluster family + dual parametrized tropical curve of an input
//   verify        check that tropicalization commutes with the evaluation maps
//   pluecker      moduli point of an input, computed along both routes
//   count         enumerate tropical curves through incidence constraints
//
// Exit codes: 0 success, 1 unexpected failure or failed verification,
// 2 invalid input / dimension error, 3 precision loss, 4 genericity
// exhaustion.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tropcurves/enumerate.hpp"
#include "tropcurves/errors.hpp"
#include "tropcurves/generators.hpp"
#include "tropcurves/json_util.hpp"
#include "tropcurves/linalg.hpp"
#include "tropcurves/moduli.hpp"
#include "tropcurves/tropicalize.hpp"

using nlohmann::json;
using namespace tropcurves;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot open input file '" + path + "'");
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << std::endl;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot open output file '" + path + "'");
    f << text << std::endl;
}

void write_output(const std::string& path, const json& j) { write_text(path, j.dump(2)); }

int exit_code_for(const Error& e) {
    const std::string& k = e.kind();
    if (k == "PrecisionLoss") return 3;
    if (k == "Degenerate") return 4;
    return 2;
}

void report_error(const Error& e) {
    json j = {{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
    std::cerr << j.dump() << std::endl;
}

// ---------------------------------------------------------------------------

struct CommonOpts {
    std::uint64_t seed = 42;
    int threads = 1;
    std::string out;
};

int run_tropicalize(const std::string& in_file, const std::string& dot_file,
                    const CommonOpts& co) {
    CurveInput in = curve_input_from_json(read_json_file(in_file));
    TropicalizationResult res = corresponding_curve(in);
    BalancingReport bal = check_balancing(res.curve);
    json out = {
        {"family", cluster_family_to_json(res.family)},
        {"curve", curve_to_json(res.curve)},
        {"balanced", bal.ok},
    };
    if (!bal.ok) out["balancing_detail"] = bal.detail;
    write_output(co.out, out);
    if (!dot_file.empty()) write_text(dot_file, curve_to_dot(res.curve));
    return bal.ok ? 0 : 1;
}

json verify_one(const CurveInput& in, json* full_report) {
    CommutativityReport comm = verify_commutativity(in);
    ModuliConsistencyReport mc = moduli_consistency(in);
    json j = {
        {"commutes", comm.all_pass},
        {"moduli_consistent", mc.ok},
    };
    if (!mc.ok) j["moduli_detail"] = mc.detail;
    if (full_report) (*full_report) = commutativity_report_to_json(comm);
    return j;
}

int run_verify(const std::string& in_file, int random_count, int r, int d, int marks,
               const CommonOpts& co) {
    json out;
    bool all_pass = true;
    if (!in_file.empty()) {
        CurveInput in = curve_input_from_json(read_json_file(in_file));
        json full;
        json j = verify_one(in, &full);
        all_pass = j["commutes"].get<bool>() && j["moduli_consistent"].get<bool>();
        out = j;
        out["report"] = full;
    } else {
        Generators gen(co.seed);
        json cases = json::array();
        for (int k = 0; k < random_count; ++k) {
            CurveInput in = gen.curve_input(r, d, marks);
            json j = verify_one(in, nullptr);
            const bool ok = j["commutes"].get<bool>() && j["moduli_consistent"].get<bool>();
            if (!ok) {
                all_pass = false;
                j["input"] = curve_input_to_json(in);
            }
            j["case"] = k;
            cases.push_back(j);
        }
        out = {{"seed", co.seed}, {"r", r},     {"d", d},
               {"marks", marks},  {"cases", random_count}, {"results", cases}};
    }
    out["all_pass"] = all_pass;
    write_output(co.out, out);
    return all_pass ? 0 : 1;
}

int run_pluecker(const std::string& in_file, const CommonOpts& co) {
    CurveInput in = curve_input_from_json(read_json_file(in_file));
    ModuliConsistencyReport mc = moduli_consistency(in);
    json out = {
        {"from_valuations", moduli_point_to_json(mc.from_input)},
        {"from_curve", moduli_point_to_json(mc.from_curve)},
        {"consistent", mc.ok},
    };
    if (!mc.ok) out["detail"] = mc.detail;
    write_output(co.out, out);
    return mc.ok ? 0 : 1;
}

// Constraints file: a JSON array of entries
//   {"label": str, "point": [rat x r]}                       (point condition)
//   {"label": str, "affine": {"base": [...], "dirs": [[...],...]}}
//   {"label": str, "point": [...], "dirs": [[...],...]}      (shorthand)
std::vector<IncidenceConstraint> constraints_from_json(const json& j, int r) {
    if (!j.is_array()) throw InvalidInput("constraints: expected a JSON array");
    std::vector<IncidenceConstraint> cs;
    for (const auto& e : j) {
        IncidenceConstraint c;
        c.label = json_require(e, "label").get<std::string>();
        const json* dirs = nullptr;
        if (e.contains("affine")) {
            const json& a = e["affine"];
            c.point = qvec_from_json(json_require(a, "base"));
            if (a.contains("dirs")) dirs = &a["dirs"];
        } else {
            c.point = qvec_from_json(json_require(e, "point"));
            if (e.contains("dirs")) dirs = &e["dirs"];
        }
        if (static_cast<int>(c.point.size()) != r)
            throw DimensionMismatch("constraint target dimension != r");
        if (dirs)
            for (const auto& dj : *dirs) c.dirs.push_back(ivec_from_json(dj));
        cs.push_back(std::move(c));
    }
    return cs;
}

json count_result_to_json(const CountResult& res, const TropicalDegree& deg) {
    json sols = json::array();
    for (const auto& s : res.solutions) {
        json lens = json::array();
        for (const auto& l : s.lengths) lens.push_back(rat_to_json(l));
        sols.push_back({{"type_index", s.type_index},
                        {"type", s.type_encoding},
                        {"lengths", lens},
                        {"anchor", qvec_to_json(s.anchor)},
                        {"multiplicity", s.multiplicity.get_str()}});
    }
    json out = {{"degree", res.degree.get_str()},
                {"solutions", sols},
                {"total_types", res.total_types},
                {"rejected_types", res.rejected_types},
                {"exact_checks", res.exact_checks}};
    if (deg.projective) {
        // Quotient by relabelling the d identical ends on each of the r+1 rays.
        Int fact(1);
        for (int k = 2; k <= deg.d; ++k) fact *= k;
        Int denom(1);
        for (size_t i = 0; i < deg.rays.size(); ++i) denom *= fact;
        if (res.degree % denom == 0)
            out["unlabeled_degree"] = Int(res.degree / denom).get_str();
    }
    return out;
}

struct CountArgs {
    int r = 2;
    int d = 1;
    std::string degree_file;
    std::string constraints_file;
    std::string points_file;
    std::string lines_file;
    bool points_given = false;  // --random-points present
    bool lines_given = false;   // --random-lines present
    std::string points_arg;     // "" = derive count from the dimension condition
    std::string lines_arg;
    int retries = 8;
    bool prefilter = true;
};

// Rows a constraint contributes to the incidence system: r minus the rank of
// its direction span (plus the ray for constraints on boundary labels).
int constraint_rows(const IncidenceConstraint& c, const TropicalDegree& deg) {
    std::vector<IVec> dirs = c.dirs;
    if (deg.has_label(c.label)) dirs.push_back(deg.rays[deg.labels[deg.label_index(c.label)].ray]);
    if (dirs.empty()) return deg.r;
    QMat m;
    for (const auto& dv : dirs) {
        QVec row(dv.size());
        for (size_t i = 0; i < dv.size(); ++i) row[i] = Rat(dv[i]);
        m.push_back(std::move(row));
    }
    return deg.r - rank_q(m);
}

int parse_count_arg(const std::string& s, const char* flag) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 0) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidInput(std::string("count: ") + flag + " expects a non-negative count");
    }
}

int run_count(const CountArgs& a, const CommonOpts& co) {
    TropicalDegree deg = a.degree_file.empty()
                             ? projective_degree(a.r, a.d)
                             : degree_from_json(read_json_file(a.degree_file));
    const int r = deg.r;
    CountOptions opts;
    opts.threads = co.threads;
    opts.prefilter = a.prefilter;

    std::vector<IncidenceConstraint> fixed;
    for (const std::string* f : {&a.constraints_file, &a.points_file, &a.lines_file}) {
        if (f->empty()) continue;
        for (auto& c : constraints_from_json(read_json_file(*f), r))
            fixed.push_back(std::move(c));
    }
    std::vector<std::string> marks;
    int fixed_rows = 0;
    for (const auto& c : fixed) {
        fixed_rows += constraint_rows(c, deg);
        if (!deg.has_label(c.label) &&
            std::find(marks.begin(), marks.end(), c.label) == marks.end())
            marks.push_back(c.label);
    }
    std::sort(marks.begin(), marks.end());

    // Random constraints: counts may be explicit or derived from the
    // requirement that the incidence system be square,
    //   fixed_rows + P*r + L*(r-1) = (#marks + #degree legs - 3) + r.
    const int deficit = static_cast<int>(deg.labels.size()) + r - 3 +
                        static_cast<int>(marks.size()) - fixed_rows;
    int n_points = 0, n_lines = 0;
    // With no constraint source at all, default to as many random points as
    // the dimension condition demands.
    const bool default_points = !a.points_given && !a.lines_given && fixed.empty();
    const bool points_auto = (a.points_given && a.points_arg.empty()) || default_points;
    const bool lines_auto = a.lines_given && a.lines_arg.empty();
    if (points_auto && lines_auto)
        throw InvalidInput(
            "count: at most one of --random-points/--random-lines may omit its count");
    if (a.points_given && !points_auto)
        n_points = parse_count_arg(a.points_arg, "--random-points");
    if (a.lines_given && !lines_auto) n_lines = parse_count_arg(a.lines_arg, "--random-lines");
    if (points_auto) {
        const int rem = deficit - n_lines * (r - 2);
        if (r < 2 || rem < 0 || rem % (r - 1) != 0)
            throw DimensionMismatch(
                "count: no point-constraint count makes the incidence system square");
        n_points = rem / (r - 1);
    } else if (lines_auto) {
        const int rem = deficit - n_points * (r - 1);
        if (r < 3 || rem < 0 || rem % (r - 2) != 0)
            throw DimensionMismatch(
                "count: no line-constraint count makes the incidence system square");
        n_lines = rem / (r - 2);
    }
    const bool random_mode = a.points_given || a.lines_given || default_points;

    std::vector<std::string> rand_pts, rand_lns;
    for (int i = 0; static_cast<int>(rand_pts.size() + rand_lns.size()) < n_points + n_lines;
         ++i) {
        std::string name = "p" + std::to_string(i);
        if (std::find(marks.begin(), marks.end(), name) != marks.end()) continue;
        if (static_cast<int>(rand_pts.size()) < n_points)
            rand_pts.push_back(name);
        else
            rand_lns.push_back(name);
        marks.push_back(name);
    }

    int attempt = 0;
    for (;;) {
        std::vector<IncidenceConstraint> constraints = fixed;
        if (random_mode) {
            Generators gen(co.seed + static_cast<std::uint64_t>(attempt));
            for (auto& c : gen.point_constraints(rand_pts, r)) constraints.push_back(c);
            for (auto& c : gen.line_constraints(rand_lns, r)) constraints.push_back(c);
        }
        try {
            const auto t0 = std::chrono::steady_clock::now();
            CountResult res = count_curves(deg, marks, constraints, opts);
            const auto t1 = std::chrono::steady_clock::now();
            json out = count_result_to_json(res, deg);
            out["r"] = r;
            if (deg.projective)
                out["d"] = deg.d;
            else
                out["degree"] = degree_to_json(deg);
            out["marks"] = marks;
            if (random_mode) {
                out["seed"] = co.seed;
                out["attempts"] = attempt + 1;
            }
            json cj = json::array();
            for (const auto& c : constraints) {
                json e = {{"label", c.label}, {"point", qvec_to_json(c.point)}};
                if (!c.dirs.empty()) {
                    json dj = json::array();
                    for (const auto& dv : c.dirs) dj.push_back(ivec_to_json(dv));
                    e["dirs"] = dj;
                }
                cj.push_back(e);
            }
            out["constraints"] = cj;
            write_output(co.out, out);
            std::cerr << "count: " << res.total_types << " types in "
                      << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
                             .count()
                      << " ms" << std::endl;
            return 0;
        } catch (const Degenerate&) {
            if (!random_mode || attempt + 1 >= a.retries) throw;
            std::cerr << "count: degenerate constraints (attempt " << attempt + 1
                      << "), retrying with a fresh draw" << std::endl;
            ++attempt;
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tropcurve: tropicalization of parametrized rational curves"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOpts co;
    app.add_option("--seed", co.seed, "random seed")->capture_default_str();
    app.add_option("--threads", co.threads, "worker threads")->capture_default_str();
    app.add_option("--out", co.out, "output file (default: stdout)");

    // tropicalize
    auto* trop = app.add_subcommand(
        "tropicalize", "cluster family and dual tropical curve of a curve input");
    std::string trop_in, trop_dot;
    trop->add_option("--in", trop_in, "curve input JSON")->required();
    trop->add_option("--emit-dot", trop_dot, "write the dual tree in DOT format");

    // verify
    auto* ver = app.add_subcommand(
        "verify", "verify tropicalization commutes with evaluation and moduli maps");
    std::string ver_in;
    int ver_random = 0, ver_r = 2, ver_d = 2, ver_marks = 2;
    ver->add_option("--in", ver_in, "curve input JSON");
    ver->add_option("--random", ver_random, "verify N random inputs instead");
    ver->add_option("--r", ver_r, "dimension for random inputs")->capture_default_str();
    ver->add_option("--d", ver_d, "degree for random inputs")->capture_default_str();
    ver->add_option("--marks", ver_marks, "marks for random inputs")->capture_default_str();

    // pluecker
    auto* plk = app.add_subcommand(
        "pluecker", "moduli point of a curve input along both routes");
    std::string plk_in;
    plk->add_option("--in", plk_in, "curve input JSON")->required();

    // count
    auto* cnt = app.add_subcommand(
        "count", "count tropical curves meeting point/line constraints");
    CountArgs ca;
    bool cnt_no_prefilter = false;
    cnt->add_option("--r", ca.r, "ambient dimension")->capture_default_str();
    cnt->add_option("--d", ca.d, "curve degree")->capture_default_str();
    cnt->add_option("--degree-file", ca.degree_file, "toric degree JSON file");
    cnt->add_option("--constraints", ca.constraints_file, "constraints JSON file");
    cnt->add_option("--points-file", ca.points_file, "point constraints JSON file");
    cnt->add_option("--lines-file", ca.lines_file, "line constraints JSON file");
    auto* rp = cnt->add_option("--random-points", ca.points_arg,
                               "random point constraints (count optional)")
                   ->expected(0, 1);
    auto* rl = cnt->add_option("--random-lines", ca.lines_arg,
                               "random line constraints (count optional)")
                   ->expected(0, 1);
    cnt->add_option("--retries", ca.retries, "attempts before giving up on genericity")
        ->capture_default_str();
    cnt->add_flag("--no-prefilter", cnt_no_prefilter, "disable floating-point screening");

    CLI11_PARSE(app, argc, argv);

    try {
        if (trop->parsed()) return run_tropicalize(trop_in, trop_dot, co);
        if (ver->parsed()) {
            if (ver_in.empty() && ver_random <= 0)
                throw InvalidInput("verify: give --in FILE or --random N");
            return run_verify(ver_in, ver_random, ver_r, ver_d, ver_marks, co);
        }
        if (plk->parsed()) return run_pluecker(plk_in, co);
        if (cnt->parsed()) {
            ca.points_given = rp->count() > 0;
            ca.lines_given = rl->count() > 0;
            ca.prefilter = !cnt_no_prefilter;
            return run_count(ca, co);
        }
    } catch (const Error& e) {
        report_error(e);
        return exit_code_for(e);
    } catch (const std::exception& e) {
        json j = {{"error", {{"kind", "internal"}, {"message", e.what()}}}};
        std::cerr << j.dump() << std::endl;
        return 1;
    }
    return 1;
}
