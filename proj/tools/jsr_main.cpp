#include <chrono>
#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jsr/auerbach.hpp"
#include "jsr/errors.hpp"
#include "jsr/extremal.hpp"
#include "jsr/io.hpp"
#include "jsr/matset.hpp"
#include "jsr/pairs.hpp"
#include "jsr/polytope.hpp"
#include "jsr/positions.hpp"
#include "jsr/shady.hpp"

namespace {

using namespace jsr;
using Clock = std::chrono::steady_clock;

struct GlobalOpts {
    long long seed = 0;
    bool strict = false;
};

// exit codes: 0 ok, 1 invalid input, 2 numerical failure or, with --strict,
// an uncertified result
constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNumerical = 2;

std::vector<int> parse_index_set(const std::string& text, int dim) {
    std::vector<int> out;
    std::string token;
    for (char c : text + ",") {
        if (c == ',') {
            if (token.empty()) continue;
            const int one_based = std::stoi(token);
            if (one_based < 1 || one_based > dim)
                throw InvalidInputError("index " + token + " out of range 1.." +
                                        std::to_string(dim));
            out.push_back(one_based - 1);
            token.clear();
        } else {
            token += c;
        }
    }
    if (out.empty()) throw InvalidInputError("empty index set");
    return out;
}

ProductWord parse_word(const std::string& text) {
    ProductWord w;
    std::string token;
    for (char c : text + ",") {
        if (c == ',') {
            if (token.empty()) continue;
            w.letters.push_back(std::stoi(token));
            token.clear();
        } else {
            token += c;
        }
    }
    if (w.letters.empty()) throw InvalidInputError("empty product word");
    return w;
}

struct Timer {
    Clock::time_point start = Clock::now();
    double seconds() const { return std::chrono::duration<double>(Clock::now() - start).count(); }
};

PolytopalNorm load_norm(const std::string& path) { return PolytopalNorm(load_polytope(path)); }

int run_estimate(const GlobalOpts& g, const std::string& input, int depth,
                 const std::string& ball_path, const std::string& report_path) {
    Timer timer;
    RunReport report;
    report.command = "estimate";
    report.seed = g.seed;
    report.add_input(input);
    const MatrixSet m = load_matrix_set(input);

    std::optional<PolytopalNorm> norm;
    if (!ball_path.empty()) {
        report.add_input(ball_path);
        norm = load_norm(ball_path);
    }
    JsrOptions opt;
    opt.depth = depth;
    if (norm) opt.norm = &*norm;
    const JsrBounds b = jsr_bounds(m, opt);
    std::printf("lower %.10g\nupper %.10g\n", b.lower, b.upper);
    if (!b.complete) std::printf("note: partial result, node budget reached at depth %d\n", b.depth);
    report.outputs["lower"] = b.lower;
    report.outputs["upper"] = b.upper;
    report.outputs["depth"] = b.depth;
    report.outputs["pruned"] = static_cast<double>(b.pruned);
    report.outputs["complete"] = b.complete ? 1.0 : 0.0;
    report.notes["best_word"] = b.best_word.str();
    report.certified["lower-bound"] = {true, "spectral radius of an explicit product"};
    report.certified["upper-bound"] =
        {b.complete, b.complete ? "exhaustive per-level norm maxima" : "partial enumeration"};
    report.wall_time = timer.seconds();
    if (!report_path.empty()) save_report(report_path, report);
    return (!b.complete && g.strict) ? kExitNumerical : kExitOk;
}

int run_normalize(const GlobalOpts& g, const std::string& input, int depth,
                  const std::string& out, const std::string& transform_out,
                  const std::string& report_path) {
    Timer timer;
    RunReport report;
    report.command = "normalize";
    report.seed = g.seed;
    report.add_input(input);
    const MatrixSet m = load_matrix_set(input);
    const NormalizeResult res = normalize_entries(m, depth);
    if (!out.empty()) save_matrix_set(out, res.transformed);
    if (!transform_out.empty()) save_matrix(transform_out, res.transform.t);
    std::printf("path %s\nrho_upper %.10g\nmax_entry %.10g\ncertified %d\n",
                res.report.path.c_str(), res.report.rho_upper, res.report.max_entry,
                res.report.certified ? 1 : 0);
    report.outputs["rho_lower"] = res.report.rho_lower;
    report.outputs["rho_upper"] = res.report.rho_upper;
    report.outputs["max_entry"] = res.report.max_entry;
    report.outputs["entry_ratio"] = res.report.entry_ratio;
    report.outputs["epsilon"] = res.report.epsilon;
    report.notes["path"] = res.report.path;
    report.notes["word"] = res.report.word.str();
    report.certified["entry-bound"] = {res.report.certified,
                                       "max entry re-checked against the certified rho upper bound"};
    report.wall_time = timer.seconds();
    if (!report_path.empty()) save_report(report_path, report);
    return (!res.report.certified && g.strict) ? kExitNumerical : kExitOk;
}

int run_extremal(const GlobalOpts& g, const std::string& input, const std::string& word_text,
                 const std::string& out, const std::string& report_path) {
    Timer timer;
    RunReport report;
    report.command = "extremal";
    report.seed = g.seed;
    report.add_input(input);
    const MatrixSet m = load_matrix_set(input);
    const SmpCandidate smp = smp_from_word(m, parse_word(word_text));
    const InvariantPolytopeResult res = build_invariant_polytope(m, smp);
    const PolytopalNorm norm(res.ball);
    const bool extremal_ok = verify_extremal(m, norm, smp.ratio);
    if (!out.empty()) save_polytope(out, res.ball);
    std::printf("ratio %.10g\ncertified %d\nvertices %d\nfacets %d\n", smp.ratio,
                res.certified ? 1 : 0, res.ball.vertex_count(), res.ball.facet_count());
    report.outputs["ratio"] = smp.ratio;
    report.outputs["vertex_count"] = res.ball.vertex_count();
    report.outputs["facet_count"] = res.ball.facet_count();
    report.outputs["iterations"] = res.iterations;
    report.outputs["added_points"] = res.added_points;
    report.certified["extremal"] = {res.certified && extremal_ok, "vertex-mapping check"};
    report.wall_time = timer.seconds();
    if (!report_path.empty()) save_report(report_path, report);
    return (!res.certified && g.strict) ? kExitNumerical : kExitOk;
}

int run_auerbach(const GlobalOpts& g, const std::string& ball_path, const std::string& out,
                 const std::string& report_path) {
    Timer timer;
    RunReport report;
    report.command = "auerbach";
    report.seed = g.seed;
    report.add_input(ball_path);
    const PolytopalNorm norm = load_norm(ball_path);
    const AuerbachBasis basis = auerbach_basis(norm);
    const SimilarityTransform tr = transform_from_basis(basis);
    const bool sandwich = verify_sandwich(tr, norm, 10000, static_cast<unsigned>(g.seed));
    if (!out.empty()) save_matrix(out, tr.t);
    std::printf("cond %.10g\nsandwich %d\n", tr.cond, sandwich ? 1 : 0);
    report.outputs["cond"] = tr.cond;
    report.outputs["dim"] = norm.dim();
    report.certified["auerbach"] = {sandwich, "sandwich inequality on seeded samples"};
    report.wall_time = timer.seconds();
    if (!report_path.empty()) save_report(report_path, report);
    return (!sandwich && g.strict) ? kExitNumerical : kExitOk;
}

void fill_shadiness_report(RunReport& report, const ShadinessEstimate& est) {
    report.outputs["value"] = est.value;
    report.outputs["rank"] = est.rank;
    report.outputs["grid_level"] = est.grid_level;
    report.outputs["refined"] = est.refined ? 1.0 : 0.0;
    report.certified["shadiness-estimate"] = {
        false, "heuristic grid search; upper estimate of the minimal projection norm only"};
}

int run_shady_icosahedron(const GlobalOpts& g, int grid_level, int refine,
                          const std::string& out, const std::string& report_path) {
    Timer timer;
    RunReport report;
    report.command = "shady icosahedron";
    report.seed = g.seed;
    const PolytopalNorm ico = icosahedron_norm();
    if (!out.empty()) save_polytope(out, ico.ball());
    const ShadinessEstimate est = shadiness_estimate(ico, 2, grid_level, refine);
    std::printf("estimate %.10g\n", est.value);
    fill_shadiness_report(report, est);
    report.certified["catalog"] = {true, "exact rational orbit and incidence validation"};
    report.wall_time = timer.seconds();
    if (!report_path.empty()) save_report(report_path, report);
    return kExitOk;
}

int run_shady_estimate(const GlobalOpts& g, const std::string& ball_path, int grid_level,
                       int refine, const std::string& report_path) {
    Timer timer;
    RunReport report;
    report.command = "shady estimate";
    report.seed = g.seed;
    report.add_input(ball_path);
    const PolytopalNorm norm = load_norm(ball_path);
    const ShadinessEstimate est = shadiness_estimate(norm, 2, grid_level, refine);
    std::printf("estimate %.10g\n", est.value);
    fill_shadiness_report(report, est);
    report.wall_time = timer.seconds();
    if (!report_path.empty()) save_report(report_path, report);
    return kExitOk;
}

int run_shady_witness(const GlobalOpts& g, const std::string& set_path,
                      const std::string& transform_path, const std::string& j_text,
                      const std::string& ball_path, const std::string& report_path) {
    Timer timer;
    RunReport report;
    report.command = "shady witness";
    report.seed = g.seed;
    report.add_input(set_path);
    report.add_input(transform_path);
    const MatrixSet set = load_matrix_set(set_path);
    const Matrix t = load_matrix(transform_path);
    std::optional<PolytopalNorm> norm;
    if (!ball_path.empty()) {
        report.add_input(ball_path);
        norm = load_norm(ball_path);
    } else {
        norm = icosahedron_norm();
    }
    const std::vector<int> index_set = parse_index_set(j_text, set.dim());
    const Witness w = submatrix_witness(set, *norm, t, index_set);
    std::printf("alpha %.10g\nresidual %.3e\n", w.alpha, w.residual);
    report.outputs["alpha"] = w.alpha;
    report.outputs["residual"] = w.residual;
    report.certified["witness"] = {true, "eigen-equation residual"};
    report.wall_time = timer.seconds();
    if (!report_path.empty()) save_report(report_path, report);
    return kExitOk;
}

int run_john(const GlobalOpts& g, const std::string& ball_path, const std::string& out,
             const std::string& report_path) {
    Timer timer;
    RunReport report;
    report.command = "john";
    report.seed = g.seed;
    report.add_input(ball_path);
    const PolytopalNorm norm = load_norm(ball_path);
    const JohnTransform jt = john_transform(norm);
    if (!out.empty()) save_matrix(out, jt.transform.t);
    std::printf("max_facet_norm %.12g\nmax_vertex_norm %.12g\nsqrt_d %.12g\n",
                jt.containment.max_facet_norm, jt.containment.max_vertex_norm,
                jt.containment.sqrt_d);
    report.outputs["max_facet_norm"] = jt.containment.max_facet_norm;
    report.outputs["max_vertex_norm"] = jt.containment.max_vertex_norm;
    report.outputs["sqrt_d"] = jt.containment.sqrt_d;
    report.outputs["cond"] = jt.transform.cond;
    report.certified["john"] = {jt.containment.inner_ok && jt.containment.outer_ok,
                                "containment re-check on vertices and facets"};
    report.wall_time = timer.seconds();
    if (!report_path.empty()) save_report(report_path, report);
    return kExitOk;
}

int run_submatrix_bound(const GlobalOpts& g, const std::string& set_path,
                        const std::string& ball_path, const std::string& j_text, int depth,
                        bool all_patterns, const std::string& report_path) {
    Timer timer;
    RunReport report;
    report.command = "submatrix-bound";
    report.seed = g.seed;
    report.add_input(set_path);
    const MatrixSet m = load_matrix_set(set_path);

    bool all_ok = true;
    if (all_patterns) {
        const auto reports = verify_all_submatrices_bound(m, depth);
        for (const auto& r : reports) {
            std::string key = "J=";
            for (size_t i = 0; i < r.index_set.size(); ++i)
                key += (i ? "," : "") + std::to_string(r.index_set[i] + 1);
            std::printf("%s upper %.10g bound %.10g satisfied %d\n", key.c_str(),
                        r.rho_sub_upper, r.bound, r.satisfied ? 1 : 0);
            report.outputs[key + "/upper"] = r.rho_sub_upper;
            report.outputs[key + "/bound"] = r.bound;
            report.outputs[key + "/satisfied"] = r.satisfied ? 1.0 : 0.0;
            all_ok = all_ok && r.satisfied;
        }
        report.certified["sqrt-d-bound"] = {all_ok, "per-pattern submatrix jsr upper bounds"};
    } else {
        if (ball_path.empty())
            throw InvalidInputError("submatrix-bound needs --ball unless --all-j is given");
        report.add_input(ball_path);
        const PolytopalNorm norm = load_norm(ball_path);
        const std::vector<int> index_set = parse_index_set(j_text, m.dim());
        const OneSubmatrixResult r = one_submatrix_transform(m, norm, index_set, depth);
        std::printf("projection_norm %.10g\nupper %.10g\ndelta_bound %.10g\nsqrt_bound %.10g\n"
                    "satisfied %d\n",
                    r.projection_norm, r.report.rho_sub_upper, r.report.bound, r.sqrt_bound,
                    r.report.satisfied ? 1 : 0);
        report.outputs["projection_norm"] = r.projection_norm;
        report.outputs["upper"] = r.report.rho_sub_upper;
        report.outputs["lower"] = r.report.rho_sub_lower;
        report.outputs["delta_bound"] = r.report.bound;
        report.outputs["sqrt_bound"] = r.sqrt_bound;
        report.outputs["satisfied"] = r.report.satisfied ? 1.0 : 0.0;
        report.certified["delta-bound"] = {r.report.satisfied,
                                           "submatrix jsr upper bound vs delta(|J|) rho"};
        all_ok = r.report.satisfied;
    }
    report.wall_time = timer.seconds();
    if (!report_path.empty()) save_report(report_path, report);
    return (!all_ok && g.strict) ? kExitNumerical : kExitOk;
}

int run_hollowize(const GlobalOpts& g, const std::string& input, double tol, int depth,
                  const std::string& out, const std::string& report_path) {
    Timer timer;
    RunReport report;
    report.command = "hollowize";
    report.seed = g.seed;
    report.add_input(input);
    const MatrixSet m = load_matrix_set(input);
    if (m.size() != 2)
        throw InvalidInputError("hollowize expects a pair (after deduplication, got " +
                                std::to_string(m.size()) + " members)");
    const PairResult r = normalize_pair(m[0], m[1], depth, tol);
    if (!out.empty()) save_matrix_list(out, m.dim(), {r.a, r.b});
    std::printf("rho_upper %.10g\nresidual_a %.3e\nresidual_b %.3e\nconverged %d\n",
                r.report.rho_upper, r.report.hollow.residual_a, r.report.hollow.residual_b,
                r.report.hollow.converged ? 1 : 0);
    report.outputs["rho_upper"] = r.report.rho_upper;
    report.outputs["max_entry_before_hollow"] = r.report.max_entry_before_hollow;
    report.outputs["residual_a"] = r.report.hollow.residual_a;
    report.outputs["residual_b"] = r.report.hollow.residual_b;
    report.outputs["iterations"] = r.report.hollow.iterations;
    report.outputs["trace_a"] = r.report.trace_a;
    report.outputs["trace_b"] = r.report.trace_b;
    report.outputs["trace_bound"] = r.report.trace_bound;
    report.outputs["max_row_col_norm"] = r.report.max_row_col_norm;
    report.outputs["row_col_bound"] = r.report.row_col_bound;
    report.outputs["row_col_within_bound"] = r.report.row_col_within_bound ? 1.0 : 0.0;
    report.certified["hollow"] = {r.report.hollow.converged,
                                  "targeted diagonal residuals of the transformed pair"};
    report.certified["entry-bound"] = {r.report.entry_report.certified,
                                       "max entry re-checked against the certified rho upper bound"};
    report.notes["row_col_note"] =
        "sqrt(d) rho row/column bound recorded observationally, not asserted";
    report.wall_time = timer.seconds();
    if (!report_path.empty()) save_report(report_path, report);
    return (!r.report.hollow.converged && g.strict) ? kExitNumerical : kExitOk;
}

int run_render(const std::string& ball_path, const std::string& out, bool overlay_cube,
               bool overlay_cross) {
    const SymmetricPolytope ball = load_polytope(ball_path);
    std::vector<SvgOverlay> overlays;
    if (overlay_cube) {
        SvgOverlay o;
        o.kind = SvgOverlay::Kind::polytope;
        o.vertex_reps = make_cube(ball.dim()).ball().vertex_reps();
        o.label = "linf";
        overlays.push_back(std::move(o));
    }
    if (overlay_cross) {
        SvgOverlay o;
        o.kind = SvgOverlay::Kind::polytope;
        o.vertex_reps = make_cross_polytope(ball.dim()).ball().vertex_reps();
        o.label = "l1";
        overlays.push_back(std::move(o));
    }
    write_file(out, render_svg(ball, overlays));
    std::printf("wrote %s\n", out.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"joint spectral radius toolkit: two-sided estimates, extremal polytopal "
                 "norms, Auerbach entry normalization, shady-norm lower bounds, John-position "
                 "and projection-constant upper bounds, pair hollowization"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "random seed for seeded subroutines")->capture_default_str();
    app.add_flag("--strict", g.strict, "exit 2 on uncertified results");

    std::string input, ball_path, out, report_path, transform_out, word_text, j_text = "1,2";
    std::string set_path, transform_path;
    int depth = 4;
    int grid_level = 4;
    int refine = 3;
    double tol = 1e-8;
    bool all_patterns = false;
    bool overlay_cube = false, overlay_cross = false;

    auto* estimate = app.add_subcommand("estimate", "two-sided JSR bounds for a matrix set");
    estimate->add_option("--input", input, "matrix set JSON")->required();
    estimate->add_option("--depth", depth, "max product length")->capture_default_str();
    estimate->add_option("--ball", ball_path, "polytopal norm JSON (default: Euclidean)");
    estimate->add_option("--report", report_path, "write a run report");

    auto* normalize = app.add_subcommand("normalize", "entry normalization via Auerbach bases");
    normalize->add_option("--input", input, "matrix set JSON")->required();
    normalize->add_option("--depth", depth, "max product length")->capture_default_str();
    normalize->add_option("--out", out, "write the transformed set");
    normalize->add_option("--transform-out", transform_out, "write the similarity T");
    normalize->add_option("--report", report_path, "write a run report");

    auto* extremal = app.add_subcommand("extremal", "invariant polytope from an SMP word");
    extremal->add_option("--input", input, "matrix set JSON")->required();
    extremal->add_option("--word", word_text, "comma-separated member indices")->required();
    extremal->add_option("--out", out, "write the ball");
    extremal->add_option("--report", report_path, "write a run report");

    auto* auerbach = app.add_subcommand("auerbach", "Auerbach basis and transform of a ball");
    auerbach->add_option("--ball", ball_path, "polytope JSON")->required();
    auerbach->add_option("--out", out, "write the transform T");
    auerbach->add_option("--report", report_path, "write a run report");

    auto* shady = app.add_subcommand("shady", "shady-norm machinery");
    shady->require_subcommand(1);
    auto* shady_ico = shady->add_subcommand("icosahedron", "catalog ball and its estimate");
    shady_ico->add_option("--grid-level", grid_level, "hemisphere grid level")
        ->capture_default_str();
    shady_ico->add_option("--refine", refine, "local refinement rounds")->capture_default_str();
    shady_ico->add_option("--out", out, "write the catalog ball");
    shady_ico->add_option("--report", report_path, "write a run report");
    auto* shady_est = shady->add_subcommand("estimate", "shadiness estimate of a ball");
    shady_est->add_option("--ball", ball_path, "polytope JSON")->required();
    shady_est->add_option("--grid-level", grid_level, "hemisphere grid level")
        ->capture_default_str();
    shady_est->add_option("--refine", refine, "local refinement rounds")->capture_default_str();
    shady_est->add_option("--report", report_path, "write a run report");
    auto* shady_wit = shady->add_subcommand("witness", "submatrix lower-bound witness");
    shady_wit->add_option("--set", set_path, "tailored matrix set JSON")->required();
    shady_wit->add_option("--transform", transform_path, "similarity T JSON")->required();
    shady_wit->add_option("--J", j_text, "1-based index set, e.g. 1,2")->capture_default_str();
    shady_wit->add_option("--ball", ball_path, "polytope JSON (default: icosahedron catalog)");
    shady_wit->add_option("--report", report_path, "write a run report");

    auto* john = app.add_subcommand("john", "John position transform of a ball");
    john->add_option("--ball", ball_path, "polytope JSON")->required();
    john->add_option("--out", out, "write the transform T");
    john->add_option("--report", report_path, "write a run report");

    auto* subm = app.add_subcommand("submatrix-bound", "submatrix JSR upper bounds");
    subm->add_option("--set", set_path, "matrix set JSON")->required();
    subm->add_option("--ball", ball_path, "extremal ball JSON (single-pattern mode)");
    subm->add_option("--J", j_text, "1-based index set")->capture_default_str();
    subm->add_option("--depth", depth, "max product length")->capture_default_str();
    subm->add_flag("--all-j", all_patterns, "check every pattern via the John route");
    subm->add_option("--report", report_path, "write a run report");

    auto* hollow = app.add_subcommand("hollowize", "normalize and hollowize a pair");
    hollow->add_option("--input", input, "pair JSON (matrix set with two members)")->required();
    hollow->add_option("--tol", tol, "diagonal residual tolerance")->capture_default_str();
    hollow->add_option("--depth", depth, "max product length")->capture_default_str();
    hollow->add_option("--out", out, "write the transformed pair");
    hollow->add_option("--report", report_path, "write a run report");

    auto* render = app.add_subcommand("render", "SVG figure of a ball");
    render->add_option("--ball", ball_path, "polytope JSON")->required();
    render->add_option("--out", out, "output SVG path")->required();
    render->add_flag("--overlay-cube", overlay_cube, "overlay the unit cube");
    render->add_flag("--overlay-cross", overlay_cross, "overlay the cross-polytope");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*estimate) return run_estimate(g, input, depth, ball_path, report_path);
        if (*normalize) return run_normalize(g, input, depth, out, transform_out, report_path);
        if (*extremal) return run_extremal(g, input, word_text, out, report_path);
        if (*auerbach) return run_auerbach(g, ball_path, out, report_path);
        if (*shady_ico) return run_shady_icosahedron(g, grid_level, refine, out, report_path);
        if (*shady_est) return run_shady_estimate(g, ball_path, grid_level, refine, report_path);
        if (*shady_wit)
            return run_shady_witness(g, set_path, transform_path, j_text, ball_path, report_path);
        if (*john) return run_john(g, ball_path, out, report_path);
        if (*subm)
            return run_submatrix_bound(g, set_path, ball_path, j_text, depth, all_patterns,
                                       report_path);
        if (*hollow) return run_hollowize(g, input, tol, depth, out, report_path);
        if (*render) return run_render(ball_path, out, overlay_cube, overlay_cross);
    } catch (const InvalidInputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitInvalid;
}
