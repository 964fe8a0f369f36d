#include "jsr/auerbach.hpp"

#include <cmath>

#include "jsr/errors.hpp"
#include "jsr/extremal.hpp"
#include "jsr/linalg.hpp"
#include "jsr/rng.hpp"

namespace jsr {

namespace {

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

SimilarityTransform make_transform(Matrix t) {
    SimilarityTransform tr;
    tr.cond = condition_estimate(t);
    if (!std::isfinite(tr.cond) || tr.cond > 1e12)
        throw NumericalFailureError("similarity transform is too ill-conditioned");
    tr.t_inv = inverse(t);
    tr.t = std::move(t);
    return tr;
}

AuerbachBasis auerbach_basis(const PolytopalNorm& n) {
    const int d = n.dim();
    const auto& reps = n.ball().vertex_reps();
    const int k = static_cast<int>(reps.size());
    if (k < d) throw DegeneratePolytopeError("auerbach_basis: too few vertices");
    if (binomial(k, d) > 1'000'000)
        throw ResourceError("auerbach_basis: too many vertex subsets");

    std::vector<int> pick(static_cast<size_t>(d)), best_pick;
    for (int i = 0; i < d; ++i) pick[i] = i;
    double best = -1.0;
    while (true) {
        Matrix x(d);
        for (int c = 0; c < d; ++c) x.set_col(c, reps[pick[c]]);
        const double det = std::abs(determinant(x));
        if (det > best) {
            best = det;
            best_pick = pick;
        }
        int pos = d - 1;
        while (pos >= 0 && pick[pos] == k - d + pos) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int i = pos + 1; i < d; ++i) pick[i] = pick[i - 1] + 1;
    }
    if (best <= 1e-300)
        throw DegeneratePolytopeError("auerbach_basis: all vertex subsets are singular");

    AuerbachBasis b;
    Matrix x(d);
    for (int c = 0; c < d; ++c) {
        b.x.push_back(reps[best_pick[c]]);
        x.set_col(c, b.x.back());
    }
    const Matrix y = inverse(x);
    for (int r = 0; r < d; ++r) b.y.push_back(y.row(r));

    for (int i = 0; i < d; ++i) {
        if (std::abs(n.norm(b.x[i]) - 1.0) > 1e-9 ||
            std::abs(n.dual_norm(b.y[i]) - 1.0) > 1e-9)
            throw NumericalFailureError("auerbach_basis: biorthonormality check failed");
    }
    return b;
}

SimilarityTransform transform_from_basis(const AuerbachBasis& b) {
    const int d = static_cast<int>(b.x.size());
    Matrix t(d);
    for (int c = 0; c < d; ++c) t.set_col(c, b.x[c]);
    return make_transform(std::move(t));
}

bool verify_sandwich(const SimilarityTransform& tr, const PolytopalNorm& n, int samples,
                     unsigned seed) {
    const int d = n.dim();
    std::vector<Vec> probes;
    for (int i = 0; i < d; ++i) {
        Vec e(static_cast<size_t>(d), 0.0);
        e[i] = 1.0;
        probes.push_back(e);
        probes.push_back(negated(e));
    }
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) probes.push_back(rng.vector(d));
    for (const Vec& x : probes) {
        const double mid = n.norm(tr.t * x);
        if (norm_inf(x) > mid + 1e-9) return false;
        if (mid > norm_1(x) + 1e-9) return false;
    }
    return true;
}

namespace {

struct NormalizeCore {
    Matrix t;                      // transform before off-diagonal damping
    std::vector<int> leaf_sizes;   // irreducible leaf block sizes in order
    double rho_upper = 0.0;
    bool certified = true;
    bool root_reducible = false;
    ProductWord word;              // root SMP word on the irreducible path
    std::optional<PolytopalNorm> ball;  // root extremal ball when one exists
};

NormalizeCore normalize_core(const MatrixSet& m, int depth);

NormalizeCore reducible_core(const MatrixSet& m, int depth, const std::vector<Vec>& witness) {
    const int d = m.dim();
    const int k = static_cast<int>(witness.size());
    if (k < 1 || k >= d)
        throw NumericalFailureError("normalize_entries: bad invariant-subspace witness");
    const std::vector<Vec> basis = extend_to_basis(witness, d);
    Matrix t0(d);
    for (int c = 0; c < d; ++c) t0.set_col(c, basis[c]);
    const Matrix t0_inv = t0.transposed();  // orthonormal columns
    const MatrixSet block_form = conjugated(m, t0, t0_inv);

    std::vector<int> head(static_cast<size_t>(k)), tail(static_cast<size_t>(d - k));
    for (int i = 0; i < k; ++i) head[i] = i;
    for (int i = k; i < d; ++i) tail[i - k] = i;
    const NormalizeCore top = normalize_core(principal_submatrices(block_form, head), depth);
    const NormalizeCore bottom = normalize_core(principal_submatrices(block_form, tail), depth);

    Matrix combined(d);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) combined(i, j) = top.t(i, j);
    for (int i = 0; i < d - k; ++i)
        for (int j = 0; j < d - k; ++j) combined(k + i, k + j) = bottom.t(i, j);

    NormalizeCore out;
    out.t = t0 * combined;
    out.leaf_sizes = top.leaf_sizes;
    out.leaf_sizes.insert(out.leaf_sizes.end(), bottom.leaf_sizes.begin(),
                          bottom.leaf_sizes.end());
    out.rho_upper = std::max(top.rho_upper, bottom.rho_upper);
    out.certified = top.certified && bottom.certified;
    out.root_reducible = true;
    return out;
}

NormalizeCore normalize_core(const MatrixSet& m, int depth) {
    const int d = m.dim();
    NormalizeCore out;
    if (d == 1) {
        out.t = Matrix::identity(1);
        out.leaf_sizes = {1};
        for (const Matrix& a : m.members()) out.rho_upper = std::max(out.rho_upper, std::abs(a(0, 0)));
        return out;
    }

    const IrreducibilityReport irr = check_irreducibility(m);
    if (irr.status == Reducibility::reducible) return reducible_core(m, depth, irr.witness);

    const JsrBounds bounds = jsr_bounds(m, depth);
    if (bounds.lower <= 1e-12) {
        // spectrally dead at this depth yet no witness surfaced: an
        // uncertified identity transform is the honest answer
        out.t = Matrix::identity(d);
        out.leaf_sizes = {d};
        out.rho_upper = bounds.upper;
        out.certified = false;
        return out;
    }
    try {
        const InvariantPolytopeResult res =
            build_invariant_polytope(m, SmpCandidate{bounds.best_word, bounds.lower});
        const PolytopalNorm norm(res.ball);
        double op_max = 0.0;
        for (const Matrix& a : m.members()) op_max = std::max(op_max, operator_norm(a, norm));
        const SimilarityTransform tr = transform_from_basis(auerbach_basis(norm));
        out.t = tr.t;
        out.leaf_sizes = {d};
        out.rho_upper = op_max;
        out.certified = res.certified;
        out.word = bounds.best_word;
        out.ball = norm;
        return out;
    } catch (const ReducibilitySuspectedError& e) {
        if (!e.witness().empty()) return reducible_core(m, depth, e.witness());
    } catch (const UnsupportedCandidateError&) {
    }
    out.t = Matrix::identity(d);
    out.leaf_sizes = {d};
    out.rho_upper = bounds.upper;
    out.certified = false;
    return out;
}

double max_entry_of(const MatrixSet& m) {
    double e = 0.0;
    for (const Matrix& a : m.members()) e = std::max(e, a.max_abs());
    return e;
}

}  // namespace

NormalizeResult normalize_entries(const MatrixSet& m, int depth) {
    if (depth < 1) throw InvalidInputError("normalize_entries: depth must be >= 1");
    if (m.dim() > 4)
        throw UnsupportedDimensionError("normalize_entries: d must be at most 4");
    const JsrBounds bounds = jsr_bounds(m, depth);
    if (bounds.lower <= 1e-12)
        throw ZeroJsrError("normalize_entries: jsr lower bound is zero at this depth");

    const NormalizeCore core = normalize_core(m, depth);
    const int d = m.dim();

    NormalizeReport report;
    report.path = core.root_reducible ? "reducible" : "irreducible";
    report.word = core.word;
    report.rho_lower = bounds.lower;
    report.rho_upper = core.rho_upper;

    Matrix t = core.t;
    double epsilon = 1.0;
    if (core.leaf_sizes.size() > 1) {
        std::vector<int> block_of(static_cast<size_t>(d));
        int at = 0, blk = 0;
        for (int sz : core.leaf_sizes) {
            for (int i = 0; i < sz; ++i) block_of[static_cast<size_t>(at++)] = blk;
            ++blk;
        }
        const MatrixSet pre = conjugated(m, t, inverse(t));
        const double target = core.rho_upper * (1.0 + 1e-9);
        double best_entry = std::numeric_limits<double>::infinity();
        double best_eps = 1.0;
        for (int j = 0; j <= 60; ++j) {
            const double eps = std::ldexp(1.0, -j);
            double worst = 0.0;
            for (const Matrix& a : pre.members())
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c)
                        worst = std::max(worst, std::abs(a(r, c)) *
                                                    std::pow(eps, block_of[c] - block_of[r]));
            if (worst <= target) {
                best_eps = eps;
                break;
            }
            if (worst < best_entry) {
                best_entry = worst;
                best_eps = eps;
            }
        }
        epsilon = best_eps;
        Matrix damp(d);
        for (int i = 0; i < d; ++i) damp(i, i) = std::pow(epsilon, block_of[i]);
        t = t * damp;
    }
    report.epsilon = epsilon;

    SimilarityTransform tr = make_transform(std::move(t));
    MatrixSet transformed = conjugated(m, tr.t, tr.t_inv);
    report.max_entry = max_entry_of(transformed);
    report.entry_ratio = core.rho_upper > 0 ? report.max_entry / core.rho_upper : 0.0;
    report.certified = core.certified && report.max_entry <= core.rho_upper * (1.0 + 1e-9);
    return NormalizeResult{std::move(tr), std::move(transformed), std::move(report), core.ball};
}

}  // namespace jsr
