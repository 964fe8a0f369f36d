#include "jsr/matset.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "jsr/errors.hpp"
#include "jsr/linalg.hpp"
#include "jsr/rng.hpp"

namespace jsr {

namespace {

constexpr double kDedupTol = 1e-12;
constexpr double kPruneSlack = 1e-12;

bool members_equal(const Matrix& a, const Matrix& b) {
    const double scale = std::max(a.max_abs(), b.max_abs());
    if (scale == 0.0) return true;
    return approx_equal(a, b, kDedupTol * scale);
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("JSR_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// |M|^t with saturation
long long level_size(int members, int t, long long cap) {
    long long s = 1;
    for (int i = 0; i < t; ++i) {
        if (s > cap / members + 1) return cap + 1;
        s *= members;
    }
    return s;
}

}  // namespace

std::string ProductWord::str() const {
    std::string s;
    for (size_t i = 0; i < letters.size(); ++i)
        s += (i ? "," : "") + std::to_string(letters[i]);
    return s;
}

MatrixSet::MatrixSet(int dim, std::vector<Matrix> members) : dim_(dim) {
    if (dim < 1) throw InvalidInputError("matrix set dimension must be positive");
    if (members.empty()) throw InvalidInputError("matrix set must be nonempty");
    for (const Matrix& a : members) {
        if (a.dim() != dim) throw DimensionMismatchError("matrix set members have mixed dimensions");
        if (!a.finite()) throw InvalidInputError("matrix set member has non-finite entries");
        bool dup = false;
        for (const Matrix& b : members_)
            if (members_equal(a, b)) {
                dup = true;
                break;
            }
        if (!dup) members_.push_back(a);
    }
}

MatrixSet::MatrixSet(std::vector<Matrix> members)
    : MatrixSet(members.empty() ? throw InvalidInputError("matrix set must be nonempty")
                                : members.front().dim(),
                std::move(members)) {}

Matrix product_of(const MatrixSet& m, const ProductWord& w) {
    if (w.letters.empty()) return Matrix::identity(m.dim());
    Matrix p = m[w.letters.front()];
    for (size_t i = 1; i < w.letters.size(); ++i) p = p * m[w.letters[i]];
    return p;
}

MatrixSet conjugated(const MatrixSet& m, const Matrix& t, const Matrix& t_inv) {
    std::vector<Matrix> out;
    out.reserve(static_cast<size_t>(m.size()));
    for (const Matrix& a : m.members()) out.push_back(t_inv * a * t);
    return MatrixSet(m.dim(), std::move(out));
}

MatrixSet scaled(const MatrixSet& m, double s) {
    std::vector<Matrix> out;
    for (const Matrix& a : m.members()) out.push_back(s * a);
    return MatrixSet(m.dim(), std::move(out));
}

Matrix principal_submatrix(const Matrix& a, const std::vector<int>& index_set) {
    const int k = static_cast<int>(index_set.size());
    Matrix s(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) s(i, j) = a(index_set[i], index_set[j]);
    return s;
}

MatrixSet principal_submatrices(const MatrixSet& m, const std::vector<int>& index_set) {
    for (int i : index_set)
        if (i < 0 || i >= m.dim()) throw InvalidInputError("principal_submatrices: bad index set");
    std::vector<Matrix> out;
    for (const Matrix& a : m.members()) out.push_back(principal_submatrix(a, index_set));
    return MatrixSet(static_cast<int>(index_set.size()), std::move(out));
}

double spectral_radius(const Matrix& a) {
    if (a.dim() > 8) throw InvalidInputError("spectral_radius: d must be at most 8");
    if (!a.finite()) throw InvalidInputError("spectral_radius: non-finite entries");
    double r = 0.0;
    for (const auto& z : eigenvalues(a)) r = std::max(r, std::abs(z));
    return r;
}

void enumerate_products(const MatrixSet& m, int length,
                        const std::function<void(const ProductWord&, const Matrix&)>& visit,
                        long long budget) {
    if (length < 1) throw InvalidInputError("enumerate_products: length must be >= 1");
    const long long total = level_size(m.size(), length, budget);
    if (total > budget) {
        const long long exact = level_size(m.size(), length, LLONG_MAX / 4);
        const std::string count = exact <= LLONG_MAX / 4
                                      ? std::to_string(exact)
                                      : (std::to_string(m.size()) + "^" + std::to_string(length));
        throw ResourceError("enumerate_products: |M|^t = " + count + " exceeds budget " +
                            std::to_string(budget));
    }
    ProductWord word;
    word.letters.assign(static_cast<size_t>(length), 0);
    std::vector<Matrix> stack(static_cast<size_t>(length) + 1);
    stack[0] = Matrix::identity(m.dim());
    // lexicographic depth-first walk; stack[k] is the product of the first k letters
    int k = 0;
    while (true) {
        if (k == length) {
            visit(word, stack[k]);
            // backtrack to the rightmost letter that can advance
            while (k > 0 && word.letters[k - 1] == m.size() - 1) --k;
            if (k == 0) break;
            ++word.letters[k - 1];
            stack[k] = stack[k - 1] * m[word.letters[k - 1]];
            continue;
        }
        word.letters[k] = 0;
        stack[k + 1] = stack[k] * m[0];
        ++k;
    }
}

double operator_norm(const Matrix& a, const PolytopalNorm& n) {
    if (a.dim() != n.dim()) throw DimensionMismatchError("operator_norm: dimension mismatch");
    double best = 0.0;
    for (const Vec& v : n.ball().vertex_reps()) best = std::max(best, n.norm(a * v));
    return best;
}

namespace {

struct LevelTask {
    double max_norm = 0.0;
    double best_ratio = 0.0;
    ProductWord best_word;
    long long pruned = 0;
};

// Depth-first pass over all words of length t that start with the given
// letter. Pruning discards a prefix only when every completion's norm-based
// bound stays below the lower-bound snapshot minus slack, which cannot
// affect the level maximum or the best spectral radius (their witnesses
// always survive).
class LevelWalker {
public:
    LevelWalker(const MatrixSet& m, int t, double member_norm_max,
                const std::function<double(const Matrix&)>& mat_norm, bool prune,
                double lower_snapshot)
        : m_(m),
          t_(t),
          mat_norm_(mat_norm),
          prune_(prune),
          lower_(lower_snapshot) {
        powers_.resize(static_cast<size_t>(t) + 1, 1.0);
        for (int i = 1; i <= t; ++i) powers_[i] = powers_[i - 1] * member_norm_max;
        stack_.resize(static_cast<size_t>(t) + 1, Matrix(m.dim()));
        word_.letters.assign(static_cast<size_t>(t), 0);
        refresh_threshold();
    }

    LevelTask run(int first_letter) {
        word_.letters[0] = first_letter;
        stack_[1] = m_[first_letter];
        descend(1);
        return out_;
    }

private:
    void refresh_threshold() {
        threshold_ = std::pow(std::max(lower_ - kPruneSlack, 0.0), t_);
    }

    void descend(int k) {
        if (k == t_) {
            const Matrix& p = stack_[k];
            out_.max_norm = std::max(out_.max_norm, mat_norm_(p));
            const double ratio = std::pow(spectral_radius(p), 1.0 / t_);
            if (ratio > out_.best_ratio) {
                out_.best_ratio = ratio;
                out_.best_word = word_;
            }
            if (ratio > lower_) {
                lower_ = ratio;
                refresh_threshold();
            }
            return;
        }
        if (prune_ && mat_norm_(stack_[k]) * powers_[t_ - k] < threshold_) {
            ++out_.pruned;
            return;
        }
        for (int j = 0; j < m_.size(); ++j) {
            word_.letters[k] = j;
            stack_[k + 1] = stack_[k] * m_[j];
            descend(k + 1);
        }
    }

    const MatrixSet& m_;
    int t_;
    const std::function<double(const Matrix&)>& mat_norm_;
    bool prune_;
    double lower_;
    double threshold_ = 0.0;
    std::vector<double> powers_;
    std::vector<Matrix> stack_;
    ProductWord word_;
    LevelTask out_;
};

}  // namespace

JsrBounds jsr_bounds(const MatrixSet& m, const JsrOptions& options) {
    if (options.depth < 1) throw InvalidInputError("jsr_bounds: depth must be >= 1");
    if (options.norm && options.norm->dim() != m.dim())
        throw DimensionMismatchError("jsr_bounds: norm dimension mismatch");

    const PolytopalNorm* poly = options.norm;
    const std::function<double(const Matrix&)> mat_norm =
        poly ? std::function<double(const Matrix&)>(
                   [poly](const Matrix& a) { return operator_norm(a, *poly); })
             : std::function<double(const Matrix&)>(
                   [](const Matrix& a) { return spectral_norm(a); });

    double member_norm_max = 0.0;
    for (const Matrix& a : m.members()) member_norm_max = std::max(member_norm_max, mat_norm(a));

    const int threads = resolve_threads(options.threads);

    JsrBounds out;
    out.upper = std::numeric_limits<double>::infinity();
    for (int t = 1; t <= options.depth; ++t) {
        if (level_size(m.size(), t, options.node_budget) > options.node_budget) {
            out.complete = false;
            break;
        }
        // Every first-letter subtree starts from the same lower-bound
        // snapshot so results do not depend on scheduling.
        const double snapshot = out.lower;
        std::vector<LevelTask> tasks(static_cast<size_t>(m.size()));
        auto run_task = [&](int letter) {
            LevelWalker walker(m, t, member_norm_max, mat_norm, options.prune, snapshot);
            tasks[static_cast<size_t>(letter)] = walker.run(letter);
        };
        if (threads > 1 && m.size() > 1) {
            std::vector<std::thread> pool;
            std::atomic<int> next{0};
            const int workers = std::min(threads, m.size());
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&]() {
                    for (int i = next.fetch_add(1); i < m.size(); i = next.fetch_add(1))
                        run_task(i);
                });
            for (auto& th : pool) th.join();
        } else {
            for (int i = 0; i < m.size(); ++i) run_task(i);
        }
        double level_norm_max = 0.0;
        for (int i = 0; i < m.size(); ++i) {
            const LevelTask& task = tasks[static_cast<size_t>(i)];
            level_norm_max = std::max(level_norm_max, task.max_norm);
            out.pruned += task.pruned;
            if (task.best_ratio > out.lower) {
                out.lower = task.best_ratio;
                out.best_word = task.best_word;
                out.best_ratio = task.best_ratio;
            }
        }
        out.upper = std::min(out.upper, std::pow(level_norm_max, 1.0 / t));
        out.depth = t;
    }
    if (out.depth == 0)
        throw ResourceError("jsr_bounds: budget does not even allow depth 1");
    return out;
}

JsrBounds jsr_bounds(const MatrixSet& m, int depth) {
    JsrOptions opt;
    opt.depth = depth;
    return jsr_bounds(m, opt);
}

DiagonalEstimate diagonal_jsr_estimate(const MatrixSet& m, int depth, long long budget) {
    if (depth < 1) throw InvalidInputError("diagonal_jsr_estimate: depth must be >= 1");
    DiagonalEstimate out;
    for (int t = 1; t <= depth; ++t) {
        if (level_size(m.size(), t, budget) > budget) {
            out.complete = false;
            break;
        }
        enumerate_products(m, t, [&](const ProductWord&, const Matrix& p) {
            double diag = 0.0;
            for (int i = 0; i < p.dim(); ++i) diag = std::max(diag, std::abs(p(i, i)));
            out.value = std::max(out.value, std::pow(diag, 1.0 / t));
        }, budget);
    }
    return out;
}

namespace {

// orthonormal basis of the smallest subspace containing `basis` that is
// invariant under every member; empty result means it closed to full space
std::vector<Vec> close_under_action(const MatrixSet& m, std::vector<Vec> basis, double tol) {
    const int d = m.dim();
    basis = orthonormal_span(basis, d, tol);
    bool grew = true;
    while (grew && static_cast<int>(basis.size()) < d) {
        grew = false;
        for (const Matrix& a : m.members()) {
            for (size_t i = 0; i < basis.size(); ++i) {
                Vec w = a * basis[i];
                for (int pass = 0; pass < 2; ++pass)
                    for (const Vec& u : basis) w = sub(w, scaled(u, dot(u, w)));
                if (norm_2(w) > tol) {
                    basis.push_back(scaled(w, 1.0 / norm_2(w)));
                    grew = true;
                    if (static_cast<int>(basis.size()) == d) return {};
                }
            }
        }
    }
    return static_cast<int>(basis.size()) < d ? basis : std::vector<Vec>{};
}

bool is_invariant(const MatrixSet& m, const std::vector<Vec>& basis, double tol) {
    for (const Matrix& a : m.members())
        for (const Vec& b : basis) {
            Vec w = a * b;
            for (const Vec& u : basis) w = sub(w, scaled(u, dot(u, w)));
            if (norm_2(w) > tol * std::max(1.0, a.max_abs())) return false;
        }
    return true;
}

// invariant-subspace atoms of a single matrix with pairwise distinct
// eigenvalues: real eigenvectors and real planes of complex pairs
struct Atom {
    std::vector<Vec> basis;
    double key;  // |eigenvalue| for deterministic ordering
};

std::optional<std::vector<Atom>> eigen_atoms(const Matrix& a, double tol) try {
    const int d = a.dim();
    const auto eig = eigenvalues(a);
    for (size_t i = 0; i < eig.size(); ++i)
        for (size_t j = i + 1; j < eig.size(); ++j)
            if (std::abs(eig[i] - eig[j]) <= tol * std::max(1.0, a.max_abs()))
                return std::nullopt;  // repeated spectrum: atoms are not exhaustive
    std::vector<Atom> atoms;
    std::vector<bool> done(eig.size(), false);
    for (size_t i = 0; i < eig.size(); ++i) {
        if (done[i]) continue;
        const auto z = eig[i];
        if (std::abs(z.imag()) <= tol * std::max(1.0, a.max_abs())) {
            Matrix shifted = a;
            for (int k = 0; k < d; ++k) shifted(k, k) -= z.real();
            atoms.push_back({{null_vector(shifted, 1e-7)}, std::abs(z)});
            done[i] = true;
        } else {
            // pair up with the conjugate; kernel of a^2 - 2 Re(z) a + |z|^2
            for (size_t j = i + 1; j < eig.size(); ++j)
                if (!done[j] &&
                    std::abs(eig[j] - std::conj(z)) <= 1e-7 * std::max(1.0, a.max_abs()))
                    done[j] = true;
            Matrix b = a * a;
            for (int r = 0; r < d; ++r)
                for (int c2 = 0; c2 < d; ++c2) b(r, c2) -= 2.0 * z.real() * a(r, c2);
            for (int k = 0; k < d; ++k) b(k, k) += std::norm(z);
            const Vec v1 = null_vector(b, 1e-7);
            Vec v2 = a * v1;
            v2 = sub(v2, scaled(v1, dot(v1, v2)));
            if (norm_2(v2) <= 1e-9) return std::nullopt;
            atoms.push_back({{v1, scaled(v2, 1.0 / norm_2(v2))}, std::abs(z)});
            done[i] = true;
        }
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& x, const Atom& y) { return x.key < y.key; });
    return atoms;
} catch (const NumericalFailureError&) {
    return std::nullopt;
}

int algebra_dimension(const MatrixSet& m, double tol) {
    const int d = m.dim();
    auto vectorize = [d](const Matrix& a) {
        Vec v(static_cast<size_t>(d) * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) v[static_cast<size_t>(i) * d + j] = a(i, j);
        const double s = norm_inf(v);
        return s > 0 ? scaled(v, 1.0 / s) : v;
    };
    std::vector<Vec> vectors;
    std::vector<Matrix> frontier = {Matrix::identity(d)};
    int rank = 0;
    for (int len = 1; len <= d * d; ++len) {
        std::vector<Matrix> next;
        for (const Matrix& p : frontier)
            for (const Matrix& a : m.members()) {
                Matrix q = p * a;
                vectors.push_back(vectorize(q));
                next.push_back(std::move(q));
            }
        const int r = rank_of(vectors, d * d, tol);
        // no growth in one step means the span is multiplicatively closed
        if (r == d * d || r == rank) return r;
        rank = r;
        frontier = std::move(next);
        if (frontier.size() > 2048) break;
    }
    return rank;
}

}  // namespace

IrreducibilityReport check_irreducibility(const MatrixSet& m, unsigned seed) {
    const int d = m.dim();
    if (d > 4) throw UnsupportedDimensionError("check_irreducibility: d must be at most 4");
    IrreducibilityReport report;
    if (d == 1) {
        report.status = Reducibility::irreducible;
        return report;
    }
    const double tol = 1e-9;

    // complete path: enumerate the invariant subspaces of the first member
    // when its spectrum is simple; a common invariant subspace must be one
    // of the atom sums
    if (auto atoms = eigen_atoms(m[0], 1e-7)) {
        const int n = static_cast<int>(atoms->size());
        for (int mask = 1; mask < (1 << n); ++mask) {
            std::vector<Vec> basis;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i))
                    for (const Vec& b : (*atoms)[i].basis) basis.push_back(b);
            const int k = static_cast<int>(basis.size());
            if (k < 1 || k >= d) continue;
            basis = orthonormal_span(basis, d, tol);
            if (static_cast<int>(basis.size()) != k) continue;
            if (is_invariant(m, basis, 1e-7)) {
                report.status = Reducibility::reducible;
                report.witness = basis;
                return report;
            }
        }
        report.status = Reducibility::irreducible;
        return report;
    }

    // certified irreducibility via the generated algebra
    if (algebra_dimension(m, tol) == d * d) {
        report.status = Reducibility::irreducible;
        return report;
    }

    // witness search from eigenvectors of members and of short products
    std::vector<Matrix> probes(m.members().begin(), m.members().end());
    for (int i = 0; i < m.size() && probes.size() < 24; ++i)
        for (int j = 0; j < m.size() && probes.size() < 24; ++j) probes.push_back(m[i] * m[j]);
    Rng rng(seed);
    for (int r = 0; r < 12; ++r) {
        Matrix p = Matrix::identity(d);
        const int len = 2 + static_cast<int>(rng.below(4));
        for (int s = 0; s < len; ++s) p = p * m[static_cast<int>(rng.below(m.size()))];
        probes.push_back(std::move(p));
    }
    for (const Matrix& p : probes) {
        std::vector<std::vector<Vec>> seeds;
        for (const auto& z : eigenvalues(p)) {
            if (std::abs(z.imag()) <= 1e-7 * std::max(1.0, p.max_abs())) {
                Matrix shifted = p;
                for (int k = 0; k < d; ++k) shifted(k, k) -= z.real();
                try {
                    seeds.push_back({null_vector(shifted, 1e-7)});
                } catch (const NumericalFailureError&) {
                }
            }
        }
        for (const auto& seed_basis : seeds) {
            const std::vector<Vec> closed = close_under_action(m, seed_basis, 1e-8);
            if (!closed.empty() && is_invariant(m, closed, 1e-7)) {
                report.status = Reducibility::reducible;
                report.witness = closed;
                return report;
            }
        }
    }
    report.status = Reducibility::unknown;
    return report;
}

}  // namespace jsr
