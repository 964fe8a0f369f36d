#include <benchmark/benchmark.h>

#include "jsr/extremal.hpp"
#include "jsr/matset.hpp"
#include "jsr/pairs.hpp"
#include "jsr/polytope.hpp"
#include "jsr/positions.hpp"
#include "jsr/shady.hpp"

namespace {

using namespace jsr;

void BM_JsrBoundsPair(benchmark::State& state) {
    const MatrixSet pair = example_pair();
    const int depth = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(jsr_bounds(pair, depth));
    }
}
BENCHMARK(BM_JsrBoundsPair)->Arg(5)->Arg(8)->Arg(10);

void BM_IcosahedronHull(benchmark::State& state) {
    const PolytopalNorm n = icosahedron_norm();
    const std::vector<Vec> pts = n.ball().vertex_reps();
    for (auto _ : state) {
        benchmark::DoNotOptimize(hull_from_points(pts, 3));
    }
}
BENCHMARK(BM_IcosahedronHull);

void BM_OperatorNormIcosahedron(benchmark::State& state) {
    const PolytopalNorm n = icosahedron_norm();
    const Matrix a{{0, 0, -1}, {-1, 0, 0}, {0, -1, 0}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(operator_norm(a, n));
    }
}
BENCHMARK(BM_OperatorNormIcosahedron);

void BM_JohnEllipsoidIcosahedron(benchmark::State& state) {
    const PolytopalNorm n = icosahedron_norm();
    for (auto _ : state) {
        benchmark::DoNotOptimize(john_ellipsoid(n));
    }
}
BENCHMARK(BM_JohnEllipsoidIcosahedron);

void BM_ShadinessGrid(benchmark::State& state) {
    const PolytopalNorm n = icosahedron_norm();
    const int level = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(shadiness_estimate(n, 2, level, 0));
    }
}
BENCHMARK(BM_ShadinessGrid)->Arg(1)->Arg(2)->Arg(3);

void BM_HollowizePair3x3(benchmark::State& state) {
    const Matrix a{{1.2, -0.3, 0.4}, {0.7, -0.9, 0.1}, {0.2, 0.5, 0.3}};
    const Matrix b{{-0.4, 0.8, 0.2}, {0.3, 0.6, -0.7}, {0.9, 0.1, -0.2}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(hollowize_pair(a, b));
    }
}
BENCHMARK(BM_HollowizePair3x3);

}  // namespace

BENCHMARK_MAIN();
