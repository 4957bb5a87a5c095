#include "rball/affine_surface.hpp"
#include "rball/ball_hull.hpp"
#include "rball/floating_body.hpp"
#include "rball/monte_carlo.hpp"
#include "rball/quadrature.hpp"

#include <benchmark/benchmark.h>

using namespace rball;

namespace {

Vec vec(std::initializer_list<double> xs) { return fromStd(std::vector<double>(xs)); }

void BM_SphereGrid(benchmark::State& state)
{
    int d = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(sphereGrid(d, 64).size());
}
BENCHMARK(BM_SphereGrid)->Arg(1)->Arg(2)->Arg(3);

void BM_McVolume(benchmark::State& state)
{
    Box cube{vec({-1, -1, -1}), vec({1, 1, 1})};
    auto ball = [](const Vec& p) { return p.squaredNorm() <= 1; };
    for (auto _ : state)
        benchmark::DoNotOptimize(mcVolume(ball, cube, MCConfig{std::uint64_t(state.range(0)), 42, 1}).value);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McVolume)->Arg(1 << 16)->Arg(1 << 20);

// Membership in the hull of the unit disk, with the R-tree pruning the candidate balls.
void BM_BallPolyhedronContains(benchmark::State& state)
{
    int n = static_cast<int>(state.range(0));
    Ellipsoid disk = makeEllipsoid(vec({1, 1}));
    BallPolyhedron bp = rBallHull(disk, 2.0, sphereGrid(1, n));
    CounterRng rng(3);
    std::uint64_t i = 0;
    for (auto _ : state) {
        Vec x = vec({2 * rng.uniform(i, 0) - 1, 2 * rng.uniform(i, 1) - 1});
        ++i;
        benchmark::DoNotOptimize(bp.contains(x));
    }
}
BENCHMARK(BM_BallPolyhedronContains)->Arg(256)->Arg(4096);

void BM_CutQuadrature(benchmark::State& state)
{
    int n = static_cast<int>(state.range(0));
    Ellipsoid K = makeEllipsoid(n == 2 ? vec({2, 1}) : vec({1, 1.5, 2}));
    Vec u = Vec::Zero(n);
    u[0] = 1.0;
    // Cap of depth 0.01 at the support point in direction u.
    Ball b = makeBall(K.boundaryPoint(u) - 2.01 * u, 2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(cutVolumeQuadrature(K, b, u, defaultCapResolution(n), 32));
}
BENCHMARK(BM_CutQuadrature)->Arg(2)->Arg(3);

void BM_FloatingBody2D(benchmark::State& state)
{
    Ellipsoid disk = makeEllipsoid(vec({1, 1}));
    FloatParams p;
    p.R = 2.0;
    p.delta = 1e-4;
    p.dirResolution = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(floatingBody(disk, p).cuts.size());
}
BENCHMARK(BM_FloatingBody2D)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_RelativeAffineSurfaceArea(benchmark::State& state)
{
    Ellipsoid e = makeEllipsoid(vec({1, 1.5, 2}));
    SphereGrid g = sphereGrid(2, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(relativeAffineSurfaceArea(e, 5.0, g));
}
BENCHMARK(BM_RelativeAffineSurfaceArea)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
