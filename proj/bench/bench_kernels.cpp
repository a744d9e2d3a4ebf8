// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "robin/asympt.hpp"
#include "robin/bracket.hpp"
#include "robin/geometry.hpp"

using namespace robin;

namespace {

BoundaryArc ellipse_arc() { return BoundaryArc(EllipseArc{{0.0, 0.0}, 2.0, 1.0}); }

DomainBoundary ellipse() { return DomainBoundary({ellipse_arc()}); }

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void curvature_profile_kernel(benchmark::State& state)
{
    const BoundaryArc arc = ellipse_arc();
    for (auto _ : state) benchmark::DoNotOptimize(curvature_profile(arc, 4096, exec_of(state)));
}

void partition_kernel(benchmark::State& state)
{
    const CurvatureProfile p = curvature_profile(ellipse_arc());
    for (auto _ : state) benchmark::DoNotOptimize(partition(p, 256, exec_of(state)));
}

void strip_bounds_kernel(benchmark::State& state)
{
    const CurvatureProfile p = curvature_profile(ellipse_arc());
    const BracketSetup setup = prepare_bracket(ellipse());
    const Partition part = partition(p, 256);
    for (auto _ : state)
        benchmark::DoNotOptimize(strip_bounds(p, setup.constants[0], part, 5000.0, BracketMode::sharp_root, exec_of(state)));
}

void sweep_kernel(benchmark::State& state)
{
    BracketOptions o;
    o.exec = exec_of(state);
    const BracketSetup setup = prepare_bracket(ellipse(), o);
    const auto betas = geometric_betas(500.0, 5e4, 16);
    for (auto _ : state) benchmark::DoNotOptimize(sweep(setup, betas, {Method::bracket}, exec_of(state)));
}

}  // namespace

BENCHMARK(curvature_profile_kernel)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(partition_kernel)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(strip_bounds_kernel)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(sweep_kernel)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
