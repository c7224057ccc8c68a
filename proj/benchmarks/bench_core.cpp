#include <benchmark/benchmark.h>

#include <random>

#include "unifact/chart.hpp"
#include "unifact/components.hpp"
#include "unifact/factorize.hpp"
#include "unifact/tracker.hpp"

using namespace unifact;

namespace {

std::vector<Cplx> random_point(std::mt19937_64& rng, std::size_t dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Cplx> p(dim);
    for (auto& z : p)
        z = Cplx(u(rng), u(rng));
    return p;
}

ComplexMatrix random_sl(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        ComplexMatrix A(n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                A(i, j) = Cplx(u(rng), u(rng));
        Cplx det = A.det();
        if (std::abs(det) < 1e-3)
            continue;
        A.eigen() /= std::pow(det, 1.0 / n);
        return A;
    }
}

} // namespace

static void BM_SymbolicComponents(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int K = static_cast<int>(state.range(1));
    for (auto _ : state) {
        auto sys = symbolic_components(n, K);
        benchmark::DoNotOptimize(sys.components().size());
    }
}
BENCHMARK(BM_SymbolicComponents)->Args({3, 4})->Args({4, 4})->Args({4, 5});

static void BM_JacobianAt(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int K = static_cast<int>(state.range(1));
    auto sys = symbolic_components(n, K);
    std::mt19937_64 rng(1);
    auto point = random_point(rng, sys.variables().size());
    for (auto _ : state) {
        auto J = jacobian_at(sys, point);
        benchmark::DoNotOptimize(J.norm());
    }
}
BENCHMARK(BM_JacobianAt)->Args({3, 4})->Args({4, 5});

static void BM_FactorConstant(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(2);
    auto A = random_sl(rng, n);
    for (auto _ : state) {
        auto fs = factor_constant(A);
        benchmark::DoNotOptimize(fs.size());
    }
}
BENCHMARK(BM_FactorConstant)->Arg(3)->Arg(6);

static void BM_PreimageLastRow(benchmark::State& state) {
    std::mt19937_64 rng(3);
    auto b = random_point(rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto Z = preimage_last_row(b);
        benchmark::DoNotOptimize(Z.size());
    }
}
BENCHMARK(BM_PreimageLastRow)->Arg(3)->Arg(6);

static void BM_TrackHalfCircle(benchmark::State& state) {
    PathProblem p;
    p.n = 2;
    p.K = 3;
    const int N = static_cast<int>(state.range(0));
    for (int i = 0; i <= N; ++i) {
        double t = static_cast<double>(i) / N;
        p.samples.push_back({t, {std::exp(Cplx(0.0, M_PI * t)), Cplx(1.0)}});
    }
    auto Z = preimage_last_row(p.samples.front().b);
    FactorChain chain(2, Orientation::inverse);
    for (auto& pv : Z)
        chain.append(std::move(pv));
    p.seed = chain.flat();
    for (auto _ : state) {
        auto track = track_path(p);
        benchmark::DoNotOptimize(track.back().residual);
    }
}
BENCHMARK(BM_TrackHalfCircle)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_FiberChartReconstruct(benchmark::State& state) {
    std::vector<Cplx> a{Cplx(0.0), Cplx(1.2, 0.1), Cplx(-0.4, 0.3)};
    FiberChart chart = fiber_chart(3, 4, a);
    PointAssignment values;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (const VarId& v : chart.chart_vars())
        values[v] = Cplx(u(rng), u(rng));
    for (const VarId& v : chart.free_vars())
        values[v] = Cplx(u(rng), u(rng));
    for (auto _ : state) {
        auto rec = chart.reconstruct(values);
        benchmark::DoNotOptimize(rec.flat.size());
    }
}
BENCHMARK(BM_FiberChartReconstruct);

BENCHMARK_MAIN();
