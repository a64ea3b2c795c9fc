#include <benchmark/benchmark.h>

#include "pbpois/deformation.hpp"
#include "pbpois/rng.hpp"

using namespace pbpois;

namespace {

MultiVector random_field(SplitMix64& rng, int nvars, int grade, int degree, int terms) {
    MultiVector a(nvars, grade);
    for (int t = 0; t < terms; ++t) {
        DirectionSet s = 0;
        while (direction_count(s) < grade) s |= DirectionSet{1} << rng.uniform(0, nvars - 1);
        std::vector<int> e(static_cast<std::size_t>(nvars), 0);
        for (int k = 0; k < degree; ++k) ++e[static_cast<std::size_t>(rng.uniform(0, nvars - 1))];
        a.add_term(s, Monomial(nvars, e), Scalar(static_cast<long>(rng.uniform(-9, 9))));
    }
    return a;
}

void BM_Schouten(benchmark::State& state) {
    SplitMix64 rng(1);
    const int terms = static_cast<int>(state.range(0));
    MultiVector a = random_field(rng, 5, 2, 2, terms), b = random_field(rng, 5, 2, 2, terms);
    for (auto _ : state) benchmark::DoNotOptimize(schouten(a, b));
}
BENCHMARK(BM_Schouten)->Arg(4)->Arg(16)->Arg(64);

void BM_KernelBasis(benchmark::State& state) {
    SplitMix64 rng(2);
    const int n = static_cast<int>(state.range(0));
    ExactMatrix m(n, n + 5);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n + 5; ++c) {
            if (rng.uniform(0, 2) == 0) m.set(r, c, Scalar(static_cast<long>(rng.uniform(-9, 9))));
        }
    }
    for (auto _ : state) benchmark::DoNotOptimize(kernel_basis(m));
}
BENCHMARK(BM_KernelBasis)->Arg(20)->Arg(60)->Arg(120);

void BM_SectionSpace(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(SectionSpace::create(n, 2, 0));
}
BENCHMARK(BM_SectionSpace)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_TangentPoisN4(benchmark::State& state) {
    GlobalSection pi = pullback_bivector(random_quadratic_field(3, 7, EigenData::parse("2,5,23")));
    for (auto _ : state) benchmark::DoNotOptimize(tangent_pois(pi));
}
BENCHMARK(BM_TangentPoisN4)->Unit(benchmark::kMillisecond);

void BM_TangentFolN4(benchmark::State& state) {
    GlobalSection pi = pullback_bivector(random_quadratic_field(3, 7, EigenData::parse("2,5,23")));
    for (auto _ : state) benchmark::DoNotOptimize(tangent_fol(pi));
}
BENCHMARK(BM_TangentFolN4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
