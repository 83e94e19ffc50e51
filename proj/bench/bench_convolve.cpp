#include <benchmark/benchmark.h>

#include <random>

#include "framelet/construct.hpp"
#include "framelet/dfrt.hpp"
#include "framelet/kernels.hpp"
#include "framelet/masks.hpp"

using namespace framelet;

namespace {

// dense side x side box in d = 2 with small rationals spread over the zeta_L basis
LPoly dense_box(int side, int L, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
    int ph = euler_phi(L);
    std::vector<LPoly::Term> t;
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) {
            std::vector<Rational> c(ph);
            for (auto& q : c) q = Rational(num(rng), den(rng));
            t.emplace_back(Index::from({i, j}), CycNum(L, std::move(c)));
        }
    return LPoly::from_terms(2, std::move(t));
}

template <LPoly (*Conv)(const LPoly&, const LPoly&)>
void BM_convolve(benchmark::State& state) {
    int side = static_cast<int>(state.range(0)), L = static_cast<int>(state.range(1));
    LPoly a = dense_box(side, L, 1), b = dense_box(side, L, 2);
    if (kernels::convolve_serial(a, b) != kernels::convolve_parallel(a, b)) {
        state.SkipWithError("serial and parallel products differ");
        return;
    }
    for (auto _ : state) benchmark::DoNotOptimize(Conv(a, b));
    state.counters["products"] = static_cast<double>(side) * side * side * side;
}

void sizes(benchmark::internal::Benchmark* b) {
    for (int L : {4, 8})
        for (int side : {4, 8, 16, 24}) b->Args({side, L});
    b->Unit(benchmark::kMillisecond);
}

void BM_hat_transform(benchmark::State& state) {
    auto M = validate_dilation({{2}});
    auto a = vectorize_scalar_mask(hat_mask(), M, {{2}});
    static DualFrameletBank bank = construct_dual_multiframelet(a, a, M, {{2}}).bank;
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(-50, 50);
    LMatrix v(1, 2, 1);
    for (int c = 0; c < 2; ++c) {
        std::vector<LPoly::Term> t;
        for (int k = 0; k < 512; ++k) t.emplace_back(Index::from({k}), CycNum(static_cast<long>(num(rng))));
        v(0, c) = LPoly::from_terms(1, std::move(t));
    }
    int J = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto c = analyze(v, bank, J, Variant::compact);
        benchmark::DoNotOptimize(reconstruct(c, bank, Variant::compact));
    }
}

}  // namespace

BENCHMARK_TEMPLATE(BM_convolve, kernels::convolve_serial)->Name("convolve_serial")->Apply(sizes);
BENCHMARK_TEMPLATE(BM_convolve, kernels::convolve_parallel)->Name("convolve_parallel")->Apply(sizes);
BENCHMARK(BM_hat_transform)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
