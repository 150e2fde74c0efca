#include <benchmark/benchmark.h>

#include <random>

#include <fibred/catio.hpp>
#include <fibred/dialectica.hpp>
#include <fibred/fibcolim.hpp>
#include <fibred/fixtures.hpp>
#include <fibred/monoidal.hpp>
#include <fibred/samples.hpp>

using namespace fibred;

namespace {

void BM_Grothendieck(benchmark::State& state) {
    const IndexedCat L = fam_over_finset(static_cast<int>(state.range(0)), chain_category(2));
    for (auto _ : state) benchmark::DoNotOptimize(grothendieck(L).total->morphism_count());
}
BENCHMARK(BM_Grothendieck)->DenseRange(1, 3);

void BM_VerifyFibration(benchmark::State& state) {
    const GrothCat G = grothendieck(fam_over_finset(static_cast<int>(state.range(0)), chain_category(2)));
    for (auto _ : state) benchmark::DoNotOptimize(verify_fibration(G.projection));
}
BENCHMARK(BM_VerifyFibration)->DenseRange(1, 3);

// formula path against the brute-force oracle on the same diagram
void BM_Colimit(benchmark::State& state) {
    const IndexedCat L = fam_over_finset(2, chain_category(2));
    const GrothCat G = grothendieck(L);
    std::mt19937_64 rng(3);
    DiagramPair D;
    while (!random_diagram(L, shape_parallel_pair(), rng, D)) {
    }
    const bool oracle = state.range(0) == 1;
    for (auto _ : state) {
        if (oracle)
            benchmark::DoNotOptimize(find_colimit(total_diagram(G, D)));
        else
            benchmark::DoNotOptimize(fibred_colimit(G, D));
    }
    state.SetLabel(oracle ? "oracle" : "formula");
}
BENCHMARK(BM_Colimit)->Arg(0)->Arg(1);

void BM_DialPfHom(benchmark::State& state) {
    const DialPf d = build_dial_pf(2);
    for (auto _ : state) benchmark::DoNotOptimize(dialectica_hom(d.fam, d.object(2, 2), d.object(2, 2)));
}
BENCHMARK(BM_DialPfHom);

void BM_DialPfClosure(benchmark::State& state) {
    const DialPf d = build_dial_pf(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_closure(d.fam, d.object(2, 1), d.object(1, 2), d.object(2, 2)));
}
BENCHMARK(BM_DialPfClosure);

void BM_PsetTractable(benchmark::State& state) {
    const TractableInstance t = pset_coproducts_tractable(6);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(validate_tractable(t, {n, 2, 1u << 16}));
}
BENCHMARK(BM_PsetTractable)->DenseRange(1, 3);

void BM_PrintParse(benchmark::State& state) {
    const GrothCat G = grothendieck(fam_over_finset(2, chain_category(2)));
    const std::string text = print_document(category_document(*G.total));
    for (auto _ : state) benchmark::DoNotOptimize(build_category(std::get<CategoryDoc>(parse_document(text).body)));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_PrintParse);

}  // namespace
BENCHMARK_MAIN();
