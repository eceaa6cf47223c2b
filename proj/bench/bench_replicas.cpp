#include "hlab/forms.hpp"
#include "hlab/replicas.hpp"
#include "hlab/stochastics.hpp"

#include <benchmark/benchmark.h>

using namespace hlab;

namespace {

void simulate_endpoints(benchmark::State& state, Execution exec)
{
    const Model model = make_real_heisenberg(static_cast<int>(state.range(0)));
    const TimeGrid grid(1.0, 100);
    for (auto _ : state) {
        auto table = run_replicas(
            4096, 1,
            [&](std::size_t r, std::span<double> out) {
                NormalStream rng(1, r);
                out[0] = simulate_g(model, grid, rng).M.bottomRows(1).squaredNorm();
            },
            exec);
        benchmark::DoNotOptimize(table.data().data());
    }
    state.SetItemsProcessed(state.iterations() * 4096);
    state.counters["workers"] = exec == Execution::parallel ? workers() : 1;
}

void BM_Serial(benchmark::State& state) { simulate_endpoints(state, Execution::serial); }
void BM_Parallel(benchmark::State& state) { simulate_endpoints(state, Execution::parallel); }

} // namespace

BENCHMARK(BM_Serial)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
