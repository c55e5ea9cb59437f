#include <fstream>
#include <sstream>
#include <string>

#include <benchmark/benchmark.h>

#include "layerseg/io.hpp"
#include "layerseg/segmenter.hpp"

using namespace layerseg;

namespace {

Layer load(const std::string& name) {
    std::ifstream in(std::string(LAYERSEG_DATA_DIR) + "/layers/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_layer(ss.str());
}

DepositionRegion region_of(const Layer& layer) { return build_deposition_region(classify_loops(layer)); }

}  // namespace

static void BM_Decompose(benchmark::State& state) {
    const DepositionRegion region = region_of(load("benchmark.json"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose(region, {}));
    }
}
BENCHMARK(BM_Decompose)->Unit(benchmark::kMicrosecond);

static void BM_DecodeRandomChromosome(benchmark::State& state) {
    const DepositionRegion region = region_of(load("benchmark.json"));
    const ElementSet elements(decompose(region, {}));
    const DepositionContext ctx = DepositionContext::from(region);
    const GAConfig cfg;
    Rng rng(7);
    GeneticSearch search(elements, ctx, cfg, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(search.evaluate(search.sample_chromosome()));
    }
}
BENCHMARK(BM_DecodeRandomChromosome)->Unit(benchmark::kMicrosecond);

static void BM_SegmentLShape(benchmark::State& state) {
    const Layer layer = load("l_shape.json");
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(segment_layer(layer, {}, {}, {}, seed++));
    }
}
BENCHMARK(BM_SegmentLShape)->Unit(benchmark::kMillisecond);

static void BM_SegmentBenchmarkLayer(benchmark::State& state) {
    const Layer layer = load("benchmark.json");
    StrategyConfig strategy;
    strategy.mode = state.range(0) == 0 ? Strategy::Single : Strategy::RoughFinish;
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(segment_layer(layer, {}, {}, strategy, seed++));
    }
    state.SetLabel(state.range(0) == 0 ? "single" : "rough-finish");
}
BENCHMARK(BM_SegmentBenchmarkLayer)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(3);

BENCHMARK_MAIN();
