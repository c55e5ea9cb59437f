#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "layerseg/ga.hpp"
#include "layerseg/layer.hpp"
#include "layerseg/preprocess.hpp"

namespace layerseg {

enum class Strategy { Single, RoughFinish };

struct StrategyConfig {
    Strategy mode = Strategy::Single;
    int n_s_single = 60;
    int n_s_rough = 20;
    int n_s_finish = 30;

    void validate() const;
};

struct SubRegion {
    int id = 0;
    Region region;
    std::vector<int> source_element_ids;  // ids of the initial basic elements
    int iteration = 0;
    Chromosome chromosome;
    FitnessTerms terms;
};

// One identify-and-segment iteration.
struct IterationRecord {
    int stage = 0;      // 0 single or rough, 1 finish
    int iteration = 0;  // numbered from 0 across all stages
    SearchTrace trace;  // empty when the GA was skipped
    double wall_seconds = 0.0;
};

struct SegmentationResult {
    std::vector<SubRegion> sub_regions;
    std::vector<SubRegion> rough_sub_regions;  // rough-finish mode only
    std::vector<IterationRecord> iterations;
    double total_seconds = 0.0;
    GAConfig ga;
    StrategyConfig strategy;
    PreprocessConfig preprocess;
    std::uint64_t seed = 0;
};

// Repeatedly extracts the best GA candidate and removes its elements until
// none remain. A lone remaining element is emitted without running the GA.
SegmentationResult identify_and_segment(const std::vector<BasicElement>& elements, const DepositionContext& ctx,
                                        const GAConfig& cfg, Rng& rng);

// Rough pass with n_s_rough, then a finish pass that treats the rough
// sub-regions as basic elements.
SegmentationResult roughing_finishing(const std::vector<BasicElement>& elements, const DepositionContext& ctx,
                                      const GAConfig& cfg, const StrategyConfig& strategy, Rng& rng);

// Full pipeline for one seed: classify, build region, decompose, segment.
SegmentationResult segment_layer(const Layer& layer, const PreprocessConfig& pre, const GAConfig& cfg,
                                 const StrategyConfig& strategy, std::uint64_t seed);

struct PipelineOutcome {
    std::uint64_t seed = 0;
    std::optional<SegmentationResult> result;
    std::string error;  // set when result is empty
    std::exception_ptr exception;
};

// Independent pipelines, one per seed, run concurrently on up to max_jobs
// threads (0 = one per seed). Results follow the order of seeds.
std::vector<PipelineOutcome> parallel_diversified(const Layer& layer, const PreprocessConfig& pre, const GAConfig& cfg,
                                                  const StrategyConfig& strategy,
                                                  const std::vector<std::uint64_t>& seeds, unsigned max_jobs = 0);

// Distinct when sub-region counts differ or sorted areas differ by more than
// rel_tol relative.
bool structurally_distinct(const SegmentationResult& a, const SegmentationResult& b, double rel_tol = 0.01);

// The axis-aligned or rotated rectangle used to report a lone element.
Chromosome enclosing_chromosome(const Region& region);

}  // namespace layerseg
