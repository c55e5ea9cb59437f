#include "layerseg/segmenter.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

namespace layerseg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Maps ids of the elements fed to a stage back to initial element ids.
using Provenance = std::vector<std::vector<int>>;

SegmentationResult segment_stage(const std::vector<BasicElement>& elements, const Provenance& provenance,
                                 const DepositionContext& ctx, const GAConfig& cfg, Rng& rng, int stage,
                                 int first_iteration) {
    if (elements.empty()) throw PreconditionViolated("segmentation needs at least one basic element");
    const auto start = Clock::now();
    SegmentationResult result;
    result.ga = cfg;

    ElementSet current(elements);
    int iteration = first_iteration;
    while (!current.empty()) {
        const auto t0 = Clock::now();
        IterationRecord record{stage, iteration, {}, 0.0};
        Candidate best;
        if (current.size() == 1) {
            const BasicElement& only = current.elements().front();
            Evaluator evaluator(current, ctx, cfg);
            auto cand = evaluator.decode(enclosing_chromosome(only.region));
            if (!cand) throw DegenerateGeometry("lone element does not decode against its own enclosing rectangle");
            best = std::move(*cand);
        } else {
            GAResult ga = run_ga(current, ctx, cfg, rng);
            best = std::move(ga.best);
            record.trace = std::move(ga.trace);
        }

        SubRegion sub;
        sub.id = static_cast<int>(result.sub_regions.size());
        sub.region = best.merged;
        sub.iteration = iteration;
        sub.chromosome = best.chromosome;
        sub.terms = best.terms;
        for (int id : best.element_ids) {
            const auto& src = provenance.at(static_cast<std::size_t>(id));
            sub.source_element_ids.insert(sub.source_element_ids.end(), src.begin(), src.end());
        }
        std::sort(sub.source_element_ids.begin(), sub.source_element_ids.end());
        result.sub_regions.push_back(std::move(sub));

        current = current.without(best.element_ids);
        record.wall_seconds = seconds_since(t0);
        result.iterations.push_back(std::move(record));
        ++iteration;
    }
    result.total_seconds = seconds_since(start);
    return result;
}

Provenance identity_provenance(const std::vector<BasicElement>& elements) {
    int max_id = -1;
    for (const BasicElement& e : elements) max_id = std::max(max_id, e.id);
    Provenance p(static_cast<std::size_t>(max_id + 1));
    for (const BasicElement& e : elements) p[static_cast<std::size_t>(e.id)] = {e.id};
    return p;
}

}  // namespace

void StrategyConfig::validate() const {
    if (n_s_single < 1 || n_s_rough < 1 || n_s_finish < 1) {
        throw PreconditionViolated("stall generation counts must be at least 1");
    }
}

Chromosome enclosing_chromosome(const Region& region) {
    const OrientedRect r = min_area_enclosing_rectangle(region);
    Chromosome c{r.w, r.h, r.tx, r.ty, r.theta};
    if (c.theta <= 0.0) {
        // Same rectangle expressed with theta = 90: w runs along +y, h along -x.
        c = Chromosome{r.h, r.w, r.tx + r.w, r.ty, 90.0};
    }
    return c;
}

SegmentationResult identify_and_segment(const std::vector<BasicElement>& elements, const DepositionContext& ctx,
                                        const GAConfig& cfg, Rng& rng) {
    return segment_stage(elements, identity_provenance(elements), ctx, cfg, rng, 0, 0);
}

SegmentationResult roughing_finishing(const std::vector<BasicElement>& elements, const DepositionContext& ctx,
                                      const GAConfig& cfg, const StrategyConfig& strategy, Rng& rng) {
    strategy.validate();
    const auto start = Clock::now();

    GAConfig rough_cfg = cfg;
    rough_cfg.n_s = strategy.n_s_rough;
    SegmentationResult rough = segment_stage(elements, identity_provenance(elements), ctx, rough_cfg, rng, 0, 0);

    std::vector<BasicElement> coarse;
    Provenance provenance;
    for (const SubRegion& s : rough.sub_regions) {
        coarse.push_back({static_cast<int>(coarse.size()), s.region, area(s.region)});
        provenance.push_back(s.source_element_ids);
    }

    GAConfig finish_cfg = cfg;
    finish_cfg.n_s = strategy.n_s_finish;
    SegmentationResult finish = segment_stage(coarse, provenance, ctx, finish_cfg, rng, 1,
                                              static_cast<int>(rough.iterations.size()));

    SegmentationResult out;
    out.sub_regions = std::move(finish.sub_regions);
    out.rough_sub_regions = std::move(rough.sub_regions);
    out.iterations = std::move(rough.iterations);
    for (IterationRecord& r : finish.iterations) out.iterations.push_back(std::move(r));
    out.ga = cfg;
    out.total_seconds = seconds_since(start);
    return out;
}

SegmentationResult segment_layer(const Layer& layer, const PreprocessConfig& pre, const GAConfig& cfg,
                                 const StrategyConfig& strategy, std::uint64_t seed) {
    const DepositionRegion region = build_deposition_region(classify_loops(layer));
    const std::vector<BasicElement> elements = decompose(region, pre);
    const DepositionContext ctx = DepositionContext::from(region);

    GAConfig ga = cfg;
    ga.rng_seed = seed;
    ga.alpha_max = pre.alpha_max;
    Rng rng(seed);
    SegmentationResult result;
    if (strategy.mode == Strategy::RoughFinish) {
        result = roughing_finishing(elements, ctx, ga, strategy, rng);
    } else {
        ga.n_s = strategy.n_s_single;
        result = identify_and_segment(elements, ctx, ga, rng);
    }
    result.ga = ga;
    result.strategy = strategy;
    result.preprocess = pre;
    result.seed = seed;
    return result;
}

std::vector<PipelineOutcome> parallel_diversified(const Layer& layer, const PreprocessConfig& pre, const GAConfig& cfg,
                                                  const StrategyConfig& strategy,
                                                  const std::vector<std::uint64_t>& seeds, unsigned max_jobs) {
    if (seeds.empty()) throw PreconditionViolated("at least one seed is required");
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        for (std::size_t j = i + 1; j < seeds.size(); ++j) {
            if (seeds[i] == seeds[j]) throw PreconditionViolated("seeds must be distinct");
        }
    }

    std::vector<PipelineOutcome> outcomes(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            PipelineOutcome& o = outcomes[i];
            o.seed = seeds[i];
            try {
                o.result = segment_layer(layer, pre, cfg, strategy, seeds[i]);
            } catch (const std::exception& e) {
                o.error = e.what();
                o.exception = std::current_exception();
            }
        }
    };
    const std::size_t jobs = max_jobs == 0 ? seeds.size() : std::min<std::size_t>(max_jobs, seeds.size());
    std::vector<std::jthread> threads;
    for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);
    threads.clear();
    return outcomes;
}

bool structurally_distinct(const SegmentationResult& a, const SegmentationResult& b, double rel_tol) {
    if (a.sub_regions.size() != b.sub_regions.size()) return true;
    auto sorted_areas = [](const SegmentationResult& r) {
        std::vector<double> out;
        for (const SubRegion& s : r.sub_regions) out.push_back(area(s.region));
        std::sort(out.begin(), out.end());
        return out;
    };
    const std::vector<double> xa = sorted_areas(a);
    const std::vector<double> xb = sorted_areas(b);
    for (std::size_t i = 0; i < xa.size(); ++i) {
        if (std::abs(xa[i] - xb[i]) > rel_tol * std::max(xa[i], xb[i])) return true;
    }
    return false;
}

}  // namespace layerseg
