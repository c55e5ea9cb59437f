#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "layerseg/geometry.hpp"
#include "layerseg/layer.hpp"
#include "layerseg/preprocess.hpp"
#include "layerseg/rng.hpp"

namespace layerseg {

// Moving rectangle: corner reference point (tx, ty), sides w along theta and
// h along theta + 90 degrees.
struct Chromosome {
    double w = 1.0;
    double h = 1.0;
    double tx = 0.0;
    double ty = 0.0;
    double theta = 90.0;  // degrees, (0, 180)

    static constexpr std::size_t kGenes = 5;

    double gene(std::size_t i) const;
    void set_gene(std::size_t i, double value);
    double area() const { return w * h; }

    friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

struct GAConfig {
    int n_ps = 40;             // population size
    double n_new = 90.0;       // percent of the generation used as parents
    double rho = 0.5;          // mutation when X > rho, crossover otherwise
    int n_s = 60;              // stall generations before stopping
    double alpha_max = 30.0;   // sharp-turn threshold for N_st, degrees
    double c0 = 0.001;
    double c1 = 1.0;
    double c3 = 1.0;
    double c2_threshold = 0.5;  // c2 = 1 when S2 exceeds this fraction of the rectangle
    int max_generations = 5000;
    std::uint64_t rng_seed = 0;

    // Attempts allowed for one operator or one initial chromosome.
    static constexpr int kMaxRedraws = 10000;

    void validate() const;
    int parent_count() const;
};

struct FitnessTerms {
    double s0 = 0.0;  // rectangle inside the deposition area
    double s1 = 0.0;  // area of the merged solution
    double s2 = 0.0;  // rectangle outside the material loops
    double s3 = 0.0;  // rectangle inside hole loops
    int n_st = 0;     // sharp turns on the merged boundary
    double fitness = 0.0;
};

struct Candidate {
    Chromosome chromosome;
    std::vector<int> element_ids;  // sorted
    Region merged;
    FitnessTerms terms;
};

struct SearchTrace {
    std::vector<double> best_fitness;  // generation 0 first
    int generations = 0;               // reproduction rounds executed
    double wall_seconds = 0.0;
};

struct OverlapAreas {
    double s0 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
};

// Fixed geometry of the layer against which rectangles are scored.
struct DepositionContext {
    std::vector<Region> deposition;
    std::vector<Region> material;
    std::vector<Region> holes;

    static DepositionContext from(const DepositionRegion& region);
};

Region rect_region(const Chromosome& c);

OverlapAreas overlap_areas(const Chromosome& c, const DepositionContext& ctx);

double fitness(double s0, double s1, double s2, double s3, int n_st, double rect_area, const GAConfig& cfg);

// The current basic-element set with its edge-adjacency graph.
class ElementSet {
public:
    explicit ElementSet(std::vector<BasicElement> elements);

    const std::vector<BasicElement>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    const BoundingBox& bounds() const { return bounds_; }
    bool adjacent(std::size_t i, std::size_t j) const { return adjacency_[i * size() + j] != 0; }
    std::size_t index_of(int id) const;

    // Copy without the given ids; adjacency is carried over, not recomputed.
    ElementSet without(const std::vector<int>& ids) const;

private:
    ElementSet() = default;

    std::vector<BasicElement> elements_;
    std::vector<char> adjacency_;
    std::vector<BoundingBox> boxes_;
    BoundingBox bounds_;

    friend class Evaluator;
};

// Decodes chromosomes against an element set. Merges of identical element
// subsets are cached, which leaves results unchanged.
class Evaluator {
public:
    Evaluator(const ElementSet& elements, const DepositionContext& ctx, const GAConfig& cfg)
        : elements_(elements), ctx_(ctx), cfg_(cfg) {}

    // nullopt when the rectangle overlaps no element.
    std::optional<Candidate> decode(const Chromosome& c) const;

    std::size_t evaluations() const { return evaluations_; }

private:
    struct Merge {
        Region merged;
        double s1 = 0.0;
        int n_st = 0;
    };

    const Merge& merge(const std::vector<int>& ids) const;

    const ElementSet& elements_;
    const DepositionContext& ctx_;
    const GAConfig& cfg_;
    mutable std::map<std::vector<int>, Merge> merges_;
    mutable std::size_t evaluations_ = 0;
};

// A chromosome together with its decoded fitness.
struct Individual {
    Chromosome chromosome;
    double fitness = 0.0;
};

class GeneticSearch {
public:
    GeneticSearch(const ElementSet& elements, const DepositionContext& ctx, const GAConfig& cfg, Rng& rng);

    std::vector<Individual> init_population();
    Individual mutate(const Individual& parent);
    Individual crossover(const Individual& first, const Individual& second);
    std::vector<Individual> reproduce(const std::vector<Individual>& generation);

    // Runs until the best fitness is unchanged for n_s generations or the
    // generation cap is hit. Returns the best candidate seen.
    std::pair<Candidate, SearchTrace> run();

    double sample_gene(std::size_t i);
    Chromosome sample_chromosome();
    std::optional<double> evaluate(const Chromosome& c);

    const Evaluator& evaluator() const { return evaluator_; }

private:
    const ElementSet& elements_;
    const GAConfig& cfg_;
    Rng& rng_;
    Evaluator evaluator_;
};

struct GAResult {
    Candidate best;
    SearchTrace trace;
};

GAResult run_ga(const ElementSet& elements, const DepositionContext& ctx, const GAConfig& cfg, Rng& rng);

}  // namespace layerseg
