#include "layerseg/ga.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

namespace layerseg {

double Chromosome::gene(std::size_t i) const {
    switch (i) {
        case 0: return w;
        case 1: return h;
        case 2: return tx;
        case 3: return ty;
        case 4: return theta;
    }
    throw PreconditionViolated("gene index out of range");
}

void Chromosome::set_gene(std::size_t i, double value) {
    switch (i) {
        case 0: w = value; return;
        case 1: h = value; return;
        case 2: tx = value; return;
        case 3: ty = value; return;
        case 4: theta = value; return;
    }
    throw PreconditionViolated("gene index out of range");
}

void GAConfig::validate() const {
    if (n_ps < 1) throw PreconditionViolated("population size must be at least 1");
    if (!(n_new > 0.0 && n_new <= 100.0)) throw PreconditionViolated("parent percentage must lie in (0, 100]");
    if (!(rho >= 0.0 && rho <= 1.0)) throw PreconditionViolated("rho must lie in [0, 1]");
    if (n_s < 1) throw PreconditionViolated("stall generations must be at least 1");
    if (!(alpha_max > 0.0 && alpha_max < 180.0)) throw PreconditionViolated("alpha_max must lie in (0, 180)");
    if (max_generations < 1) throw PreconditionViolated("generation cap must be at least 1");
}

int GAConfig::parent_count() const {
    return std::clamp(static_cast<int>(std::lround(n_ps * n_new / 100.0)), 1, n_ps);
}

DepositionContext DepositionContext::from(const DepositionRegion& region) {
    return {region.components, material_outers(region), hole_areas(region)};
}

Region rect_region(const Chromosome& c) { return Region{rect_ring({c.w, c.h, c.tx, c.ty, c.theta}), {}}; }

OverlapAreas overlap_areas(const Chromosome& c, const DepositionContext& ctx) {
    const Ring rect = rect_ring({c.w, c.h, c.tx, c.ty, c.theta});
    const BoundingBox box = bounding_box(rect);
    auto clipped = [&](const std::vector<Region>& regions) {
        double total = 0.0;
        for (const Region& r : regions) {
            if (box.overlaps(bounding_box(r))) total += convex_clip_area(rect, r);
        }
        return total;
    };
    OverlapAreas out;
    out.s0 = clipped(ctx.deposition);
    out.s2 = std::max(0.0, c.area() - clipped(ctx.material));
    out.s3 = clipped(ctx.holes);
    return out;
}

double fitness(double s0, double s1, double s2, double s3, int n_st, double rect_area, const GAConfig& cfg) {
    const double c2 = s2 > cfg.c2_threshold * rect_area ? 1.0 : 0.0;
    const double penalty = std::exp(std::abs(4.0 - static_cast<double>(n_st)));
    return -(cfg.c0 * s0 + cfg.c1 * s1) / (penalty + c2 * s2 + cfg.c3 * s3);
}

// --- ElementSet ------------------------------------------------------------

ElementSet::ElementSet(std::vector<BasicElement> elements) : elements_(std::move(elements)) {
    const std::size_t n = elements_.size();
    adjacency_.assign(n * n, 0);
    for (const BasicElement& e : elements_) boxes_.push_back(bounding_box(e.region));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!boxes_[i].overlaps(boxes_[j], kEpsGeom)) continue;
            if (shared_boundary_length(elements_[i].region, elements_[j].region) > kEpsGeom) {
                adjacency_[i * n + j] = adjacency_[j * n + i] = 1;
            }
        }
    }
    std::vector<Point2> corners;
    for (const BoundingBox& b : boxes_) {
        corners.push_back({b.min_x, b.min_y});
        corners.push_back({b.max_x, b.max_y});
    }
    if (!corners.empty()) bounds_ = bounding_box(corners);
}

std::size_t ElementSet::index_of(int id) const {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i].id == id) return i;
    }
    throw PreconditionViolated("unknown element id " + std::to_string(id));
}

ElementSet ElementSet::without(const std::vector<int>& ids) const {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (std::find(ids.begin(), ids.end(), elements_[i].id) == ids.end()) keep.push_back(i);
    }
    ElementSet out;
    const std::size_t n = elements_.size();
    const std::size_t m = keep.size();
    out.adjacency_.assign(m * m, 0);
    std::vector<Point2> corners;
    for (std::size_t a = 0; a < m; ++a) {
        out.elements_.push_back(elements_[keep[a]]);
        out.boxes_.push_back(boxes_[keep[a]]);
        corners.push_back({boxes_[keep[a]].min_x, boxes_[keep[a]].min_y});
        corners.push_back({boxes_[keep[a]].max_x, boxes_[keep[a]].max_y});
        for (std::size_t b = 0; b < m; ++b) out.adjacency_[a * m + b] = adjacency_[keep[a] * n + keep[b]];
    }
    if (!corners.empty()) out.bounds_ = bounding_box(corners);
    return out;
}

// --- Evaluator -------------------------------------------------------------

const Evaluator::Merge& Evaluator::merge(const std::vector<int>& ids) const {
    auto it = merges_.find(ids);
    if (it != merges_.end()) return it->second;

    std::vector<Region> parts;
    parts.reserve(ids.size());
    for (int id : ids) parts.push_back(elements_.elements()[elements_.index_of(id)].region);
    std::vector<Region> unioned = region_union(parts);
    if (unioned.empty()) throw DegenerateGeometry("union of selected elements is empty");
    auto largest = std::max_element(unioned.begin(), unioned.end(),
                                    [](const Region& a, const Region& b) { return area(a) < area(b); });
    Merge m;
    m.merged = normalized(std::move(*largest));
    m.s1 = area(m.merged);
    m.n_st = count_sharp_turns(m.merged, cfg_.alpha_max);
    return merges_.emplace(ids, std::move(m)).first->second;
}

std::optional<Candidate> Evaluator::decode(const Chromosome& c) const {
    ++evaluations_;
    const Ring rect = rect_ring({c.w, c.h, c.tx, c.ty, c.theta});
    const BoundingBox box = bounding_box(rect);
    const std::size_t n = elements_.size();

    std::vector<double> overlap(n, 0.0);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!box.overlaps(elements_.boxes_[i])) continue;
        overlap[i] = convex_clip_area(rect, elements_.elements()[i].region);
        any = any || overlap[i] > kEpsArea;
    }
    if (!any) return std::nullopt;

    // Keep the edge-connected group with the largest overlap.
    std::vector<int> group(n, -1);
    std::vector<std::size_t> best_members;
    double best_score = -1.0;
    for (std::size_t s = 0; s < n; ++s) {
        if (overlap[s] <= kEpsArea || group[s] >= 0) continue;
        std::vector<std::size_t> members{s};
        group[s] = static_cast<int>(s);
        double score = 0.0;
        for (std::size_t k = 0; k < members.size(); ++k) {
            const std::size_t i = members[k];
            score += overlap[i];
            for (std::size_t j = 0; j < n; ++j) {
                if (group[j] < 0 && overlap[j] > kEpsArea && elements_.adjacent(i, j)) {
                    group[j] = static_cast<int>(s);
                    members.push_back(j);
                }
            }
        }
        if (score > best_score) {
            best_score = score;
            best_members = std::move(members);
        }
    }

    Candidate cand;
    cand.chromosome = c;
    for (std::size_t i : best_members) cand.element_ids.push_back(elements_.elements()[i].id);
    std::sort(cand.element_ids.begin(), cand.element_ids.end());

    const Merge& m = merge(cand.element_ids);
    cand.merged = m.merged;
    const OverlapAreas ov = overlap_areas(c, ctx_);
    cand.terms = {ov.s0, m.s1, ov.s2, ov.s3, m.n_st, 0.0};
    cand.terms.fitness = fitness(ov.s0, m.s1, ov.s2, ov.s3, m.n_st, c.area(), cfg_);
    return cand;
}

// --- GeneticSearch ---------------------------------------------------------

GeneticSearch::GeneticSearch(const ElementSet& elements, const DepositionContext& ctx, const GAConfig& cfg, Rng& rng)
    : elements_(elements), cfg_(cfg), rng_(rng), evaluator_(elements, ctx, cfg) {
    cfg.validate();
    if (elements.empty()) throw PreconditionViolated("genetic search needs at least one basic element");
}

double GeneticSearch::sample_gene(std::size_t i) {
    const BoundingBox& b = elements_.bounds();
    switch (i) {
        case 0: return rng_.uniform(kEpsGeom, b.width());
        case 1: return rng_.uniform(kEpsGeom, b.height());
        case 2: return rng_.uniform(b.min_x, b.max_x);
        case 3: return rng_.uniform(b.min_y, b.max_y);
        case 4: return rng_.uniform(0.0, 180.0);
    }
    throw PreconditionViolated("gene index out of range");
}

Chromosome GeneticSearch::sample_chromosome() {
    // Reference point first, then the shape genes.
    Chromosome c;
    c.tx = sample_gene(2);
    c.ty = sample_gene(3);
    c.w = sample_gene(0);
    c.h = sample_gene(1);
    c.theta = sample_gene(4);
    return c;
}

std::optional<double> GeneticSearch::evaluate(const Chromosome& c) {
    if (auto cand = evaluator_.decode(c)) return cand->terms.fitness;
    return std::nullopt;
}

std::vector<Individual> GeneticSearch::init_population() {
    std::vector<Individual> pop;
    pop.reserve(static_cast<std::size_t>(cfg_.n_ps));
    const long budget = static_cast<long>(GAConfig::kMaxRedraws) * cfg_.n_ps;
    long failures = 0;
    while (static_cast<int>(pop.size()) < cfg_.n_ps) {
        const Chromosome c = sample_chromosome();
        if (auto f = evaluate(c)) {
            pop.push_back({c, *f});
            failures = 0;
        } else if (++failures >= budget) {
            throw ResourceExhausted("could not place a valid initial chromosome after " + std::to_string(budget) +
                                    " attempts");
        }
    }
    return pop;
}

namespace {

// k distinct gene positions, k uniform in 1..5.
std::vector<std::size_t> pick_positions(Rng& rng) {
    std::array<std::size_t, Chromosome::kGenes> pos{0, 1, 2, 3, 4};
    const std::size_t k = 1 + static_cast<std::size_t>(rng.below(Chromosome::kGenes));
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(Chromosome::kGenes - i));
        std::swap(pos[i], pos[j]);
    }
    return {pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(k)};
}

}  // namespace

Individual GeneticSearch::mutate(const Individual& parent) {
    const std::vector<std::size_t> positions = pick_positions(rng_);
    for (int attempt = 0; attempt < GAConfig::kMaxRedraws; ++attempt) {
        Chromosome child = parent.chromosome;
        for (std::size_t p : positions) child.set_gene(p, sample_gene(p));
        if (auto f = evaluate(child)) {
            return *f < parent.fitness ? Individual{child, *f} : parent;
        }
    }
    return parent;
}

Individual GeneticSearch::crossover(const Individual& first, const Individual& second) {
    for (int attempt = 0; attempt < GAConfig::kMaxRedraws; ++attempt) {
        Chromosome child = first.chromosome;
        for (std::size_t p : pick_positions(rng_)) child.set_gene(p, second.chromosome.gene(p));
        if (child == first.chromosome) return first;
        if (auto f = evaluate(child)) {
            return *f < first.fitness ? Individual{child, *f} : first;
        }
    }
    return first;
}

std::vector<Individual> GeneticSearch::reproduce(const std::vector<Individual>& generation) {
    const std::size_t n = generation.size();
    const std::size_t m = std::min(n, static_cast<std::size_t>(cfg_.parent_count()));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng_.below(n - i));
        std::swap(order[i], order[j]);
    }
    const std::vector<std::size_t> pool(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));

    std::vector<Individual> next = generation;  // non-parents pass through
    for (std::size_t k = 0; k < m; ++k) {
        const Individual& parent = generation[pool[k]];
        if (rng_.uniform01() > cfg_.rho) {
            next[pool[k]] = mutate(parent);
        } else {
            std::size_t other = k;
            if (m > 1) {
                other = static_cast<std::size_t>(rng_.below(m - 1));
                if (other >= k) ++other;
            }
            next[pool[k]] = crossover(parent, generation[pool[other]]);
        }
    }
    return next;
}

std::pair<Candidate, SearchTrace> GeneticSearch::run() {
    const auto start = std::chrono::steady_clock::now();
    SearchTrace trace;

    std::vector<Individual> pop = init_population();
    auto best_of = [](const std::vector<Individual>& p) {
        return *std::min_element(p.begin(), p.end(),
                                 [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
    };
    Individual best = best_of(pop);
    trace.best_fitness.push_back(best.fitness);

    int stall = 0;
    while (stall < cfg_.n_s && trace.generations < cfg_.max_generations) {
        pop = reproduce(pop);
        ++trace.generations;
        const Individual gen_best = best_of(pop);
        if (gen_best.fitness < best.fitness - 1e-9) {
            best = gen_best;
            stall = 0;
        } else {
            if (gen_best.fitness < best.fitness) best = gen_best;
            ++stall;
        }
        trace.best_fitness.push_back(best.fitness);
    }

    std::optional<Candidate> cand = evaluator_.decode(best.chromosome);
    if (!cand) throw DegenerateGeometry("best chromosome no longer decodes");
    trace.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(*cand), std::move(trace)};
}

GAResult run_ga(const ElementSet& elements, const DepositionContext& ctx, const GAConfig& cfg, Rng& rng) {
    GeneticSearch search(elements, ctx, cfg, rng);
    auto [best, trace] = search.run();
    return {std::move(best), std::move(trace)};
}

}  // namespace layerseg
