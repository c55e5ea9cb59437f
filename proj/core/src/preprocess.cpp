#include "layerseg/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace layerseg {

void PreprocessConfig::validate() const {
    if (!(alpha_max > 0.0 && alpha_max < 180.0)) {
        throw PreconditionViolated("alpha_max must lie in (0, 180), got " + std::to_string(alpha_max));
    }
}

namespace {

template <typename Fn>
void for_each_turn(const Ring& raw, Fn&& fn) {
    const Ring ring = simplify_ring(raw);
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 prev = ring[(i + n - 1) % n];
        const Point2 next = ring[(i + 1) % n];
        fn(prev, ring[i], next, turning_angle(prev, ring[i], next));
    }
}

bool same_cut(const Segment2& a, const Segment2& b) {
    return (distance(a.a, b.a) <= kEpsGeom && distance(a.b, b.b) <= kEpsGeom) ||
           (distance(a.a, b.b) <= kEpsGeom && distance(a.b, b.a) <= kEpsGeom);
}

// Folds slivers into the neighbour sharing the longest stretch of boundary.
std::vector<Region> merge_slivers(std::vector<Region> faces) {
    for (;;) {
        auto sliver = std::find_if(faces.begin(), faces.end(), [](const Region& f) { return area(f) < kSliverArea; });
        if (sliver == faces.end() || faces.size() == 1) return faces;
        std::size_t best = faces.size();
        double best_area = -1.0;
        for (std::size_t i = 0; i < faces.size(); ++i) {
            if (&faces[i] == &*sliver) continue;
            if (shared_boundary_length(*sliver, faces[i]) <= kEpsGeom) continue;
            const double a = area(faces[i]);
            if (a > best_area) {
                best_area = a;
                best = i;
            }
        }
        if (best == faces.size()) return faces;  // isolated sliver: keep it
        const std::vector<Region> pair{faces[best], *sliver};
        std::vector<Region> merged = region_union(pair);
        if (merged.size() != 1) return faces;
        faces[best] = normalized(std::move(merged.front()));
        faces.erase(sliver);
    }
}

}  // namespace

std::vector<SharpTurn> find_sharp_turns(const DepositionRegion& region, const PreprocessConfig& cfg) {
    cfg.validate();
    std::vector<SharpTurn> turns;
    for (std::size_t c = 0; c < region.components.size(); ++c) {
        const Region& comp = region.components[c];
        auto scan = [&](const Ring& ring, std::size_t ring_index) {
            for_each_turn(ring, [&](Point2 prev, Point2 p, Point2 next, Turn t) {
                if (t.magnitude > cfg.alpha_max) {
                    turns.push_back({p, c, ring_index, t.magnitude, t.side, {prev, p}, {p, next}});
                }
            });
        };
        scan(comp.outer, 0);
        for (std::size_t h = 0; h < comp.holes.size(); ++h) scan(comp.holes[h], h + 1);
    }
    return turns;
}

int count_sharp_turns(const Region& region, double alpha_max) {
    int count = 0;
    auto scan = [&](const Ring& ring) {
        for_each_turn(ring, [&](Point2, Point2, Point2, Turn t) {
            if (t.magnitude > alpha_max) ++count;
        });
    };
    scan(region.outer);
    for (const Ring& h : region.holes) scan(h);
    return count;
}

std::vector<Segment2> generate_cuts(const DepositionRegion& region, const std::vector<SharpTurn>& turns) {
    std::vector<Segment2> cuts;
    auto emit = [&](const Region& comp, Point2 origin, Point2 direction) {
        if (auto hit = ray_first_hit(origin, direction, comp)) {
            const Segment2 cut{origin, *hit};
            if (std::none_of(cuts.begin(), cuts.end(), [&](const Segment2& c) { return same_cut(c, cut); })) {
                cuts.push_back(cut);
            }
        }
    };
    for (const SharpTurn& t : turns) {
        const Region& comp = region.components.at(t.component);
        emit(comp, t.vertex, t.edge_in.b - t.edge_in.a);
        emit(comp, t.vertex, t.edge_out.a - t.edge_out.b);
    }
    return cuts;
}

std::vector<BasicElement> decompose(const DepositionRegion& region, const PreprocessConfig& cfg) {
    const std::vector<SharpTurn> turns = find_sharp_turns(region, cfg);
    std::vector<Region> faces;
    for (std::size_t c = 0; c < region.components.size(); ++c) {
        std::vector<SharpTurn> own;
        std::copy_if(turns.begin(), turns.end(), std::back_inserter(own), [&](const SharpTurn& t) { return t.component == c; });
        const DepositionRegion single{{region.components[c]}};
        for (SharpTurn& t : own) t.component = 0;
        const std::vector<Segment2> cuts = generate_cuts(single, own);
        for (Region& f : merge_slivers(partition_by_cuts(region.components[c], cuts))) faces.push_back(std::move(f));
    }

    std::vector<std::pair<Point2, Region>> keyed;
    keyed.reserve(faces.size());
    for (Region& f : faces) {
        const Point2 c = centroid(f);
        keyed.emplace_back(c, std::move(f));
    }
    // Centroids are compared on the snapping grid so round-off cannot reorder ties.
    auto grid = [](double v) { return std::llround(v / kEpsGeom); };
    std::stable_sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
        const auto ax = grid(a.first.x), bx = grid(b.first.x);
        return ax < bx || (ax == bx && grid(a.first.y) < grid(b.first.y));
    });

    std::vector<BasicElement> elements;
    elements.reserve(keyed.size());
    for (auto& [c, f] : keyed) {
        BasicElement e;
        e.id = static_cast<int>(elements.size());
        e.area = area(f);
        e.region = std::move(f);
        elements.push_back(std::move(e));
    }
    return elements;
}

}  // namespace layerseg
