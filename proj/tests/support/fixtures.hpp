#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "layerseg/io.hpp"
#include "layerseg/segmenter.hpp"

namespace layerseg::testing {

inline std::string data_path(const std::string& name) { return std::string(LAYERSEG_DATA_DIR) + "/layers/" + name; }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Layer load_layer(const std::string& name) { return parse_layer(read_text(data_path(name))); }

inline DepositionRegion region_of(const Layer& layer) { return build_deposition_region(classify_loops(layer)); }

inline Region box(double x0, double y0, double x1, double y1) { return Region{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, {}}; }

// L-shape fixture: material loop (0,0),(20,0),(20,10),(10,10),(10,20),(0,20).
inline Ring l_shape_ring() { return {{0, 0}, {20, 0}, {20, 10}, {10, 10}, {10, 20}, {0, 20}}; }
inline Region l_shape() { return Region{l_shape_ring(), {}}; }

// 20x20 square with a centred 4x4 hole.
inline Region annulus() { return Region{box(0, 0, 20, 20).outer, {{{8, 8}, {8, 12}, {12, 12}, {12, 8}}}}; }

inline Layer layer_of(std::vector<Ring> rings) {
    Layer layer;
    for (Ring& r : rings) layer.loops.push_back({std::move(r), std::nullopt});
    return layer;
}

// Two regions cover the same point set (within tolerance).
inline bool same_shape(const Region& a, const Region& b, double tol = 1e-6) {
    const double aa = area(a);
    const double bb = area(b);
    if (std::abs(aa - bb) > tol * std::max(1.0, aa)) return false;
    return std::abs(region_intersection_area(a, b) - aa) <= tol * std::max(1.0, aa);
}

// --- independent oracles ---------------------------------------------------

// Shoelace without any library code path.
inline double oracle_ring_area(const Ring& r) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Point2 p = r[i];
        const Point2 q = r[(i + 1) % r.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return 0.5 * s;
}

// Union boundary of faces from one planar partition: directed edges shared by
// two faces cancel; the rest are chained into rings. Faces must share full
// edges with identical vertices, which arrangement faces do.
inline std::vector<Ring> oracle_union_boundary(const std::vector<Region>& faces) {
    using Key = std::pair<std::pair<double, double>, std::pair<double, double>>;
    auto k = [](Point2 a, Point2 b) { return Key{{a.x, a.y}, {b.x, b.y}}; };
    std::map<Key, int> directed;
    auto add_ring = [&](const Ring& r, bool ccw) {
        const bool is_ccw = oracle_ring_area(r) > 0;
        Ring ring = r;
        if (is_ccw != ccw) std::reverse(ring.begin(), ring.end());
        for (std::size_t i = 0; i < ring.size(); ++i) ++directed[k(ring[i], ring[(i + 1) % ring.size()])];
    };
    for (const Region& f : faces) {
        add_ring(f.outer, true);
        for (const Ring& h : f.holes) add_ring(h, false);
    }
    std::multimap<std::pair<double, double>, Point2> next;
    for (const auto& [key, count] : directed) {
        const auto rev = Key{key.second, key.first};
        auto it = directed.find(rev);
        if (it != directed.end() && it->second > 0) continue;
        for (int c = 0; c < count; ++c) next.emplace(key.first, Point2{key.second.first, key.second.second});
    }
    std::vector<Ring> rings;
    while (!next.empty()) {
        auto it = next.begin();
        const Point2 start{it->first.first, it->first.second};
        Ring ring{start};
        Point2 cur = it->second;
        next.erase(it);
        while (!(cur == start)) {
            ring.push_back(cur);
            auto jt = next.find({cur.x, cur.y});
            if (jt == next.end()) break;
            cur = jt->second;
            next.erase(jt);
        }
        rings.push_back(ring);
    }
    return rings;
}

// Sharp-turn count on rings after dropping collinear vertices.
inline int oracle_sharp_turns(const std::vector<Ring>& rings, double alpha_max) {
    int count = 0;
    for (Ring r : rings) {
        bool changed = true;
        auto angle = [](Point2 a, Point2 b, Point2 c) {
            const double x1 = b.x - a.x, y1 = b.y - a.y, x2 = c.x - b.x, y2 = c.y - b.y;
            return std::atan2(std::abs(x1 * y2 - y1 * x2), x1 * x2 + y1 * y2) * 180.0 / 3.14159265358979323846;
        };
        while (changed && r.size() > 3) {
            changed = false;
            for (std::size_t i = 0; i < r.size(); ++i) {
                const std::size_t n = r.size();
                if (angle(r[(i + n - 1) % n], r[i], r[(i + 1) % n]) < 0.1) {
                    r.erase(r.begin() + static_cast<long>(i));
                    changed = true;
                    break;
                }
            }
        }
        for (std::size_t i = 0; i < r.size(); ++i) {
            const std::size_t n = r.size();
            if (angle(r[(i + n - 1) % n], r[i], r[(i + 1) % n]) > alpha_max) ++count;
        }
    }
    return count;
}

// Eq. (1) written out independently of the library's fitness().
inline double oracle_fitness(double s0, double s1, double s2, double s3, int n_st, double rect_area) {
    const double c0 = 0.001, c1 = 1.0, c3 = 1.0;
    const double c2 = s2 > 0.5 * rect_area ? 1.0 : 0.0;
    return -(c0 * s0 + c1 * s1) / (std::exp(std::abs(4.0 - n_st)) + c2 * s2 + c3 * s3);
}

struct SubsetScore {
    std::vector<int> ids;
    double fitness = 0.0;
};

// Exhaustive search over edge-connected element subsets: rectangle = the
// minimum-area enclosing rectangle of the union, scored with Eq. (1).
inline std::vector<SubsetScore> oracle_enumerate_subsets(const std::vector<BasicElement>& elements,
                                                          const DepositionRegion& region, double alpha_max) {
    const std::size_t n = elements.size();
    std::vector<SubsetScore> out;
    auto adjacent = [&](std::size_t i, std::size_t j) {
        return shared_boundary_length(elements[i].region, elements[j].region) > 1e-6;
    };
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) members.push_back(i);
        }
        std::vector<std::size_t> reach{members.front()};
        for (std::size_t k = 0; k < reach.size(); ++k) {
            for (std::size_t j : members) {
                if (std::find(reach.begin(), reach.end(), j) == reach.end() && adjacent(reach[k], j)) reach.push_back(j);
            }
        }
        if (reach.size() != members.size()) continue;

        std::vector<Region> faces;
        double s1 = 0.0;
        SubsetScore score;
        for (std::size_t i : members) {
            faces.push_back(elements[i].region);
            s1 += oracle_ring_area(elements[i].region.outer);
            score.ids.push_back(elements[i].id);
        }
        const std::vector<Ring> boundary = oracle_union_boundary(faces);
        Ring outer = *std::max_element(boundary.begin(), boundary.end(), [](const Ring& a, const Ring& b) {
            return std::abs(oracle_ring_area(a)) < std::abs(oracle_ring_area(b));
        });
        const OrientedRect rect = min_area_enclosing_rectangle(Region{outer, {}});
        const Region rect_poly{rect_ring(rect), {}};
        double s0 = 0.0, material = 0.0, holes = 0.0;
        for (const Region& c : region.components) {
            s0 += region_intersection_area(rect_poly, c);
            material += region_intersection_area(rect_poly, Region{c.outer, {}});
            for (const Ring& h : c.holes) holes += region_intersection_area(rect_poly, normalized(Region{h, {}}));
        }
        const double s2 = rect.area() - material;
        score.fitness = oracle_fitness(s0, s1, s2, holes, oracle_sharp_turns(boundary, alpha_max), rect.area());
        out.push_back(std::move(score));
    }
    return out;
}

inline double total_area(const std::vector<SubRegion>& subs) {
    double t = 0.0;
    for (const SubRegion& s : subs) t += area(s.region);
    return t;
}

inline double max_pairwise_overlap(const std::vector<Region>& regions) {
    double worst = 0.0;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        for (std::size_t j = i + 1; j < regions.size(); ++j) {
            worst = std::max(worst, region_intersection_area(regions[i], regions[j]));
        }
    }
    return worst;
}

inline std::vector<Region> regions_of(const std::vector<SubRegion>& subs) {
    std::vector<Region> out;
    for (const SubRegion& s : subs) out.push_back(s.region);
    return out;
}

inline bool non_increasing(const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i] > xs[i - 1]) return false;
    }
    return true;
}

}  // namespace layerseg::testing
