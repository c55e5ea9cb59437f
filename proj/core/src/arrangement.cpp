// Planar arrangement of a region boundary plus cut segments, and extraction of
// the bounded faces that lie inside the region.
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>

#include "layerseg/geometry.hpp"

namespace layerseg {

namespace {

// Vertex registry that identifies points closer than the snapping tolerance.
class VertexPool {
public:
    explicit VertexPool(double eps) : eps_(eps), cell_(eps * 16.0) {}

    int intern(Point2 p) {
        const auto [cx, cy] = cell_of(p);
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = grid_.find(key(cx + dx, cy + dy));
                if (it == grid_.end()) continue;
                for (int id : it->second) {
                    if (distance(points_[static_cast<std::size_t>(id)], p) <= eps_) return id;
                }
            }
        }
        const int id = static_cast<int>(points_.size());
        points_.push_back(p);
        grid_[key(cx, cy)].push_back(id);
        return id;
    }

    const std::vector<Point2>& points() const { return points_; }

private:
    std::pair<std::int64_t, std::int64_t> cell_of(Point2 p) const {
        return {static_cast<std::int64_t>(std::floor(p.x / cell_)), static_cast<std::int64_t>(std::floor(p.y / cell_))};
    }
    static std::uint64_t key(std::int64_t x, std::int64_t y) {
        return (static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ull) ^ static_cast<std::uint64_t>(y);
    }

    double eps_;
    double cell_;
    std::vector<Point2> points_;
    std::unordered_map<std::uint64_t, std::vector<int>> grid_;
};

struct InputSegment {
    Point2 a;
    Point2 b;
    bool is_cut = false;
};

// Parameters along s where other segments touch or cross it.
std::vector<double> split_parameters(const InputSegment& s, std::span<const InputSegment> all, double eps) {
    std::vector<double> ts{0.0, 1.0};
    const Point2 d = s.b - s.a;
    const double len2 = dot(d, d);
    const double len = std::sqrt(len2);
    const BoundingBox bs = bounding_box(std::array<Point2, 2>{s.a, s.b});
    for (const InputSegment& o : all) {
        if (&o == &s) continue;
        if (!bs.overlaps(bounding_box(std::array<Point2, 2>{o.a, o.b}), eps)) continue;
        for (Point2 p : {o.a, o.b}) {
            if (point_segment_distance(p, s.a, s.b) <= eps) ts.push_back(std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0));
        }
        const Point2 e = o.b - o.a;
        const double denom = cross(d, e);
        if (std::abs(denom) <= 1e-12 * len * norm(e)) continue;
        const double t = cross(o.a - s.a, e) / denom;
        const double u = cross(o.a - s.a, d) / denom;
        if (t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    return ts;
}

struct HalfEdge {
    int from = 0;
    int to = 0;
    int next = -1;
    bool cut = false;
};

}  // namespace

std::vector<Region> partition_by_cuts(const Region& region, std::span<const Segment2> cuts) {
    if (region.outer.size() < 3) throw DegenerateGeometry("partition of a degenerate region");

    std::vector<InputSegment> segments;
    auto add_ring = [&](const Ring& ring) {
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const Point2 a = ring[i];
            const Point2 b = ring[(i + 1) % ring.size()];
            if (distance(a, b) > kEpsGeom) segments.push_back({a, b, false});
        }
    };
    add_ring(region.outer);
    for (const Ring& h : region.holes) add_ring(h);
    for (const Segment2& c : cuts) {
        if (c.length() <= kEpsGeom) throw DegenerateGeometry("cut segment has zero length");
        segments.push_back({c.a, c.b, true});
    }

    // Split every segment at its contacts and snap the pieces into a graph.
    VertexPool pool(kEpsGeom);
    std::map<std::pair<int, int>, bool> edges;  // (min,max) -> originates from a cut
    for (const InputSegment& s : segments) {
        const std::vector<double> ts = split_parameters(s, segments, kEpsGeom);
        int prev = -1;
        for (double t : ts) {
            const int id = pool.intern(s.a + t * (s.b - s.a));
            if (prev >= 0 && id != prev) {
                auto key = std::minmax(prev, id);
                auto [it, inserted] = edges.emplace(std::pair<int, int>{key.first, key.second}, s.is_cut);
                if (!inserted) it->second = it->second && s.is_cut;
            }
            prev = id;
        }
    }
    const std::vector<Point2>& pts = pool.points();

    for (const auto& [key, is_cut] : edges) {
        if (!is_cut) continue;
        const Point2 mid = 0.5 * (pts[static_cast<std::size_t>(key.first)] + pts[static_cast<std::size_t>(key.second)]);
        if (locate(mid, region) == Location::Outside) {
            throw PreconditionViolated("cut leaves the region");
        }
    }

    // Half-edge structure; outgoing edges per vertex sorted by angle.
    std::vector<HalfEdge> half;
    auto build_half_edges = [&] {
        half.clear();
        half.reserve(edges.size() * 2);
        for (const auto& [key, is_cut] : edges) {
            half.push_back({key.first, key.second, -1, is_cut});
            half.push_back({key.second, key.first, -1, is_cut});
        }
        std::vector<std::vector<int>> outgoing(pts.size());
        for (std::size_t i = 0; i < half.size(); ++i) outgoing[static_cast<std::size_t>(half[i].from)].push_back(static_cast<int>(i));
        auto angle_of = [&](int h) {
            const Point2 d = pts[static_cast<std::size_t>(half[static_cast<std::size_t>(h)].to)] -
                             pts[static_cast<std::size_t>(half[static_cast<std::size_t>(h)].from)];
            return std::atan2(d.y, d.x);
        };
        std::vector<int> position(half.size());
        for (auto& out : outgoing) {
            std::sort(out.begin(), out.end(), [&](int a, int b) { return angle_of(a) < angle_of(b); });
            for (std::size_t k = 0; k < out.size(); ++k) position[static_cast<std::size_t>(out[k])] = static_cast<int>(k);
        }
        for (std::size_t i = 0; i < half.size(); ++i) {
            const int twin = static_cast<int>(i ^ 1u);
            const auto& around = outgoing[static_cast<std::size_t>(half[i].to)];
            const int k = position[static_cast<std::size_t>(twin)];
            const int n = static_cast<int>(around.size());
            half[i].next = around[static_cast<std::size_t>((k - 1 + n) % n)];
        }
    };

    // Bridges and dangling pieces are walked twice by one cycle; they bound no
    // area, so drop them until every edge separates two distinct cycles.
    for (;;) {
        build_half_edges();
        std::vector<int> cycle_of(half.size(), -1);
        int cycles = 0;
        for (std::size_t start = 0; start < half.size(); ++start) {
            if (cycle_of[start] >= 0) continue;
            for (std::size_t h = start; cycle_of[h] < 0; h = static_cast<std::size_t>(half[h].next)) cycle_of[h] = cycles;
            ++cycles;
        }
        std::vector<std::pair<int, int>> doubled;
        for (std::size_t i = 0; i < half.size(); i += 2) {
            if (cycle_of[i] == cycle_of[i + 1]) doubled.push_back(std::minmax(half[i].from, half[i].to));
        }
        if (doubled.empty()) break;
        for (const auto& key : doubled) edges.erase(key);
    }

    // Connected components of the graph, to pair holes with enclosing faces.
    std::vector<int> comp(pts.size());
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int v) {
        while (comp[static_cast<std::size_t>(v)] != v) {
            comp[static_cast<std::size_t>(v)] = comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
            v = comp[static_cast<std::size_t>(v)];
        }
        return v;
    };
    for (const auto& [key, _] : edges) comp[static_cast<std::size_t>(find(key.first))] = find(key.second);

    struct Cycle {
        Ring ring;
        double area = 0.0;
        int component = 0;
    };
    std::vector<Cycle> bounded;
    std::vector<Cycle> inner;
    std::vector<char> visited(half.size(), 0);
    for (std::size_t start = 0; start < half.size(); ++start) {
        if (visited[start]) continue;
        Cycle c;
        c.component = find(half[start].from);
        std::size_t h = start;
        while (!visited[h]) {
            visited[h] = 1;
            c.ring.push_back(pts[static_cast<std::size_t>(half[h].from)]);
            h = static_cast<std::size_t>(half[h].next);
        }
        if (c.ring.size() < 3) continue;
        c.area = signed_area(c.ring);
        if (c.area > kEpsArea) {
            bounded.push_back(std::move(c));
        } else if (c.area < -kEpsArea) {
            inner.push_back(std::move(c));
        }
    }

    std::vector<Region> faces(bounded.size());
    for (std::size_t i = 0; i < bounded.size(); ++i) faces[i].outer = bounded[i].ring;
    for (Cycle& c : inner) {
        // Outer boundary of a component: the enclosing face is the smallest
        // bounded cycle of another component that contains it.
        int owner = -1;
        for (std::size_t i = 0; i < bounded.size(); ++i) {
            if (bounded[i].component == c.component) continue;
            if (locate(c.ring.front(), bounded[i].ring) != Location::Inside) continue;
            if (owner < 0 || bounded[i].area < bounded[static_cast<std::size_t>(owner)].area) owner = static_cast<int>(i);
        }
        if (owner >= 0) faces[static_cast<std::size_t>(owner)].holes.push_back(std::move(c.ring));
    }

    std::vector<Region> result;
    for (Region& f : faces) {
        if (area(f) <= kEpsArea) continue;
        if (locate(interior_point(f), region) == Location::Inside) result.push_back(std::move(f));
    }
    return result;
}

}  // namespace layerseg
