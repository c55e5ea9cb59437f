// Polygon union and difference backed by Boost.Geometry. Intersection areas
// are integrated along the boundaries instead, which stays exact where edges
// of the two operands overlap; a convex clip serves the GA hot path.
#include <algorithm>
#include <cmath>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>

#include "layerseg/geometry.hpp"

namespace layerseg {

namespace bg = boost::geometry;

namespace {

using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint, /*ClockWise=*/false, /*Closed=*/false>;
using BMulti = bg::model::multi_polygon<BPolygon>;

void require_ring(std::span<const Point2> ring) {
    if (ring.size() < 3) throw DegenerateGeometry("boolean operand ring has fewer than 3 vertices");
}

BPolygon to_boost(const Region& r) {
    require_ring(r.outer);
    BPolygon poly;
    for (const Point2& p : r.outer) poly.outer().emplace_back(p.x, p.y);
    for (const Ring& h : r.holes) {
        require_ring(h);
        auto& inner = poly.inners().emplace_back();
        for (const Point2& p : h) inner.emplace_back(p.x, p.y);
    }
    bg::correct(poly);
    return poly;
}

Ring from_boost_ring(const auto& ring) {
    Ring out;
    out.reserve(ring.size());
    for (const BPoint& p : ring) out.push_back({p.x(), p.y()});
    // Tolerate closed output from algorithms that repeat the first point.
    if (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
}

std::vector<Region> from_boost(const BMulti& mp) {
    std::vector<Region> out;
    for (const BPolygon& poly : mp) {
        Region r;
        r.outer = from_boost_ring(poly.outer());
        for (const auto& inner : poly.inners()) r.holes.push_back(from_boost_ring(inner));
        if (r.outer.size() >= 3 && area(r) > kEpsArea) out.push_back(std::move(r));
    }
    return out;
}


std::vector<Segment2> region_edges(const Region& r) {
    std::vector<Segment2> out;
    auto add = [&](const Ring& ring) {
        for (std::size_t i = 0; i < ring.size(); ++i) out.push_back({ring[i], ring[(i + 1) % ring.size()]});
    };
    add(r.outer);
    for (const Ring& h : r.holes) add(h);
    return out;
}

// Parameters in (0, 1) where pq meets the edges of other, including the ends
// of collinear overlaps.
std::vector<double> split_parameters(Point2 p, Point2 q, const std::vector<Segment2>& other) {
    const Point2 d = q - p;
    const double len2 = dot(d, d);
    const double len = std::sqrt(len2);
    std::vector<double> ts{0.0, 1.0};
    auto add = [&](double t) {
        if (t > 0.0 && t < 1.0) ts.push_back(t);
    };
    for (const Segment2& e : other) {
        const Point2 f = e.b - e.a;
        const double denom = cross(d, f);
        const Point2 w = e.a - p;
        if (std::abs(denom) > 1e-12 * len * norm(f)) {
            const double t = cross(w, f) / denom;
            const double u = cross(w, d) / denom;
            const double tol = kEpsGeom / norm(f);
            if (u >= -tol && u <= 1.0 + tol) add(t);
        } else if (std::abs(cross(w, d)) <= kEpsGeom * len) {
            add(dot(e.a - p, d) / len2);
            add(dot(e.b - p, d) / len2);
        }
    }
    std::sort(ts.begin(), ts.end());
    return ts;
}

double boundary_integral_inside(const Region& subject, const Region& other, bool count_shared) {
    const std::vector<Segment2> other_edges = region_edges(other);
    double sum = 0.0;
    for (const Segment2& s : region_edges(subject)) {
        const std::vector<double> ts = split_parameters(s.a, s.b, other_edges);
        const Point2 d = s.b - s.a;
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            if (ts[i + 1] - ts[i] <= 1e-15) continue;
            const Point2 u = s.a + ts[i] * d;
            const Point2 v = s.a + ts[i + 1] * d;
            const Point2 mid = 0.5 * (u + v);
            const Location loc = locate(mid, other);
            bool take = loc == Location::Inside;
            if (loc == Location::Boundary && count_shared) {
                for (const Segment2& e : other_edges) {
                    if (point_segment_distance(mid, e.a, e.b) <= kEpsGeom && dot(d, e.b - e.a) > 0.0) {
                        take = true;
                        break;
                    }
                }
            }
            if (take) sum += 0.5 * cross(u, v);
        }
    }
    return sum;
}

Ring clip_ring(std::span<const Point2> subject, std::span<const Point2> window) {
    Ring out(subject.begin(), subject.end());
    Ring in;
    const std::size_t n = window.size();
    for (std::size_t i = 0; i < n && !out.empty(); ++i) {
        const Point2 a = window[i];
        const Point2 b = window[(i + 1) % n];
        const Point2 e = b - a;
        in.swap(out);
        out.clear();
        const std::size_t m = in.size();
        for (std::size_t j = 0; j < m; ++j) {
            const Point2 p = in[j];
            const Point2 q = in[(j + 1) % m];
            const double sp = cross(e, p - a);
            const double sq = cross(e, q - a);
            if (sp >= 0.0) out.push_back(p);
            if ((sp >= 0.0) != (sq >= 0.0)) {
                const double t = sp / (sp - sq);
                out.push_back(p + t * (q - p));
            }
        }
    }
    return out;
}

double ring_area_abs(const Ring& r) { return r.size() < 3 ? 0.0 : std::abs(signed_area(r)); }

}  // namespace

double region_intersection_area(const Region& a, const Region& b) {
    validate_region(a);
    validate_region(b);
    if (!bounding_box(a).overlaps(bounding_box(b), kEpsGeom)) return 0.0;
    const Region na = normalized(a);
    const Region nb = normalized(b);
    // Green's theorem over the boundary of a ∩ b: pieces of each boundary
    // inside the other region, plus shared pieces traversed the same way once.
    const double total = boundary_integral_inside(na, nb, true) + boundary_integral_inside(nb, na, false);
    return std::max(0.0, total);
}

double intersection_area(const Region& a, std::span<const Region> b) {
    double total = 0.0;
    for (const Region& r : b) total += region_intersection_area(a, r);
    return total;
}

std::vector<Region> region_union(std::span<const Region> parts) {
    BMulti acc;
    for (const Region& part : parts) {
        BMulti next;
        bg::union_(acc, to_boost(part), next);
        acc = std::move(next);
    }
    return from_boost(acc);
}

std::vector<Region> region_difference(const Region& a, std::span<const Region> b) {
    BMulti acc;
    acc.push_back(to_boost(a));
    for (const Region& r : b) {
        BMulti next;
        bg::difference(acc, to_boost(r), next);
        acc = std::move(next);
    }
    return from_boost(acc);
}

double convex_clip_area(std::span<const Point2> convex_ccw, const Region& subject) {
    double total = ring_area_abs(clip_ring(subject.outer, convex_ccw));
    for (const Ring& h : subject.holes) total -= ring_area_abs(clip_ring(h, convex_ccw));
    return std::max(0.0, total);
}

}  // namespace layerseg
