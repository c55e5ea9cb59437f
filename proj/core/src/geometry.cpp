#include "layerseg/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace layerseg {

namespace {

// Signed distance of c from the line through a and b (positive on the left).
double side_of(Point2 a, Point2 b, Point2 c) {
    const double len = distance(a, b);
    return len > 0.0 ? cross(b - a, c - a) / len : distance(a, c);
}

template <typename Fn>
void for_each_edge(std::span<const Point2> ring, Fn&& fn) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) fn(ring[i], ring[(i + 1) % n]);
}

template <typename Fn>
void for_each_ring(const Region& region, Fn&& fn) {
    fn(std::span<const Point2>(region.outer));
    for (const Ring& h : region.holes) fn(std::span<const Point2>(h));
}

bool on_segment(Point2 p, Point2 a, Point2 b, double eps) {
    return point_segment_distance(p, a, b) <= eps;
}

}  // namespace

double signed_area(std::span<const Point2> ring) {
    if (ring.size() < 3) {
        throw DegenerateGeometry("ring has " + std::to_string(ring.size()) + " vertices, need at least 3");
    }
    // Shifted to the first vertex to keep cancellation low for far-off coordinates.
    const Point2 o = ring[0];
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
        twice += cross(ring[i] - o, ring[i + 1] - o);
    }
    return 0.5 * twice;
}

double area(const Region& region) {
    double a = std::abs(signed_area(region.outer));
    for (const Ring& h : region.holes) a -= std::abs(signed_area(h));
    return a;
}

Point2 centroid(const Region& region) {
    double cx = 0.0, cy = 0.0, total = 0.0;
    auto accumulate = [&](std::span<const Point2> ring, double sign) {
        const Point2 o = ring[0];
        double s = signed_area(ring) >= 0.0 ? sign : -sign;
        for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
            const Point2 p = ring[i] - o;
            const Point2 q = ring[i + 1] - o;
            const double c = 0.5 * cross(p, q) * s;
            cx += c * (o.x + (p.x + q.x) / 3.0);
            cy += c * (o.y + (p.y + q.y) / 3.0);
            total += c;
        }
    };
    accumulate(region.outer, 1.0);
    for (const Ring& h : region.holes) accumulate(h, -1.0);
    if (std::abs(total) <= 0.0) throw DegenerateGeometry("centroid of zero-area region");
    return {cx / total, cy / total};
}

Turn turning_angle(Point2 prev, Point2 p, Point2 next) {
    const Point2 v1 = p - prev;
    const Point2 v2 = next - p;
    if (norm(v1) <= kEpsGeom || norm(v2) <= kEpsGeom) {
        throw DegenerateGeometry("turning angle at coincident points");
    }
    const double c = cross(v1, v2);
    const double mag = rad_to_deg(std::atan2(std::abs(c), dot(v1, v2)));
    Turn t{mag, TurnSide::Straight};
    if (mag >= kEpsAngle) t.side = c > 0.0 ? TurnSide::Convex : TurnSide::Reflex;
    // A full reversal has no cross-product sign; it is a spike pointing out
    // of the ring.
    if (mag >= kEpsAngle && c == 0.0) t.side = TurnSide::Convex;
    return t;
}

BoundingBox bounding_box(std::span<const Point2> pts) {
    BoundingBox b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point2& p : pts) {
        b.min_x = std::min(b.min_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_x = std::max(b.max_x, p.x);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

BoundingBox bounding_box(const Region& region) { return bounding_box(region.outer); }

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 <= 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + t * ab);
}

double distance_to_boundary(Point2 p, const Region& region) {
    double best = std::numeric_limits<double>::infinity();
    for_each_ring(region, [&](std::span<const Point2> ring) {
        for_each_edge(ring, [&](Point2 a, Point2 b) { best = std::min(best, point_segment_distance(p, a, b)); });
    });
    return best;
}

Location locate(Point2 p, std::span<const Point2> ring, double eps) {
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2 a = ring[j];
        const Point2 b = ring[i];
        if (on_segment(p, a, b, eps)) return Location::Boundary;
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside ? Location::Inside : Location::Outside;
}

Location locate(Point2 p, const Region& region, double eps) {
    const Location outer = locate(p, region.outer, eps);
    if (outer != Location::Inside) return outer;
    for (const Ring& h : region.holes) {
        const Location l = locate(p, h, eps);
        if (l == Location::Boundary) return Location::Boundary;
        if (l == Location::Inside) return Location::Outside;
    }
    return Location::Inside;
}

Point2 interior_point(const Region& region) {
    std::vector<double> ys;
    for_each_ring(region, [&](std::span<const Point2> ring) {
        for (const Point2& p : ring) ys.push_back(p.y);
    });
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    if (ys.size() < 2) throw DegenerateGeometry("region has no vertical extent");

    // Scan lines through the midpoints of vertex-free slabs, widest slab
    // first; on each line take the midpoint of the widest inside interval.
    std::vector<std::size_t> order(ys.size() - 1);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return ys[a + 1] - ys[a] > ys[b + 1] - ys[b]; });

    Point2 best{};
    double best_score = -1.0;
    for (std::size_t k = 0; k < order.size() && k < 8; ++k) {
        const std::size_t i = order[k];
        const double y = 0.5 * (ys[i] + ys[i + 1]);
        std::vector<double> xs;
        for_each_ring(region, [&](std::span<const Point2> ring) {
            for_each_edge(ring, [&](Point2 a, Point2 b) {
                if ((a.y > y) != (b.y > y)) xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
            });
        });
        std::sort(xs.begin(), xs.end());
        for (std::size_t j = 0; j + 1 < xs.size(); j += 2) {
            const double width = xs[j + 1] - xs[j];
            const double score = std::min(width, ys[i + 1] - ys[i]);
            if (score > best_score) {
                best_score = score;
                best = {0.5 * (xs[j] + xs[j + 1]), y};
            }
        }
    }
    if (best_score <= 0.0) throw DegenerateGeometry("region has no interior");
    return best;
}

Ring simplify_ring(const Ring& ring, double eps, double angle_eps) {
    Ring out;
    out.reserve(ring.size());
    for (const Point2& p : ring) {
        if (out.empty() || distance(out.back(), p) > eps) out.push_back(p);
    }
    while (out.size() > 1 && distance(out.front(), out.back()) <= eps) out.pop_back();

    bool changed = true;
    while (changed && out.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < out.size() && out.size() >= 3; ++i) {
            const std::size_t n = out.size();
            const Point2 prev = out[(i + n - 1) % n];
            const Point2 next = out[(i + 1) % n];
            const Point2 v1 = out[i] - prev;
            const Point2 v2 = next - out[i];
            const double mag = rad_to_deg(std::atan2(std::abs(cross(v1, v2)), dot(v1, v2)));
            if (mag < angle_eps) {
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                --i;
            }
        }
    }
    if (out.size() < 3) throw DegenerateGeometry("ring collapses to fewer than 3 vertices");
    return out;
}

Region simplify_region(const Region& region) {
    Region r;
    r.outer = simplify_ring(region.outer);
    for (const Ring& h : region.holes) r.holes.push_back(simplify_ring(h));
    return r;
}

Ring reversed(Ring ring) {
    std::reverse(ring.begin(), ring.end());
    return ring;
}

Region normalized(Region region) {
    if (signed_area(region.outer) < 0.0) region.outer = reversed(std::move(region.outer));
    for (Ring& h : region.holes) {
        if (signed_area(h) > 0.0) h = reversed(std::move(h));
    }
    return region;
}

bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d, double eps) {
    const double d1 = side_of(a, b, c);
    const double d2 = side_of(a, b, d);
    const double d3 = side_of(c, d, a);
    const double d4 = side_of(c, d, b);
    return ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
           ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps));
}

namespace {

bool segments_touch(Point2 a, Point2 b, Point2 c, Point2 d, double eps) {
    if (segments_cross(a, b, c, d, eps)) return true;
    return on_segment(c, a, b, eps) || on_segment(d, a, b, eps) || on_segment(a, c, d, eps) ||
           on_segment(b, c, d, eps);
}

}  // namespace

void validate_ring(std::span<const Point2> ring) {
    const std::size_t n = ring.size();
    if (n < 3) throw DegenerateGeometry("ring has " + std::to_string(n) + " vertices, need at least 3");
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p = ring[i];
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw DegenerateGeometry("non-finite coordinate at vertex " + std::to_string(i));
        }
        if (distance(p, ring[(i + 1) % n]) <= kEpsGeom) {
            throw DegenerateGeometry("coincident consecutive vertices at " + std::to_string(i));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = ring[i];
        const Point2 b = ring[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point2 c = ring[j];
            const Point2 d = ring[(j + 1) % n];
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                // Adjacent edges may only share their common vertex.
                const Point2 shared = (j == i + 1) ? b : a;
                const Point2 far_this = (j == i + 1) ? a : b;
                const Point2 far_other = (j == i + 1) ? d : c;
                if (on_segment(far_other, far_this, shared, kEpsGeom) ||
                    on_segment(far_this, shared, far_other, kEpsGeom)) {
                    throw DegenerateGeometry("ring folds back on itself at edge " + std::to_string(i));
                }
                continue;
            }
            if (segments_touch(a, b, c, d, kEpsGeom)) {
                throw DegenerateGeometry("ring self-intersects between edges " + std::to_string(i) + " and " +
                                         std::to_string(j));
            }
        }
    }
    if (std::abs(signed_area(ring)) <= kEpsArea) throw DegenerateGeometry("ring has zero area");
}

void validate_region(const Region& region) {
    validate_ring(region.outer);
    for (const Ring& h : region.holes) {
        validate_ring(h);
        if (rings_cross(region.outer, h)) throw DegenerateGeometry("hole crosses the outer ring");
    }
    if (area(region) <= kEpsArea) throw DegenerateGeometry("region has no positive area");
}

bool rings_cross(std::span<const Point2> a, std::span<const Point2> b, double eps) {
    const BoundingBox ba = bounding_box(a);
    const BoundingBox bb = bounding_box(b);
    if (!ba.overlaps(bb, eps)) return false;
    bool crossed = false;
    for_each_edge(a, [&](Point2 p, Point2 q) {
        if (crossed) return;
        for_each_edge(b, [&](Point2 r, Point2 s) {
            if (!crossed && segments_cross(p, q, r, s, eps)) crossed = true;
        });
    });
    return crossed;
}

double shared_boundary_length(const Region& a, const Region& b, double eps) {
    if (!bounding_box(a).overlaps(bounding_box(b), eps)) return 0.0;
    double total = 0.0;
    for_each_ring(a, [&](std::span<const Point2> ra) {
        for_each_edge(ra, [&](Point2 p, Point2 q) {
            const double len = distance(p, q);
            if (len <= eps) return;
            const Point2 dir = (1.0 / len) * (q - p);
            for_each_ring(b, [&](std::span<const Point2> rb) {
                for_each_edge(rb, [&](Point2 r, Point2 s) {
                    if (std::abs(cross(dir, r - p)) > eps || std::abs(cross(dir, s - p)) > eps) return;
                    const double t0 = dot(r - p, dir);
                    const double t1 = dot(s - p, dir);
                    const double lo = std::max(0.0, std::min(t0, t1));
                    const double hi = std::min(len, std::max(t0, t1));
                    if (hi - lo > eps) total += hi - lo;
                });
            });
        });
    });
    return total;
}

std::optional<Point2> ray_first_hit(Point2 origin, Point2 direction, const Region& region) {
    const double dlen = norm(direction);
    if (dlen <= 0.0) throw PreconditionViolated("ray direction is zero");
    const Point2 d = (1.0 / dlen) * direction;
    if (distance_to_boundary(origin, region) > kEpsGeom) {
        throw PreconditionViolated("ray origin is not on the region boundary");
    }

    double best_t = std::numeric_limits<double>::infinity();
    auto consider = [&](double t) {
        if (t > kEpsGeom && t < best_t) best_t = t;
    };
    for_each_ring(region, [&](std::span<const Point2> ring) {
        for_each_edge(ring, [&](Point2 a, Point2 b) {
            const Point2 e = b - a;
            const double elen = norm(e);
            const double denom = cross(d, e);
            if (std::abs(denom) <= 1e-12 * elen) {
                // Parallel: only a collinear edge can be hit, at its endpoints.
                if (std::abs(cross(d, a - origin)) <= kEpsGeom) {
                    consider(dot(a - origin, d));
                    consider(dot(b - origin, d));
                }
                return;
            }
            const double t = cross(a - origin, e) / denom;
            const double u = cross(a - origin, d) / denom;
            const double tol = kEpsGeom / elen;
            if (u >= -tol && u <= 1.0 + tol) consider(t);
        });
    });
    if (!std::isfinite(best_t)) return std::nullopt;
    const Point2 mid = origin + (0.5 * best_t) * d;
    if (locate(mid, region) != Location::Inside) return std::nullopt;
    return origin + best_t * d;
}

Ring convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    Ring hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i - 1] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    return hull;
}

OrientedRect min_area_enclosing_rectangle(const Region& region) {
    const Ring hull = convex_hull(region.outer);
    if (hull.size() < 3 || std::abs(signed_area(hull)) <= kEpsArea) {
        throw DegenerateGeometry("cannot enclose a degenerate region");
    }
    OrientedRect best;
    double best_area = std::numeric_limits<double>::infinity();
    const std::size_t n = hull.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 e = hull[(i + 1) % n] - hull[i];
        double phi = rad_to_deg(std::atan2(e.y, e.x));
        phi = std::fmod(phi + 360.0, 180.0);
        const double r = deg_to_rad(phi);
        const Point2 u{std::cos(r), std::sin(r)};
        const Point2 v{-u.y, u.x};
        double umin = std::numeric_limits<double>::infinity(), umax = -umin;
        double vmin = umin, vmax = -umin;
        for (const Point2& p : hull) {
            umin = std::min(umin, dot(p, u));
            umax = std::max(umax, dot(p, u));
            vmin = std::min(vmin, dot(p, v));
            vmax = std::max(vmax, dot(p, v));
        }
        const double a = (umax - umin) * (vmax - vmin);
        if (a < best_area - 1e-12 * std::max(1.0, a)) {
            best_area = a;
            const Point2 corner = umin * u + vmin * v;
            best = {umax - umin, vmax - vmin, corner.x, corner.y, phi};
        }
    }
    return best;
}

Ring rect_ring(const OrientedRect& rect) {
    const double r = deg_to_rad(rect.theta);
    const Point2 u{std::cos(r), std::sin(r)};
    const Point2 v{-u.y, u.x};
    const Point2 p{rect.tx, rect.ty};
    return {p, p + rect.w * u, p + rect.w * u + rect.h * v, p + rect.h * v};
}

}  // namespace layerseg
