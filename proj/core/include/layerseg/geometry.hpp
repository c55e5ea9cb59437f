#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "layerseg/errors.hpp"

namespace layerseg {

// Tolerances. Layer coordinates are millimetres.
inline constexpr double kEpsGeom = 1e-6;   // mm
inline constexpr double kEpsArea = 1e-6;   // mm^2
inline constexpr double kEpsAngle = 0.1;   // degrees

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend bool operator==(const Point2&, const Point2&) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

// Closed implicitly: the last vertex connects back to the first.
using Ring = std::vector<Point2>;

struct Region {
    Ring outer;               // counter-clockwise
    std::vector<Ring> holes;  // clockwise, strictly inside outer
};

struct Segment2 {
    Point2 a;
    Point2 b;

    double length() const { return distance(a, b); }
};

struct BoundingBox {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    bool overlaps(const BoundingBox& o, double eps = 0.0) const {
        return min_x <= o.max_x + eps && o.min_x <= max_x + eps && min_y <= o.max_y + eps &&
               o.min_y <= max_y + eps;
    }
};

enum class TurnSide { Convex, Reflex, Straight };

struct Turn {
    double magnitude = 0.0;  // degrees, [0, 180]
    TurnSide side = TurnSide::Straight;
};

// Rotated rectangle: corner at (tx, ty), side of length w along angle theta
// (degrees), side of length h along theta + 90.
struct OrientedRect {
    double w = 0.0;
    double h = 0.0;
    double tx = 0.0;
    double ty = 0.0;
    double theta = 0.0;

    double area() const { return w * h; }
};

// --- scalar kernels -------------------------------------------------------

double signed_area(std::span<const Point2> ring);
double area(const Region& region);
Point2 centroid(const Region& region);

// Deviation from straight continuation at p; side is relative to the
// traversal direction (left turn = convex for a CCW ring).
Turn turning_angle(Point2 prev, Point2 p, Point2 next);

BoundingBox bounding_box(std::span<const Point2> pts);
BoundingBox bounding_box(const Region& region);

double point_segment_distance(Point2 p, Point2 a, Point2 b);
double distance_to_boundary(Point2 p, const Region& region);

enum class Location { Outside, Boundary, Inside };

Location locate(Point2 p, std::span<const Point2> ring, double eps = kEpsGeom);
Location locate(Point2 p, const Region& region, double eps = kEpsGeom);

// A point strictly inside the region (away from every ring).
Point2 interior_point(const Region& region);

// --- ring hygiene ---------------------------------------------------------

// Drops consecutive duplicates (closer than eps) and vertices whose turning
// magnitude is below angle_eps. Throws DegenerateGeometry if fewer than three
// vertices survive.
Ring simplify_ring(const Ring& ring, double eps = kEpsGeom, double angle_eps = kEpsAngle);
Region simplify_region(const Region& region);

// Outer CCW, holes CW.
Region normalized(Region region);
Ring reversed(Ring ring);

// Validates Ring invariants (size, no coincident neighbours, simple,
// non-zero area). Throws DegenerateGeometry.
void validate_ring(std::span<const Point2> ring);
void validate_region(const Region& region);

bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d, double eps = kEpsGeom);
bool rings_cross(std::span<const Point2> a, std::span<const Point2> b, double eps = kEpsGeom);

// Edge-adjacency: two regions share a boundary stretch longer than eps.
double shared_boundary_length(const Region& a, const Region& b, double eps = kEpsGeom);

// --- boolean operations ---------------------------------------------------

double region_intersection_area(const Region& a, const Region& b);
double intersection_area(const Region& a, std::span<const Region> b);
std::vector<Region> region_union(std::span<const Region> parts);
std::vector<Region> region_difference(const Region& a, std::span<const Region> b);

// Area of subject inside a convex CCW clip window (Sutherland-Hodgman per
// ring; signed ring areas make hole handling exact).
double convex_clip_area(std::span<const Point2> convex_ccw, const Region& subject);

// --- ray casting and partition --------------------------------------------

// Nearest boundary point beyond origin along direction; nullopt when the ray
// leaves the region straight away. Origin must lie on the boundary.
std::optional<Point2> ray_first_hit(Point2 origin, Point2 direction, const Region& region);

// Faces of the arrangement formed by the region boundary and the cuts that
// lie inside the region.
std::vector<Region> partition_by_cuts(const Region& region, std::span<const Segment2> cuts);

// --- enclosing rectangle --------------------------------------------------

Ring convex_hull(std::vector<Point2> pts);
OrientedRect min_area_enclosing_rectangle(const Region& region);
Ring rect_ring(const OrientedRect& rect);

}  // namespace layerseg
