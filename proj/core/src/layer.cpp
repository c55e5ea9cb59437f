#include "layerseg/layer.hpp"

#include <algorithm>
#include <string>

namespace layerseg {

namespace {

// Whether ring a lies inside ring b. Loops never cross, so the first vertex
// of a that is not on b's boundary decides.
bool ring_inside(const Ring& a, const Ring& b) {
    if (std::abs(signed_area(a)) >= std::abs(signed_area(b))) return false;
    for (const Point2& p : a) {
        const Location l = locate(p, b);
        if (l != Location::Boundary) return l == Location::Inside;
    }
    // Every vertex on b's boundary: decide with a point strictly inside a.
    return locate(interior_point(Region{a, {}}), b) == Location::Inside;
}

std::string loop_label(std::size_t i) { return "loop " + std::to_string(i); }

// containers[i] lists the loops enclosing loop i.
std::vector<std::vector<std::size_t>> containment(const Layer& layer) {
    const std::size_t n = layer.loops.size();
    for (std::size_t i = 0; i < n; ++i) {
        try {
            validate_ring(layer.loops[i].ring);
        } catch (const DegenerateGeometry& e) {
            throw InvalidLayer(loop_label(i) + ": " + e.what());
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rings_cross(layer.loops[i].ring, layer.loops[j].ring)) {
                throw InvalidLayer(loop_label(i) + " crosses " + loop_label(j));
            }
        }
    }
    std::vector<std::vector<std::size_t>> containers(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && ring_inside(layer.loops[i].ring, layer.loops[j].ring)) containers[i].push_back(j);
        }
    }
    return containers;
}

}  // namespace

double DepositionRegion::area() const {
    double total = 0.0;
    for (const Region& r : components) total += layerseg::area(r);
    return total;
}

Layer classify_loops(const Layer& layer) {
    if (layer.loops.empty()) throw InvalidLayer("layer has no loops");
    const auto tagged = std::count_if(layer.loops.begin(), layer.loops.end(), [](const Loop& l) { return l.role.has_value(); });
    if (tagged != 0 && static_cast<std::size_t>(tagged) != layer.loops.size()) {
        throw InvalidLayer("loop roles must be declared on all loops or on none");
    }
    const auto containers = containment(layer);
    Layer out = layer;
    if (tagged == 0) {
        for (std::size_t i = 0; i < out.loops.size(); ++i) {
            out.loops[i].role = containers[i].size() % 2 == 0 ? LoopRole::Material : LoopRole::Hole;
        }
    }
    const bool any_material = std::any_of(out.loops.begin(), out.loops.end(),
                                          [](const Loop& l) { return l.role == LoopRole::Material; });
    if (!any_material) throw InvalidLayer("layer has no material loop");
    return out;
}

DepositionRegion build_deposition_region(const Layer& layer) {
    const std::size_t n = layer.loops.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!layer.loops[i].role) throw InvalidLayer(loop_label(i) + " has no resolved role");
    }
    const auto containers = containment(layer);

    // Immediate parent: the enclosing loop with the most enclosers itself.
    std::vector<long> parent(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best_depth = 0;
        for (std::size_t j : containers[i]) {
            if (parent[i] < 0 || containers[j].size() > best_depth) {
                parent[i] = static_cast<long>(j);
                best_depth = containers[j].size();
            }
        }
    }

    DepositionRegion out;
    std::vector<long> component_of(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (layer.loops[i].role != LoopRole::Material) continue;
        if (parent[i] >= 0 && layer.loops[static_cast<std::size_t>(parent[i])].role == LoopRole::Material) {
            throw InvalidLayer(loop_label(i) + " is a material loop directly inside another material loop");
        }
        component_of[i] = static_cast<long>(out.components.size());
        Region r;
        r.outer = layer.loops[i].ring;
        out.components.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (layer.loops[i].role != LoopRole::Hole) continue;
        const long p = parent[i];
        if (p < 0 || layer.loops[static_cast<std::size_t>(p)].role != LoopRole::Material) {
            throw InvalidLayer(loop_label(i) + " is a hole that is not inside a material loop");
        }
        out.components[static_cast<std::size_t>(component_of[static_cast<std::size_t>(p)])].holes.push_back(layer.loops[i].ring);
    }
    for (Region& r : out.components) r = normalized(std::move(r));
    if (out.area() <= kEpsArea) throw InvalidLayer("deposition area is empty");
    return out;
}

namespace {

// Loops never cross, so the first vertex off the container's boundary decides.
bool outer_inside(const Region& inner, const Ring& container) {
    for (const Point2& p : inner.outer) {
        const Location loc = locate(p, container);
        if (loc != Location::Boundary) return loc == Location::Inside;
    }
    return false;
}

}  // namespace

std::vector<Region> material_outers(const DepositionRegion& region) {
    // Islands sit inside another component's outer ring and add nothing.
    std::vector<Region> out;
    for (const Region& r : region.components) {
        const bool nested = std::any_of(region.components.begin(), region.components.end(), [&](const Region& o) {
            return &o != &r && outer_inside(r, o.outer);
        });
        if (!nested) out.push_back(Region{r.outer, {}});
    }
    return out;
}

std::vector<Region> hole_areas(const DepositionRegion& region) {
    std::vector<Region> out;
    for (const Region& r : region.components) {
        for (const Ring& h : r.holes) {
            std::vector<Region> islands;
            for (const Region& o : region.components) {
                if (&o != &r && outer_inside(o, h)) islands.push_back(Region{o.outer, {}});
            }
            const Region hole = normalized(Region{h, {}});
            if (islands.empty()) {
                out.push_back(hole);
            } else {
                for (Region& piece : region_difference(hole, islands)) out.push_back(normalized(std::move(piece)));
            }
        }
    }
    return out;
}

}  // namespace layerseg
