#pragma once

#include <optional>
#include <string>
#include <vector>

#include "layerseg/geometry.hpp"

namespace layerseg {

enum class LoopRole { Material, Hole };

struct Loop {
    Ring ring;
    std::optional<LoopRole> role;
};

struct LayerMeta {
    std::optional<long long> index;
    std::optional<double> z;
};

// One planar slice: closed loops in millimetres.
struct Layer {
    std::vector<Loop> loops;
    LayerMeta meta;
};

// The area to deposit: material outers minus the holes directly inside them.
struct DepositionRegion {
    std::vector<Region> components;

    double area() const;
};

// Resolves every loop role. Declared roles are kept when all loops carry one;
// otherwise roles come from containment depth (even = material, odd = hole).
// Throws InvalidLayer on crossing loops or partial tagging.
Layer classify_loops(const Layer& layer);

// Pairs every material loop with the holes immediately nested in it.
// Orientation is normalized (outer CCW, holes CW). Requires resolved roles.
DepositionRegion build_deposition_region(const Layer& layer);

// Union of material outers (holes not removed), and the hole area inside it.
std::vector<Region> material_outers(const DepositionRegion& region);
std::vector<Region> hole_areas(const DepositionRegion& region);

}  // namespace layerseg
