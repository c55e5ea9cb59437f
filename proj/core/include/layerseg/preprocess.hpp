#pragma once

#include <vector>

#include "layerseg/geometry.hpp"
#include "layerseg/layer.hpp"

namespace layerseg {

struct PreprocessConfig {
    double alpha_max = 30.0;  // degrees

    void validate() const;
};

struct SharpTurn {
    Point2 vertex;
    std::size_t component = 0;  // index into DepositionRegion::components
    std::size_t ring = 0;       // 0 = outer, k = hole k-1
    double magnitude = 0.0;
    TurnSide side = TurnSide::Convex;
    Segment2 edge_in;   // previous vertex -> vertex
    Segment2 edge_out;  // vertex -> next vertex
};

// Atomic face of the edge-extension partition.
struct BasicElement {
    int id = 0;
    Region region;
    double area = 0.0;
};

// Vertices of every ring (after collinear simplification) whose turning
// magnitude exceeds alpha_max.
std::vector<SharpTurn> find_sharp_turns(const DepositionRegion& region, const PreprocessConfig& cfg);

// Number of sharp turns on the boundary of one region, all rings counted.
int count_sharp_turns(const Region& region, double alpha_max);

// Extends both incident edges at every sharp turn through the vertex up to
// the first boundary hit. Rays that leave the region at once produce nothing.
std::vector<Segment2> generate_cuts(const DepositionRegion& region, const std::vector<SharpTurn>& turns);

// Basic elements ordered by centroid (x, then y) and numbered from 0.
std::vector<BasicElement> decompose(const DepositionRegion& region, const PreprocessConfig& cfg);

// Smallest element area kept as its own element; smaller faces are merged
// into their largest edge-adjacent neighbour.
inline constexpr double kSliverArea = 1e-3;

}  // namespace layerseg
