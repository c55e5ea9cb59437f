#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "layerseg/errors.hpp"
#include "layerseg/layer.hpp"

using namespace layerseg;
using namespace layerseg::testing;

namespace {

std::vector<LoopRole> roles(const Layer& layer) {
    std::vector<LoopRole> out;
    for (const Loop& l : layer.loops) out.push_back(*l.role);
    return out;
}

}  // namespace

TEST(ClassifyLoops, DepthParity) {
    EXPECT_EQ(roles(classify_loops(layer_of({box(0, 0, 1, 1).outer}))), std::vector<LoopRole>{LoopRole::Material});

    const Layer nested = layer_of({box(0, 0, 10, 10).outer, box(2, 2, 8, 8).outer});
    EXPECT_EQ(roles(classify_loops(nested)), (std::vector<LoopRole>{LoopRole::Material, LoopRole::Hole}));

    const Layer island = layer_of({box(0, 0, 10, 10).outer, box(2, 2, 8, 8).outer, box(4, 4, 6, 6).outer});
    EXPECT_EQ(roles(classify_loops(island)),
              (std::vector<LoopRole>{LoopRole::Material, LoopRole::Hole, LoopRole::Material}));
}

TEST(ClassifyLoops, DeclaredRolesHonoured) {
    Layer layer = layer_of({box(0, 0, 10, 10).outer, box(20, 0, 30, 10).outer});
    layer.loops[0].role = LoopRole::Material;
    layer.loops[1].role = LoopRole::Material;
    EXPECT_EQ(roles(classify_loops(layer)), (std::vector<LoopRole>{LoopRole::Material, LoopRole::Material}));
}

TEST(ClassifyLoops, MixedTaggingThrows) {
    Layer layer = layer_of({box(0, 0, 10, 10).outer, box(2, 2, 8, 8).outer});
    layer.loops[0].role = LoopRole::Material;
    EXPECT_THROW(classify_loops(layer), InvalidLayer);
}

TEST(ClassifyLoops, CrossingLoopsThrow) {
    const Layer layer = layer_of({box(0, 0, 10, 10).outer, box(5, 5, 15, 15).outer});
    EXPECT_THROW(classify_loops(layer), InvalidLayer);
}

TEST(ClassifyLoops, SelfIntersectingLoopThrows) {
    const Layer layer = layer_of({{{0, 0}, {1, 1}, {1, 0}, {0, 1}}});
    EXPECT_THROW(classify_loops(layer), InvalidLayer);
}

TEST(ClassifyLoops, NoMaterialThrows) {
    Layer layer = layer_of({box(0, 0, 10, 10).outer});
    layer.loops[0].role = LoopRole::Hole;
    EXPECT_THROW(classify_loops(layer), InvalidLayer);
}

TEST(ClassifyLoops, IdempotentAndOrderInvariant) {
    const std::vector<Ring> rings{box(0, 0, 10, 10).outer, box(2, 2, 8, 8).outer, box(4, 4, 6, 6).outer,
                                  box(20, 0, 30, 10).outer, box(22, 2, 24, 4).outer};
    const Layer once = classify_loops(layer_of(rings));
    const Layer twice = classify_loops(once);
    EXPECT_EQ(roles(once), roles(twice));

    std::vector<std::size_t> perm(rings.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(perm.begin(), perm.end(), gen);
        std::vector<Ring> shuffled;
        for (std::size_t i : perm) shuffled.push_back(rings[i]);
        const Layer c = classify_loops(layer_of(shuffled));
        for (std::size_t k = 0; k < perm.size(); ++k) EXPECT_EQ(*c.loops[k].role, *once.loops[perm[k]].role);
    }
}

TEST(BuildDepositionRegion, Examples) {
    DepositionRegion r = region_of(layer_of({box(0, 0, 20, 20).outer, box(8, 8, 12, 12).outer}));
    ASSERT_EQ(r.components.size(), 1u);
    EXPECT_NEAR(r.area(), 384.0, 1e-9);

    r = region_of(layer_of({l_shape_ring()}));
    ASSERT_EQ(r.components.size(), 1u);
    EXPECT_NEAR(r.area(), 300.0, 1e-9);

    r = region_of(layer_of({box(0, 0, 10, 10).outer, box(20, 0, 30, 10).outer}));
    EXPECT_EQ(r.components.size(), 2u);
    EXPECT_NEAR(r.area(), 200.0, 1e-9);
}

TEST(BuildDepositionRegion, IslandIsSeparateComponent) {
    const DepositionRegion r =
        region_of(layer_of({box(0, 0, 10, 10).outer, box(2, 2, 8, 8).outer, box(4, 4, 6, 6).outer}));
    EXPECT_EQ(r.components.size(), 2u);
    EXPECT_NEAR(r.area(), 100.0 - 36.0 + 4.0, 1e-9);
    EXPECT_EQ(material_outers(r).size(), 1u);
    double holes = 0.0;
    for (const Region& h : hole_areas(r)) holes += area(h);
    EXPECT_NEAR(holes, 32.0, 1e-9);
}

TEST(BuildDepositionRegion, OrphanHoleThrows) {
    Layer layer = layer_of({box(0, 0, 10, 10).outer, box(20, 0, 30, 10).outer});
    layer.loops[0].role = LoopRole::Material;
    layer.loops[1].role = LoopRole::Hole;
    EXPECT_THROW(build_deposition_region(classify_loops(layer)), InvalidLayer);
}

TEST(BuildDepositionRegion, NormalizesOrientation) {
    const DepositionRegion r = region_of(layer_of({reversed(box(0, 0, 20, 20).outer), box(8, 8, 12, 12).outer}));
    ASSERT_EQ(r.components.size(), 1u);
    EXPECT_GT(signed_area(r.components[0].outer), 0.0);
    ASSERT_EQ(r.components[0].holes.size(), 1u);
    EXPECT_LT(signed_area(r.components[0].holes[0]), 0.0);
}

TEST(BuildDepositionRegion, AreaInvariantUnderRotationAndFlip) {
    const Layer base = load_layer("benchmark.json");
    const double expected = region_of(base).area();
    for (std::size_t shift = 0; shift < 5; ++shift) {
        for (bool flip : {false, true}) {
            Layer l = base;
            for (Loop& loop : l.loops) {
                std::rotate(loop.ring.begin(), loop.ring.begin() + static_cast<long>(shift % loop.ring.size()),
                            loop.ring.end());
                if (flip) loop.ring = reversed(loop.ring);
            }
            EXPECT_NEAR(region_of(l).area(), expected, 1e-9 * expected);
        }
    }
}
