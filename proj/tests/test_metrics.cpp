#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "bepeval/metrics.hpp"
#include "bepeval/scenarios.hpp"
#include "oracles.hpp"

using bepeval::BBox;
using bepeval::MetricSpec;

namespace {

constexpr double kTol = 1e-9;

TEST(MetricSpecTest, PresetsExpandExactly) {
    EXPECT_EQ(MetricSpec::iou().tversky_weights(), std::make_pair(1.0, 1.0));
    EXPECT_EQ(MetricSpec::dice().tversky_weights(), std::make_pair(0.5, 0.5));
    EXPECT_EQ(MetricSpec::iog().tversky_weights(), std::make_pair(1.0, 0.0));
    EXPECT_THROW(MetricSpec::bep1().tversky_weights(), std::logic_error);
    EXPECT_THROW(MetricSpec::tversky(-1, 0), std::invalid_argument);
    EXPECT_THROW(MetricSpec(bepeval::MetricKind::Tversky), std::invalid_argument);
}

TEST(MetricSpecTest, ParseNames) {
    for (const char* name : {"iou", "dice", "iog", "bep1", "bep2", "x1", "x2", "y1", "y2"}) {
        EXPECT_EQ(bepeval::parse_metric(name).name(), name);
    }
    EXPECT_EQ(bepeval::parse_metric("IOU"), MetricSpec::iou());
    EXPECT_EQ(bepeval::parse_metric("jaccard"), MetricSpec::iou());
    EXPECT_EQ(bepeval::parse_metric("tversky:0.3,0.7"), MetricSpec::tversky(0.3, 0.7));
    EXPECT_EQ(MetricSpec::tversky(0.3, 0.7).name(), "tversky:0.3,0.7");
    EXPECT_THROW(bepeval::parse_metric("giou"), std::invalid_argument);
    EXPECT_THROW(bepeval::parse_metric("tversky:0.3"), std::invalid_argument);

    const auto list = bepeval::parse_metric_list("iou, bep2");
    ASSERT_EQ(list.size(), 2u);
    EXPECT_EQ(list[1], MetricSpec::bep2());
    const auto semi = bepeval::parse_metric_list("tversky:1,0;dice");
    ASSERT_EQ(semi.size(), 2u);
    EXPECT_EQ(semi[0], MetricSpec::tversky(1, 0));
    EXPECT_THROW(bepeval::parse_metric_list(""), std::invalid_argument);
}

TEST(Tversky, Examples) {
    const BBox gt(0, 0, 10, 10);
    // 50 / 150 and 50 / 100 from the raster counts (a = b = c = 50).
    EXPECT_NEAR(bepeval::tversky(gt, BBox(5, 0, 10, 10), 1, 1), 1.0 / 3.0, kTol);
    EXPECT_NEAR(bepeval::tversky(gt, BBox(5, 0, 10, 10), 0.5, 0.5), 0.5, kTol);
    EXPECT_NEAR(bepeval::tversky(gt, BBox(-5, 0, 20, 10), 1, 0), 1.0, kTol);
    for (double a : {0.0, 0.3, 1.0, 4.0}) {
        for (double b : {0.0, 0.5, 2.0}) EXPECT_EQ(bepeval::tversky(gt, gt, a, b), 1.0);
    }
    EXPECT_THROW(bepeval::tversky(gt, gt, -0.1, 1), std::invalid_argument);
}

TEST(Tversky, ZeroOverlapIsZeroEvenForZeroWeights) {
    const BBox gt(0, 0, 10, 10), far(50, 50, 5, 5);
    EXPECT_EQ(bepeval::tversky(gt, far, 0, 0), 0.0);
    EXPECT_EQ(bepeval::tversky(gt, far, 1, 0), 0.0);
    EXPECT_EQ(bepeval::tversky(gt, BBox(10, 0, 5, 5), 1, 1), 0.0);  // touching edges
}

TEST(TverskyMask, Examples) {
    const auto g = bepeval::BinaryMask::rasterize(BBox(0, 0, 10, 10), 32, 32);
    const auto d = bepeval::BinaryMask::rasterize(BBox(5, 0, 10, 10), 32, 32);
    EXPECT_EQ(g.count(), 100u);
    EXPECT_EQ(bepeval::tversky_mask(g, g, 1, 1), 1.0);
    EXPECT_NEAR(bepeval::tversky_mask(g, d, 1, 1), 1.0 / 3.0, 1e-12);
    const auto far = bepeval::BinaryMask::rasterize(BBox(20, 20, 5, 5), 32, 32);
    EXPECT_EQ(bepeval::tversky_mask(g, far, 1, 1), 0.0);
}

TEST(TverskyMask, Errors) {
    const bepeval::BinaryMask a(4, 4), b(4, 5);
    EXPECT_THROW(bepeval::tversky_mask(a, b, 1, 1), std::invalid_argument);
    auto det = bepeval::BinaryMask(4, 4);
    det.set(1, 1);
    EXPECT_THROW(bepeval::tversky_mask(a, det, 1, 1), std::invalid_argument);  // empty GT
    EXPECT_THROW(bepeval::BinaryMask(3, 3, std::vector<bool>(8)), std::invalid_argument);
}

TEST(TverskyMask, IrregularShapes) {
    // An L-shaped GT against a bar; counts done by hand: |GT| = 7, |DO| = 4, overlap 3.
    bepeval::BinaryMask gt(5, 5), det(5, 5);
    for (int r = 0; r < 4; ++r) gt.set(0, r);
    for (int c = 1; c < 4; ++c) gt.set(c, 3);
    for (int c = 1; c < 5; ++c) det.set(c, 3);
    EXPECT_NEAR(bepeval::tversky_mask(gt, det, 1, 1), 3.0 / 8.0, 1e-12);
    EXPECT_NEAR(bepeval::tversky_mask(gt, det, 1, 0), 3.0 / 7.0, 1e-12);
}

TEST(Bep1, Examples) {
    const BBox gt(0, 0, 10, 10);
    auto s = bepeval::bep1(gt, BBox(5, 0, 10, 10));
    EXPECT_NEAR(s.x, 1.0 / 3.0, kTol);
    EXPECT_NEAR(s.y, 1.0, kTol);
    EXPECT_NEAR(s.score, 1.0 / 3.0, kTol);

    s = bepeval::bep1(gt, BBox(0, 0, 10, 4));  // gap 6 > min height 4: clamps
    EXPECT_NEAR(s.x, 1.0, kTol);
    EXPECT_EQ(s.y, 0.0);
    EXPECT_EQ(s.score, 0.0);

    s = bepeval::bep1(gt, gt);
    EXPECT_EQ(s.score, 1.0);
    EXPECT_EQ(s.x, 1.0);
    EXPECT_EQ(s.y, 1.0);

    s = bepeval::bep1(gt, BBox(-5, 0, 20, 10));
    EXPECT_NEAR(s.score, 0.5, kTol);
    EXPECT_NEAR(s.x, 0.5, kTol);
    EXPECT_NEAR(s.y, 1.0, kTol);
}

TEST(Bep2, Examples) {
    const BBox gt(0, 0, 10, 10);
    auto s = bepeval::bep2(gt, BBox(-5, 0, 20, 10));
    EXPECT_NEAR(s.score, 1.0, kTol);
    EXPECT_NEAR(s.x, 1.0, kTol);
    EXPECT_NEAR(s.y, 1.0, kTol);

    s = bepeval::bep2(gt, BBox(0, 2, 10, 10));
    EXPECT_NEAR(s.score, 0.8, kTol);
    EXPECT_NEAR(s.x, 1.0, kTol);
    EXPECT_NEAR(s.y, 0.8, kTol);

    // Gap larger than the GT height clamps Y2 at zero.
    s = bepeval::bep2(gt, BBox(0, 15, 10, 10));
    EXPECT_EQ(s.y, 0.0);
}

TEST(Score, Dispatch) {
    const BBox gt(0, 0, 10, 10);
    EXPECT_EQ(bepeval::score(MetricSpec::iou(), gt, gt), 1.0);
    EXPECT_NEAR(bepeval::score(MetricSpec::y2(), gt, BBox(0, 2, 10, 10)), 0.8, kTol);
    EXPECT_EQ(bepeval::score(MetricSpec::x2(), gt, BBox(40, 0, 10, 10)), 0.0);
    EXPECT_EQ(bepeval::score(MetricSpec::x1(), gt, BBox(40, 0, 10, 10)), 0.0);
    EXPECT_NEAR(bepeval::score(MetricSpec::tversky(0.5, 0.5), gt, BBox(5, 0, 10, 10)),
                bepeval::score(MetricSpec::dice(), gt, BBox(5, 0, 10, 10)), 0.0);

    const auto comp = bepeval::score_components(MetricSpec::iou(), gt, BBox(5, 0, 10, 10));
    EXPECT_EQ(comp.score, comp.x);
    EXPECT_EQ(comp.score, comp.y);
}

// The laws hold for every valid pair, so random pairs (biased toward
// overlap) stand in for exhaustive checking.
TEST(MetricLaws, OrderingRangeSymmetry) {
    oracle::BoxGen gen(21);
    for (int i = 0; i < 5000; ++i) {
        const BBox g = gen.real_box();
        const BBox d = gen.coin() ? gen.near(g) : gen.real_box();
        const double iou = bepeval::score(MetricSpec::iou(), g, d);
        const double dice = bepeval::score(MetricSpec::dice(), g, d);
        const double iog = bepeval::score(MetricSpec::iog(), g, d);
        const auto b1 = bepeval::bep1(g, d);
        const auto b2 = bepeval::bep2(g, d);
        for (double v : {iou, dice, iog, b1.score, b1.x, b1.y, b2.score, b2.x, b2.y}) {
            ASSERT_GE(v, 0.0);
            ASSERT_LE(v, 1.0);
        }
        ASSERT_LE(iou, dice + kTol);
        ASSERT_LE(iou, iog + kTol);
        ASSERT_LE(b1.x, b2.x + kTol);
        ASSERT_LE(b1.y, b2.y + kTol);
        ASSERT_LE(b1.score, b2.score + kTol);

        const double a = gen.uniform(0, 3), b = gen.uniform(0, 3);
        ASSERT_NEAR(bepeval::tversky(g, d, a, b), bepeval::tversky(d, g, b, a), kTol);
        ASSERT_NEAR(iou, bepeval::score(MetricSpec::iou(), d, g), kTol);
        ASSERT_NEAR(dice, bepeval::score(MetricSpec::dice(), d, g), kTol);
        ASSERT_NEAR(b1.score, bepeval::bep1(d, g).score, kTol);
    }
}

TEST(MetricLaws, IogAndBep2AreNotSymmetric) {
    const BBox gt(0, 0, 10, 10), wide(-5, 0, 20, 10);
    EXPECT_NE(bepeval::score(MetricSpec::iog(), gt, wide), bepeval::score(MetricSpec::iog(), wide, gt));
    EXPECT_NE(bepeval::bep2(gt, wide).score, bepeval::bep2(wide, gt).score);
}

TEST(MetricLaws, HorizontallyDisjointGivesZeroBep) {
    oracle::BoxGen gen(22);
    for (int i = 0; i < 1000; ++i) {
        const BBox g = gen.real_box();
        const BBox d(g.right() + gen.uniform(0, 50), gen.uniform(-100, 400), gen.uniform(1, 100), gen.uniform(1, 100));
        ASSERT_EQ(bepeval::bep1(g, d).score, 0.0);
        ASSERT_EQ(bepeval::bep2(g, d).score, 0.0);
    }
}

TEST(MetricLaws, IntegerBoxesMatchMaskRasterization) {
    oracle::BoxGen gen(23);
    for (int i = 0; i < 200; ++i) {
        const auto g = gen.int_box(48), d = gen.int_box(48);
        const auto gm = bepeval::BinaryMask::rasterize(g.to_bbox(), 48, 48);
        const auto dm = bepeval::BinaryMask::rasterize(d.to_bbox(), 48, 48);
        for (auto [a, b] : {std::pair{1.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}, {0.2, 1.7}}) {
            const double box = bepeval::tversky(g.to_bbox(), d.to_bbox(), a, b);
            ASSERT_NEAR(box, bepeval::tversky_mask(gm, dm, a, b), 1e-12);
            ASSERT_NEAR(box, oracle::tversky(oracle::count_pixels(g, d), a, b), 1e-12);
        }
    }
}

TEST(MetricLaws, BepSeparatesEqualAreaDetections) {
    const auto f = bepeval::equal_area_counterexample();
    const auto p = bepeval::decompose_areas(f.gt, f.preferred);
    const auto q = bepeval::decompose_areas(f.gt, f.deficient);
    EXPECT_EQ(p.a, q.a);
    EXPECT_EQ(p.b, q.b);
    EXPECT_EQ(p.c, q.c);
    EXPECT_EQ(bepeval::score(MetricSpec::iou(), f.gt, f.preferred), bepeval::score(MetricSpec::iou(), f.gt, f.deficient));
    EXPECT_NEAR(bepeval::bep1(f.gt, f.preferred).score, 1.0, kTol);
    EXPECT_NEAR(bepeval::bep1(f.gt, f.deficient).score, 0.8, kTol);
}

}  // namespace
