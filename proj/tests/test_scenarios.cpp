#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <stdexcept>

#include "bepeval/metrics.hpp"
#include "bepeval/scenarios.hpp"

using bepeval::BBox;
using bepeval::MetricSpec;
using bepeval::TpCriterion;
using bepeval::Verdict;

namespace {

const bepeval::ScenarioFixture& find(const std::vector<bepeval::ScenarioFixture>& all, const std::string& name) {
    for (const auto& f : all) {
        if (f.name == name) return f;
    }
    throw std::out_of_range(name);
}

TEST(Scenarios, TenArchetypesWithReferenceVerdicts) {
    const auto all = bepeval::builtin_scenarios();
    ASSERT_EQ(all.size(), 10u);
    const char* reference = "TTTFTTFFFF";
    for (std::size_t i = 0; i < all.size(); ++i) {
        EXPECT_EQ(all[i].gts.size(), 1u);
        EXPECT_EQ(all[i].dets.size(), 1u);
        EXPECT_EQ(all[i].expected.at(bepeval::kReferenceKey), reference[i] == 'T' ? Verdict::TP : Verdict::FP)
            << all[i].name;
    }
}

TEST(Scenarios, GeometryOfNamedArchetypes) {
    const auto all = bepeval::builtin_scenarios();
    const auto& exact = find(all, "exact");
    EXPECT_EQ(exact.gts[0], exact.dets[0]);

    const auto& sup = find(all, "superstructure-only");
    EXPECT_EQ(sup.dets[0].y(), sup.gts[0].y());
    EXPECT_NEAR(sup.dets[0].h(), 0.4 * sup.gts[0].h(), 1e-12);
    EXPECT_NEAR(bepeval::bep2(sup.gts[0], sup.dets[0]).y, 0.4, 1e-9);

    const auto& wake = find(all, "wake-horizontal");
    EXPECT_NEAR(wake.dets[0].w(), 1.6 * wake.gts[0].w(), 1e-12);
    EXPECT_EQ(wake.dets[0].bottom(), wake.gts[0].bottom());
    EXPECT_NEAR(bepeval::bep1(wake.gts[0], wake.dets[0]).x, 1.0 / 1.6, 1e-9);
    EXPECT_NEAR(bepeval::bep2(wake.gts[0], wake.dets[0]).x, 1.0, 1e-9);
}

TEST(Scenarios, StoredVerdictsMatchComputedOnes) {
    const auto criteria = bepeval::qualitative_criteria();
    for (const auto& f : bepeval::builtin_scenarios()) {
        const bepeval::Example e{f.name, f.gts, f.dets, std::nullopt};
        for (const auto& c : criteria) {
            EXPECT_EQ(bepeval::judge(e, c), f.expected.at(c.label())) << f.name << " " << c.label();
        }
    }
}

TEST(Scenarios, EveryScoreClearsItsThresholdWithMargin) {
    for (const auto& f : bepeval::builtin_scenarios()) {
        const BBox& g = f.gts[0];
        const BBox& d = f.dets[0];
        const auto b1 = bepeval::bep1(g, d);
        const auto b2 = bepeval::bep2(g, d);
        const std::pair<double, double> values[] = {
            {bepeval::score(MetricSpec::iou(), g, d), 0.5}, {bepeval::score(MetricSpec::dice(), g, d), 0.5},
            {bepeval::score(MetricSpec::iog(), g, d), 0.5}, {b1.x, 0.7}, {b2.x, 0.7}, {b1.y, 0.75}, {b2.y, 0.75}};
        for (const auto& [v, t] : values) EXPECT_GE(std::abs(v - t), 0.02) << f.name;
    }
}

TEST(Scenarios, ConsistentWithMetricOrderingLaws) {
    // BEP1 accepting while BEP2 rejects would contradict X1 <= X2 and Y1 <= Y2.
    for (const auto& f : bepeval::builtin_scenarios()) {
        if (f.expected.at("BEP1(0.7,0.75)") == Verdict::TP) {
            EXPECT_EQ(f.expected.at("BEP2(0.7,0.75)"), Verdict::TP);
        }
        if (f.expected.at("Y1(0.75)") == Verdict::TP) {
            EXPECT_EQ(f.expected.at("Y2(0.75)"), Verdict::TP);
        }
        if (f.expected.at("IOU(0.5)") == Verdict::TP) {
            EXPECT_EQ(f.expected.at("IOG(0.5)"), Verdict::TP);
        }
    }
}

TEST(Compare, SuccessCounts) {
    const auto examples = bepeval::examples_from(bepeval::builtin_scenarios());
    const auto criteria = bepeval::qualitative_criteria();
    const auto grid = bepeval::compare(examples, criteria, true);
    std::map<std::string, std::size_t> hits;
    for (const auto& row : grid.rows) hits[row.criterion.label()] = row.successes.value();
    EXPECT_EQ(hits.at("BEP2(0.7,0.75)"), 10u);
    EXPECT_EQ(hits.at("Y2(0.75)"), 10u);
    EXPECT_LT(hits.at("IOU(0.5)"), hits.at("BEP2(0.7,0.75)"));
    EXPECT_EQ(hits.at("Dice(0.5)"), 2u);
    EXPECT_EQ(hits.at("IOG(0.5)"), 4u);
    EXPECT_EQ(hits.at("X1(0.7)"), 3u);
    EXPECT_EQ(hits.at("X2(0.7)"), 5u);
}

TEST(Compare, ExactMatchIsAlwaysTp) {
    const std::vector<bepeval::Example> one{{"e", {BBox(3, 4, 50, 30)}, {BBox(3, 4, 50, 30)}, Verdict::TP}};
    for (const auto& c : bepeval::qualitative_criteria()) EXPECT_EQ(bepeval::judge(one[0], c), Verdict::TP);
}

TEST(Compare, MissingReferenceIsAnError) {
    const std::vector<bepeval::Example> one{{"e", {BBox(0, 0, 5, 5)}, {BBox(0, 0, 5, 5)}, std::nullopt}};
    const auto criteria = bepeval::qualitative_criteria();
    EXPECT_THROW(bepeval::compare(one, criteria, true), std::invalid_argument);
    const auto grid = bepeval::compare(one, criteria, false);
    EXPECT_FALSE(grid.rows[0].successes.has_value());
}

TEST(Compare, ExampleWithoutDetectionsIsFp) {
    const bepeval::Example e{"empty", {BBox(0, 0, 5, 5)}, {}, std::nullopt};
    EXPECT_EQ(bepeval::judge(e, TpCriterion::single(MetricSpec::iou(), 0.0)), Verdict::FP);
}

TEST(EqualAreaCounterexample, SeparatesByAtLeastTenPoints) {
    const auto f = bepeval::equal_area_counterexample();
    EXPECT_GE(bepeval::bep1(f.gt, f.preferred).score - bepeval::bep1(f.gt, f.deficient).score, 0.1);
}

}  // namespace
