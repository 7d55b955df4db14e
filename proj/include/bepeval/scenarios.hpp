#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bepeval/geometry.hpp"
#include "bepeval/io.hpp"
#include "bepeval/matching.hpp"

namespace bepeval {

/// Criterion key under which a fixture stores the collision-avoidance
/// reference verdict.
inline constexpr const char* kReferenceKey = "maritime-cv";

/// A small (GT, DO) scene with the verdicts it is expected to receive.
struct ScenarioFixture {
    std::string name;
    std::string description;
    std::vector<BBox> gts;
    std::vector<BBox> dets;
    /// Criterion label -> verdict; always contains kReferenceKey.
    std::map<std::string, Verdict> expected;
};

/// Ten archetypal maritime detections, in order: exact, hull-only,
/// hull-low, superstructure-only, wake-horizontal, wake-hull, wake-vertical,
/// occlusion-merge, occlusion-offset, occlusion-gross.
std::vector<ScenarioFixture> builtin_scenarios();

/// Two detections of one ground truth with identical (a, b, c) areas, so
/// every Tversky-family score ties, but different bottom edges. The
/// preferred detection extends above the vessel, the deficient one below it.
struct EqualAreaPair {
    BBox gt;
    BBox preferred;
    BBox deficient;
};

EqualAreaPair equal_area_counterexample();

/// IOU(0.5), Dice(0.5), IOG(0.5), BEP1(0.7,0.75), BEP2(0.7,0.75), X1(0.7),
/// X2(0.7), Y1(0.75), Y2(0.75).
std::vector<TpCriterion> qualitative_criteria();

/// Dumps fixtures as annotation frames (video_id = fixture name, frame 0).
std::vector<AnnotatedFrame> scenario_ground_truth(std::span<const ScenarioFixture> fixtures);
std::vector<AnnotatedFrame> scenario_detections(std::span<const ScenarioFixture> fixtures);

struct Example {
    std::string name;
    std::vector<BBox> gts;
    std::vector<BBox> dets;
    std::optional<Verdict> reference;
};

/// An example is TP under a criterion when it has at least one detection and
/// every detection is matched as a true positive.
Verdict judge(const Example& example, const TpCriterion& criterion);

struct VerdictRow {
    TpCriterion criterion;
    std::vector<Verdict> verdicts;
    /// Number of examples whose verdict equals the reference; empty when
    /// successes were not requested.
    std::optional<std::size_t> successes;
};

struct VerdictGrid {
    std::vector<std::string> examples;
    std::vector<std::optional<Verdict>> reference;
    std::vector<VerdictRow> rows;
};

/// Builds the criteria × examples verdict grid. When `count_successes` is
/// set every example must carry a reference verdict, otherwise
/// std::invalid_argument is thrown.
VerdictGrid compare(std::span<const Example> examples, std::span<const TpCriterion> criteria,
                    bool count_successes);

std::vector<Example> examples_from(std::span<const ScenarioFixture> fixtures);

/// One example per (video_id, frame) of the joined files, with references
/// looked up in `verdicts` when given.
std::vector<Example> examples_from(std::span<const Frame> frames, std::span<const FrameVerdict> verdicts);

}  // namespace bepeval
