#include "bepeval/scenarios.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <utility>

namespace bepeval {

namespace {

constexpr Verdict TP = Verdict::TP;
constexpr Verdict FP = Verdict::FP;

// Verdicts in qualitative_criteria() order followed by the reference.
ScenarioFixture fixture(std::string name, std::string description, BBox gt, BBox det,
                        std::array<Verdict, 9> verdicts, Verdict reference) {
    ScenarioFixture f{std::move(name), std::move(description), {gt}, {det}, {}};
    const auto criteria = qualitative_criteria();
    for (std::size_t i = 0; i < criteria.size(); ++i) f.expected[criteria[i].label()] = verdicts[i];
    f.expected[kReferenceKey] = reference;
    return f;
}

}  // namespace

std::vector<TpCriterion> qualitative_criteria() {
    return {
        TpCriterion::single(MetricSpec::iou(), 0.5),
        TpCriterion::single(MetricSpec::dice(), 0.5),
        TpCriterion::single(MetricSpec::iog(), 0.5),
        TpCriterion::dual(MetricSpec::bep1(), 0.7, 0.75),
        TpCriterion::dual(MetricSpec::bep2(), 0.7, 0.75),
        TpCriterion::single(MetricSpec::x1(), 0.7),
        TpCriterion::single(MetricSpec::x2(), 0.7),
        TpCriterion::single(MetricSpec::y1(), 0.75),
        TpCriterion::single(MetricSpec::y2(), 0.75),
    };
}

// Geometry is chosen so that every scored quantity sits at least 0.02 away
// from its threshold. Columns of the verdict arrays:
//             IOU Dice IOG BEP1 BEP2 X1 X2 Y1 Y2
std::vector<ScenarioFixture> builtin_scenarios() {
    const BBox vessel(100, 100, 100, 60);  // bottom edge at 160
    const BBox ship(100, 100, 200, 100);   // bottom edge at 200
    return {
        fixture("exact", "detection coincides with the ground truth", vessel, vessel,
                {TP, TP, TP, TP, TP, TP, TP, TP, TP}, TP),
        fixture("hull-only", "only the lower 30% (the hull) is detected", vessel, BBox(100, 142, 100, 18),
                {FP, FP, FP, TP, TP, TP, TP, TP, TP}, TP),
        fixture("hull-low", "hull detected with the bottom edge 4 px too low", vessel, BBox(100, 142, 100, 22),
                {FP, FP, FP, TP, TP, TP, TP, TP, TP}, TP),
        fixture("superstructure-only", "only the upper 40% (superstructure) is detected", vessel,
                BBox(100, 100, 100, 24), {FP, TP, FP, FP, FP, TP, TP, FP, FP}, FP),
        fixture("wake-horizontal", "detection widened by wakes, 30% on each side", vessel,
                BBox(70, 100, 160, 60), {TP, TP, TP, FP, TP, FP, TP, TP, TP}, TP),
        fixture("wake-hull", "hull plus horizontal wakes, superstructure missed", vessel,
                BBox(40, 136, 220, 24), {FP, FP, FP, FP, TP, FP, TP, TP, TP}, TP),
        fixture("wake-vertical", "wake extends the detection far below the hull", vessel,
                BBox(100, 100, 100, 144), {FP, TP, TP, FP, FP, TP, TP, FP, FP}, FP),
        fixture("occlusion-merge", "merged with an occluding boat to the right and in front", ship,
                BBox(100, 100, 230, 130), {TP, TP, TP, FP, FP, TP, TP, FP, FP}, FP),
        fixture("occlusion-offset", "detection dominated by an occluder above, bottom edge missed", vessel,
                BBox(100, 87, 100, 40), {FP, TP, FP, FP, FP, TP, TP, FP, FP}, FP),
        fixture("occlusion-gross", "merged with a smaller vessel in front, bottom edge far too low", ship,
                BBox(80, 100, 240, 150), {TP, TP, TP, FP, FP, TP, TP, FP, FP}, FP),
    };
}

EqualAreaPair equal_area_counterexample() {
    const BBox gt(0, 0, 100, 50);
    return {gt, BBox(0, -10, 100, 60), BBox(0, 0, 100, 60)};
}

std::vector<AnnotatedFrame> scenario_ground_truth(std::span<const ScenarioFixture> fixtures) {
    std::vector<AnnotatedFrame> out;
    for (const auto& f : fixtures) {
        AnnotatedFrame af{f.name, 0, {}};
        for (const auto& b : f.gts) af.boxes.push_back({b, "vessel", std::nullopt});
        out.push_back(std::move(af));
    }
    return out;
}

std::vector<AnnotatedFrame> scenario_detections(std::span<const ScenarioFixture> fixtures) {
    std::vector<AnnotatedFrame> out;
    for (const auto& f : fixtures) {
        AnnotatedFrame af{f.name, 0, {}};
        for (const auto& b : f.dets) af.boxes.push_back({b, "vessel", std::nullopt});
        out.push_back(std::move(af));
    }
    return out;
}

Verdict judge(const Example& example, const TpCriterion& criterion) {
    if (example.dets.empty()) return FP;
    const auto result = match_frame(example.gts, example.dets, criterion);
    return result.tp_count() == example.dets.size() ? TP : FP;
}

VerdictGrid compare(std::span<const Example> examples, std::span<const TpCriterion> criteria,
                    bool count_successes) {
    VerdictGrid grid;
    for (const auto& e : examples) {
        if (count_successes && !e.reference) {
            throw std::invalid_argument("example '" + e.name + "' has no reference verdict");
        }
        grid.examples.push_back(e.name);
        grid.reference.push_back(e.reference);
    }
    for (const auto& c : criteria) {
        VerdictRow row{c, {}, std::nullopt};
        std::size_t hits = 0;
        for (const auto& e : examples) {
            const Verdict v = judge(e, c);
            row.verdicts.push_back(v);
            hits += e.reference && *e.reference == v;
        }
        if (count_successes) row.successes = hits;
        grid.rows.push_back(std::move(row));
    }
    return grid;
}

std::vector<Example> examples_from(std::span<const ScenarioFixture> fixtures) {
    std::vector<Example> out;
    for (const auto& f : fixtures) {
        std::optional<Verdict> ref;
        if (const auto it = f.expected.find(kReferenceKey); it != f.expected.end()) ref = it->second;
        out.push_back({f.name, f.gts, f.dets, ref});
    }
    return out;
}

std::vector<Example> examples_from(std::span<const Frame> frames, std::span<const FrameVerdict> verdicts) {
    std::map<std::pair<std::string, std::int64_t>, Verdict> lookup;
    for (const auto& v : verdicts) lookup[{v.video_id, v.frame_index}] = v.verdict;
    std::vector<Example> out;
    for (const auto& f : frames) {
        std::optional<Verdict> ref;
        if (const auto it = lookup.find({f.video_id, f.frame_index}); it != lookup.end()) ref = it->second;
        out.push_back({f.video_id + "#" + std::to_string(f.frame_index), f.gts, f.dets, ref});
    }
    return out;
}

}  // namespace bepeval
