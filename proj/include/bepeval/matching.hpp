#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bepeval/geometry.hpp"
#include "bepeval/metrics.hpp"

namespace bepeval {

struct SingleThreshold {
    double c0 = 0.5;
    friend bool operator==(const SingleThreshold&, const SingleThreshold&) = default;
};

/// Separate thresholds on the X and Y components of a BEP metric.
struct DualThreshold {
    double x0 = 0.7;
    double y0 = 0.75;
    friend bool operator==(const DualThreshold&, const DualThreshold&) = default;
};

using ThresholdMode = std::variant<SingleThreshold, DualThreshold>;

/// Rule for labelling a matched (GT, DO) pair as a true positive. All
/// comparisons are strict: score > c0, or X > x0 and Y > y0.
class TpCriterion {
public:
    /// Throws std::invalid_argument when a threshold is outside [0, 1] or a
    /// dual threshold is combined with a non-BEP metric.
    TpCriterion(MetricSpec metric, ThresholdMode mode);

    static TpCriterion single(MetricSpec metric, double c0) { return {metric, SingleThreshold{c0}}; }
    static TpCriterion dual(MetricSpec metric, double x0, double y0) {
        return {metric, DualThreshold{x0, y0}};
    }

    const MetricSpec& metric() const noexcept { return metric_; }
    const ThresholdMode& mode() const noexcept { return mode_; }
    bool is_dual() const noexcept { return std::holds_alternative<DualThreshold>(mode_); }

    /// Decides TP from a pair's score components.
    bool accepts(const BepScore& components) const noexcept;

    /// Table-style name, e.g. "IOU(0.5)" or "BEP2(0.7,0.75)".
    std::string label() const;

    friend bool operator==(const TpCriterion&, const TpCriterion&) = default;

private:
    MetricSpec metric_;
    ThresholdMode mode_;
};

/// Parses "metric:c0" or "bep1:x0,y0" (e.g. "iou:0.5", "bep2:0.7,0.75").
TpCriterion parse_criterion(std::string_view text);

struct MatchedPair {
    std::size_t gt_index = 0;
    std::size_t det_index = 0;
    double score = 0.0;
    BepScore components;
    bool is_tp = false;
};

struct MatchResult {
    std::vector<MatchedPair> pairs;
    std::vector<std::size_t> unmatched_gt;
    std::vector<std::size_t> unmatched_det;

    std::size_t tp_count() const noexcept;
    /// Detections that are not true positives: rejected pairs plus unmatched DOs.
    std::size_t fp_count() const noexcept;
    /// Ground truths without a true-positive partner.
    std::size_t fn_count() const noexcept;
};

/// Greedy one-to-one assignment on `metric` scores. Pairs are taken in
/// descending score order (ties: lower GT index, then lower DO index);
/// zero-score pairs are never matched. The result carries no TP labels;
/// every pair has is_tp = false until label_matches() is applied.
MatchResult assign_greedy(std::span<const BBox> gts, std::span<const BBox> dets, const MetricSpec& metric);

/// Sets is_tp on every pair of `result` according to `criterion`.
void label_matches(MatchResult& result, const TpCriterion& criterion) noexcept;

/// assign_greedy followed by label_matches.
MatchResult match_frame(std::span<const BBox> gts, std::span<const BBox> dets, const TpCriterion& criterion);

}  // namespace bepeval
