#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bepeval/geometry.hpp"
#include "bepeval/matching.hpp"
#include "bepeval/metrics.hpp"

namespace bepeval {

/// Detections smaller than this in either dimension are discarded before
/// matching.
inline constexpr double kDefaultMinSizePx = 20.0;

struct Frame {
    std::string video_id;
    std::int64_t frame_index = 0;
    std::vector<BBox> gts;
    std::vector<BBox> dets;
};

/// TP / detection / ground-truth tallies. Counts form a commutative monoid
/// under +, which is what makes the parallel fold order-independent.
struct Counts {
    std::size_t tp = 0;
    std::size_t n_det = 0;
    std::size_t n_gt = 0;

    Counts& operator+=(const Counts& other) noexcept {
        tp += other.tp;
        n_det += other.n_det;
        n_gt += other.n_gt;
        return *this;
    }
    friend Counts operator+(Counts l, const Counts& r) noexcept { return l += r; }
    friend bool operator==(const Counts&, const Counts&) = default;
};

/// tp / n_det, or nullopt when there are no detections.
std::optional<double> precision(const Counts& c) noexcept;
/// tp / n_gt, or nullopt when there is no ground truth.
std::optional<double> recall(const Counts& c) noexcept;

struct VideoReport {
    std::string video_id;
    Counts counts;
    std::optional<double> precision;
    std::optional<double> recall;
};

struct DatasetReport {
    TpCriterion criterion;
    Counts counts;
    std::optional<double> precision;
    std::optional<double> recall;
    /// Sorted by video_id.
    std::vector<VideoReport> per_video;
};

/// Keeps boxes with w >= min_px and h >= min_px, preserving order.
std::vector<BBox> filter_min_size(std::span<const BBox> dets, double min_px);

/// Filters, matches and counts a single frame.
Counts evaluate_frame(const Frame& frame, const TpCriterion& criterion, double min_px);

/// Micro-averaged precision/recall over all frames. Frames are processed in
/// parallel with OpenMP; the result is identical to serial::evaluate_dataset.
DatasetReport evaluate_dataset(std::span<const Frame> frames, const TpCriterion& criterion,
                               double min_px = kDefaultMinSizePx);

/// Threshold axes of a sweep. Tversky-family metrics use c0, X1/X2 use x0,
/// Y1/Y2 use y0 and BEP metrics use the x0 × y0 product (y0 outermost).
struct SweepAxes {
    std::vector<double> c0;
    std::vector<double> x0;
    std::vector<double> y0;

    /// c0 ∈ {0.5, 0.7, 0.9}; x0 ∈ {√0.5, √0.7, √0.9}; y0 ∈ {0.6, 0.75, 0.9}.
    static SweepAxes defaults();
};

/// IOU, Dice, IOG, BEP1, BEP2, Y1, Y2.
std::vector<MetricSpec> default_sweep_metrics();

/// Grid points in report order.
std::vector<TpCriterion> expand_grid(std::span<const MetricSpec> metrics, const SweepAxes& axes);

struct SweepRow {
    TpCriterion criterion;
    DatasetReport report;
};

struct SweepGrid {
    std::vector<SweepRow> rows;
};

/// Evaluates every grid point. Pairing depends only on the metric, so each
/// metric's frames are matched once and every threshold reuses the result.
SweepGrid sweep(std::span<const Frame> frames, std::span<const MetricSpec> metrics, const SweepAxes& axes,
                double min_px = kDefaultMinSizePx);

namespace serial {

/// Single-threaded reference implementations, kept for tests and benchmarks.
DatasetReport evaluate_dataset(std::span<const Frame> frames, const TpCriterion& criterion,
                               double min_px = kDefaultMinSizePx);

/// One full evaluate_dataset per grid point.
SweepGrid sweep(std::span<const Frame> frames, std::span<const MetricSpec> metrics, const SweepAxes& axes,
                double min_px = kDefaultMinSizePx);

}  // namespace serial

namespace detail {

/// Folds per-frame counts into a report (total and per video).
DatasetReport aggregate(std::span<const Frame> frames, std::span<const Counts> per_frame,
                        const TpCriterion& criterion);

}  // namespace detail

}  // namespace bepeval
