#include "bepeval/evaluation.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace bepeval {

namespace {

void check_min_px(double min_px) {
    if (!(min_px >= 0.0)) throw std::invalid_argument("min_px must be non-negative");
}

std::vector<std::vector<BBox>> filter_all(std::span<const Frame> frames, double min_px) {
    std::vector<std::vector<BBox>> filtered(frames.size());
    const auto n = static_cast<std::int64_t>(frames.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        filtered[i] = filter_min_size(frames[i].dets, min_px);
    }
    return filtered;
}

}  // namespace

std::optional<double> precision(const Counts& c) noexcept {
    if (c.n_det == 0) return std::nullopt;
    return static_cast<double>(c.tp) / static_cast<double>(c.n_det);
}

std::optional<double> recall(const Counts& c) noexcept {
    if (c.n_gt == 0) return std::nullopt;
    return static_cast<double>(c.tp) / static_cast<double>(c.n_gt);
}

std::vector<BBox> filter_min_size(std::span<const BBox> dets, double min_px) {
    check_min_px(min_px);
    std::vector<BBox> kept;
    kept.reserve(dets.size());
    for (const auto& box : dets) {
        if (box.w() >= min_px && box.h() >= min_px) kept.push_back(box);
    }
    return kept;
}

Counts evaluate_frame(const Frame& frame, const TpCriterion& criterion, double min_px) {
    const auto dets = filter_min_size(frame.dets, min_px);
    const auto result = match_frame(frame.gts, dets, criterion);
    return {result.tp_count(), dets.size(), frame.gts.size()};
}

DatasetReport evaluate_dataset(std::span<const Frame> frames, const TpCriterion& criterion, double min_px) {
    check_min_px(min_px);
    std::vector<Counts> per_frame(frames.size());
    const auto n = static_cast<std::int64_t>(frames.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) {
        per_frame[i] = evaluate_frame(frames[i], criterion, min_px);
    }
    return detail::aggregate(frames, per_frame, criterion);
}

SweepAxes SweepAxes::defaults() {
    return {{0.5, 0.7, 0.9}, {std::sqrt(0.5), std::sqrt(0.7), std::sqrt(0.9)}, {0.6, 0.75, 0.9}};
}

std::vector<MetricSpec> default_sweep_metrics() {
    return {MetricSpec::iou(), MetricSpec::dice(), MetricSpec::iog(), MetricSpec::bep1(),
            MetricSpec::bep2(), MetricSpec::y1(), MetricSpec::y2()};
}

std::vector<TpCriterion> expand_grid(std::span<const MetricSpec> metrics, const SweepAxes& axes) {
    std::vector<TpCriterion> grid;
    for (const auto& m : metrics) {
        if (m.is_bep()) {
            for (double y0 : axes.y0) {
                for (double x0 : axes.x0) grid.push_back(TpCriterion::dual(m, x0, y0));
            }
        } else if (m.is_x_component()) {
            for (double x0 : axes.x0) grid.push_back(TpCriterion::single(m, x0));
        } else if (m.is_y_component()) {
            for (double y0 : axes.y0) grid.push_back(TpCriterion::single(m, y0));
        } else {
            for (double c0 : axes.c0) grid.push_back(TpCriterion::single(m, c0));
        }
    }
    return grid;
}

SweepGrid sweep(std::span<const Frame> frames, std::span<const MetricSpec> metrics, const SweepAxes& axes,
                double min_px) {
    check_min_px(min_px);
    const auto grid = expand_grid(metrics, axes);
    const auto filtered = filter_all(frames, min_px);
    const auto n = static_cast<std::int64_t>(frames.size());

    SweepGrid out;
    out.rows.reserve(grid.size());
    std::size_t next = 0;
    for (const auto& metric : metrics) {
        std::size_t end = next;
        while (end < grid.size() && grid[end].metric() == metric) ++end;

        std::vector<MatchResult> matches(frames.size());
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < n; ++i) {
            matches[i] = assign_greedy(frames[i].gts, filtered[i], metric);
        }

        for (std::size_t g = next; g < end; ++g) {
            const TpCriterion& criterion = grid[g];
            std::vector<Counts> per_frame(frames.size());
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < n; ++i) {
                std::size_t tp = 0;
                for (const auto& p : matches[i].pairs) tp += criterion.accepts(p.components);
                per_frame[i] = {tp, filtered[i].size(), frames[i].gts.size()};
            }
            out.rows.push_back({criterion, detail::aggregate(frames, per_frame, criterion)});
        }
        next = end;
    }
    return out;
}

namespace detail {

DatasetReport aggregate(std::span<const Frame> frames, std::span<const Counts> per_frame,
                        const TpCriterion& criterion) {
    if (frames.size() != per_frame.size()) throw std::logic_error("per-frame count size mismatch");
    Counts total;
    std::map<std::string, Counts> by_video;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        total += per_frame[i];
        by_video[frames[i].video_id] += per_frame[i];
    }
    DatasetReport report{criterion, total, precision(total), recall(total), {}};
    report.per_video.reserve(by_video.size());
    for (const auto& [video, counts] : by_video) {
        report.per_video.push_back({video, counts, precision(counts), recall(counts)});
    }
    return report;
}

}  // namespace detail

}  // namespace bepeval
