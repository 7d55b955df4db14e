#include "bepeval/evaluation.hpp"

#include <stdexcept>

namespace bepeval::serial {

DatasetReport evaluate_dataset(std::span<const Frame> frames, const TpCriterion& criterion, double min_px) {
    if (!(min_px >= 0.0)) throw std::invalid_argument("min_px must be non-negative");
    std::vector<Counts> per_frame;
    per_frame.reserve(frames.size());
    for (const auto& frame : frames) {
        per_frame.push_back(evaluate_frame(frame, criterion, min_px));
    }
    return detail::aggregate(frames, per_frame, criterion);
}

SweepGrid sweep(std::span<const Frame> frames, std::span<const MetricSpec> metrics, const SweepAxes& axes,
                double min_px) {
    SweepGrid out;
    for (const auto& criterion : expand_grid(metrics, axes)) {
        out.rows.push_back({criterion, serial::evaluate_dataset(frames, criterion, min_px)});
    }
    return out;
}

}  // namespace bepeval::serial
