#include "bepeval/matching.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace bepeval {

namespace {

void check_threshold(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw std::invalid_argument(std::string("threshold ") + name + " must lie in [0, 1]");
    }
}

double parse_threshold(std::string_view text, std::string_view whole) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("malformed threshold in criterion '" + std::string(whole) + "'");
    }
    return v;
}

std::string short_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 4);
    return std::string(buf, ptr);
}

}  // namespace

TpCriterion::TpCriterion(MetricSpec metric, ThresholdMode mode) : metric_(metric), mode_(mode) {
    if (const auto* dual = std::get_if<DualThreshold>(&mode_)) {
        if (!metric_.is_bep()) {
            throw std::invalid_argument("dual (x0, y0) thresholds require a BEP metric, got " + metric_.name());
        }
        check_threshold(dual->x0, "x0");
        check_threshold(dual->y0, "y0");
    } else {
        check_threshold(std::get<SingleThreshold>(mode_).c0, "c0");
    }
}

bool TpCriterion::accepts(const BepScore& components) const noexcept {
    if (const auto* dual = std::get_if<DualThreshold>(&mode_)) {
        return components.x > dual->x0 && components.y > dual->y0;
    }
    return components.score > std::get<SingleThreshold>(mode_).c0;
}

std::string TpCriterion::label() const {
    if (const auto* dual = std::get_if<DualThreshold>(&mode_)) {
        return metric_.label() + "(" + short_number(dual->x0) + "," + short_number(dual->y0) + ")";
    }
    return metric_.label() + "(" + short_number(std::get<SingleThreshold>(mode_).c0) + ")";
}

TpCriterion parse_criterion(std::string_view text) {
    // The metric part may itself contain a colon (tversky:A,B), so split on the last one.
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("criterion '" + std::string(text) + "' must look like metric:c0 or bepN:x0,y0");
    }
    const MetricSpec metric = parse_metric(text.substr(0, colon));
    const auto thresholds = text.substr(colon + 1);
    const auto comma = thresholds.find(',');
    if (comma == std::string_view::npos) {
        return TpCriterion::single(metric, parse_threshold(thresholds, text));
    }
    return TpCriterion::dual(metric, parse_threshold(thresholds.substr(0, comma), text),
                             parse_threshold(thresholds.substr(comma + 1), text));
}

std::size_t MatchResult::tp_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(pairs.begin(), pairs.end(), [](const MatchedPair& p) { return p.is_tp; }));
}

std::size_t MatchResult::fp_count() const noexcept {
    return pairs.size() - tp_count() + unmatched_det.size();
}

std::size_t MatchResult::fn_count() const noexcept {
    return pairs.size() - tp_count() + unmatched_gt.size();
}

MatchResult assign_greedy(std::span<const BBox> gts, std::span<const BBox> dets, const MetricSpec& metric) {
    std::vector<MatchedPair> candidates;
    candidates.reserve(gts.size() * dets.size());
    for (std::size_t g = 0; g < gts.size(); ++g) {
        for (std::size_t d = 0; d < dets.size(); ++d) {
            const BepScore comp = score_components(metric, gts[g], dets[d]);
            if (comp.score > 0.0) candidates.push_back({g, d, comp.score, comp, false});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const MatchedPair& l, const MatchedPair& r) {
        return std::tie(r.score, l.gt_index, l.det_index) < std::tie(l.score, r.gt_index, r.det_index);
    });

    MatchResult result;
    std::vector<bool> gt_used(gts.size(), false);
    std::vector<bool> det_used(dets.size(), false);
    for (const auto& c : candidates) {
        if (gt_used[c.gt_index] || det_used[c.det_index]) continue;
        gt_used[c.gt_index] = true;
        det_used[c.det_index] = true;
        result.pairs.push_back(c);
    }
    for (std::size_t g = 0; g < gts.size(); ++g) {
        if (!gt_used[g]) result.unmatched_gt.push_back(g);
    }
    for (std::size_t d = 0; d < dets.size(); ++d) {
        if (!det_used[d]) result.unmatched_det.push_back(d);
    }
    return result;
}

void label_matches(MatchResult& result, const TpCriterion& criterion) noexcept {
    for (auto& p : result.pairs) p.is_tp = criterion.accepts(p.components);
}

MatchResult match_frame(std::span<const BBox> gts, std::span<const BBox> dets, const TpCriterion& criterion) {
    MatchResult result = assign_greedy(gts, dets, criterion.metric());
    label_matches(result, criterion);
    return result;
}

}  // namespace bepeval
