#include "bepeval/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bepeval {

BBox::BBox(double x, double y, double w, double h) : x_(x), y_(y), w_(w), h_(h) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(w) || !std::isfinite(h)) {
        throw std::invalid_argument("bounding box has a non-finite coordinate");
    }
    if (!(w > 0.0) || !(h > 0.0)) {
        std::ostringstream msg;
        msg << "bounding box must have positive extent, got w=" << w << " h=" << h;
        throw std::invalid_argument(msg.str());
    }
}

double interval_overlap(double lo1, double hi1, double lo2, double hi2) noexcept {
    return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

OverlapDecomposition decompose_areas(const BBox& gt, const BBox& det) noexcept {
    const double ow = interval_overlap(gt.x(), gt.right(), det.x(), det.right());
    const double oh = interval_overlap(gt.y(), gt.bottom(), det.y(), det.bottom());
    const double b = ow * oh;
    // Clamp guards against the last-ulp rounding in area() - b.
    return {std::max(0.0, gt.area() - b), b, std::max(0.0, det.area() - b)};
}

HorizontalDecomposition decompose_horizontal(const BBox& gt, const BBox& det) noexcept {
    const double xb = interval_overlap(gt.x(), gt.right(), det.x(), det.right());
    return {std::max(0.0, gt.w() - xb), xb, std::max(0.0, det.w() - xb)};
}

double bottom_edge_gap(const BBox& gt, const BBox& det) noexcept {
    return std::abs(gt.bottom() - det.bottom());
}

BBox parse_bbox(const std::string& text) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        std::string field = text.substr(start, comma - start);
        field.erase(0, field.find_first_not_of(" \t"));
        field.erase(field.find_last_not_of(" \t") + 1);
        double v = 0.0;
        const auto* first = field.data();
        const auto* last = field.data() + field.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (field.empty() || ec != std::errc{} || ptr != last) {
            throw std::invalid_argument("malformed box '" + text + "': expected x,y,w,h");
        }
        values.push_back(v);
        start = comma + 1;
    }
    if (values.size() != 4) {
        throw std::invalid_argument("malformed box '" + text + "': expected 4 comma-separated numbers");
    }
    return BBox(values[0], values[1], values[2], values[3]);
}

std::string to_string(const BBox& box) {
    std::ostringstream out;
    out << box.x() << ',' << box.y() << ',' << box.w() << ',' << box.h();
    return out.str();
}

}  // namespace bepeval
