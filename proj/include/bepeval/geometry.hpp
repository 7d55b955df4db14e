#pragma once

#include <string>

namespace bepeval {

/// Axis-aligned box in pixel coordinates. Origin is the top-left corner of
/// the image; x grows rightward and y grows downward, so the bottom edge of
/// a box is y + h.
///
/// Width and height must be strictly positive and every field finite;
/// violating boxes throw std::invalid_argument at construction.
class BBox {
public:
    BBox(double x, double y, double w, double h);

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    double w() const noexcept { return w_; }
    double h() const noexcept { return h_; }

    double right() const noexcept { return x_ + w_; }
    double bottom() const noexcept { return y_ + h_; }
    double area() const noexcept { return w_ * h_; }

    friend bool operator==(const BBox&, const BBox&) = default;

private:
    double x_;
    double y_;
    double w_;
    double h_;
};

/// Areas of GT - DO (a), GT ∩ DO (b) and DO - GT (c).
struct OverlapDecomposition {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// Horizontal projections: GT width outside the overlap (x_a), overlap
/// width (x_b) and DO width outside the overlap (x_c).
struct HorizontalDecomposition {
    double x_a = 0.0;
    double x_b = 0.0;
    double x_c = 0.0;
};

/// Length of the intersection of [lo1, hi1) and [lo2, hi2), zero when disjoint.
double interval_overlap(double lo1, double hi1, double lo2, double hi2) noexcept;

OverlapDecomposition decompose_areas(const BBox& gt, const BBox& det) noexcept;

HorizontalDecomposition decompose_horizontal(const BBox& gt, const BBox& det) noexcept;

/// |bottom(gt) - bottom(det)|.
double bottom_edge_gap(const BBox& gt, const BBox& det) noexcept;

/// Parses "x,y,w,h". Throws std::invalid_argument on malformed text or an
/// invalid box.
BBox parse_bbox(const std::string& text);

std::string to_string(const BBox& box);

}  // namespace bepeval
