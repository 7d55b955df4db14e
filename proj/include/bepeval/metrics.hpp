#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bepeval/geometry.hpp"

namespace bepeval {

enum class MetricKind { Tversky, Iou, Dice, Iog, Bep1, Bep2, X1, X2, Y1, Y2 };

/// Which similarity to compute for a (GT, DO) pair. The Tversky weights are
/// only meaningful for MetricKind::Tversky; the IOU, Dice and IOG presets
/// expand to fixed weights through tversky_weights().
class MetricSpec {
public:
    static MetricSpec tversky(double alpha, double beta);
    static MetricSpec iou() { return MetricSpec(MetricKind::Iou); }
    static MetricSpec dice() { return MetricSpec(MetricKind::Dice); }
    static MetricSpec iog() { return MetricSpec(MetricKind::Iog); }
    static MetricSpec bep1() { return MetricSpec(MetricKind::Bep1); }
    static MetricSpec bep2() { return MetricSpec(MetricKind::Bep2); }
    static MetricSpec x1() { return MetricSpec(MetricKind::X1); }
    static MetricSpec x2() { return MetricSpec(MetricKind::X2); }
    static MetricSpec y1() { return MetricSpec(MetricKind::Y1); }
    static MetricSpec y2() { return MetricSpec(MetricKind::Y2); }

    explicit MetricSpec(MetricKind kind);

    MetricKind kind() const noexcept { return kind_; }

    bool is_tversky_family() const noexcept;
    bool is_bep() const noexcept { return kind_ == MetricKind::Bep1 || kind_ == MetricKind::Bep2; }
    bool is_x_component() const noexcept { return kind_ == MetricKind::X1 || kind_ == MetricKind::X2; }
    bool is_y_component() const noexcept { return kind_ == MetricKind::Y1 || kind_ == MetricKind::Y2; }

    /// (alpha, beta) for the Tversky family. Throws std::logic_error otherwise.
    std::pair<double, double> tversky_weights() const;

    /// Short lowercase name: iou, dice, iog, bep1, ..., or tversky:A,B.
    std::string name() const;

    /// Display name as used in report tables: IOU, Dice, IOG, BEP1, X1, ...
    std::string label() const;

    friend bool operator==(const MetricSpec&, const MetricSpec&) = default;

private:
    MetricSpec(MetricKind kind, double alpha, double beta);

    MetricKind kind_;
    double alpha_ = 0.0;
    double beta_ = 0.0;
};

/// Accepts the names produced by MetricSpec::name(), case-insensitively.
MetricSpec parse_metric(std::string_view text);

/// Comma-separated list of metric names. "tversky:A,B" cannot appear in a
/// list; use ';' as the list separator when it is needed.
std::vector<MetricSpec> parse_metric_list(std::string_view text);

/// Row-major binary foreground mask.
class BinaryMask {
public:
    BinaryMask(std::size_t width, std::size_t height);
    BinaryMask(std::size_t width, std::size_t height, std::vector<bool> bits);

    /// Mask with the integer pixels covered by `box` set. Pixel (i, j) is
    /// covered when its unit cell [i, i+1) x [j, j+1) lies inside the box,
    /// which for integer boxes is exactly w*h pixels.
    static BinaryMask rasterize(const BBox& box, std::size_t width, std::size_t height);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    bool at(std::size_t col, std::size_t row) const { return bits_.at(row * width_ + col); }
    void set(std::size_t col, std::size_t row, bool value = true) { bits_.at(row * width_ + col) = value; }
    std::size_t count() const noexcept;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<bool> bits_;
};

/// Pixel cardinalities |GT \ DO|, |GT ∩ DO|, |DO \ GT|. Throws
/// std::invalid_argument when the masks differ in size.
OverlapDecomposition decompose_masks(const BinaryMask& gt, const BinaryMask& det);

/// b / (b + alpha*a + beta*c); 0 when there is no overlap.
double tversky_ratio(const OverlapDecomposition& parts, double alpha, double beta) noexcept;

double tversky(const BBox& gt, const BBox& det, double alpha, double beta);

/// Pixel-set Tversky. Throws std::invalid_argument on a size mismatch or an
/// empty ground-truth mask.
double tversky_mask(const BinaryMask& gt, const BinaryMask& det, double alpha, double beta);

/// BEP score together with its horizontal (X) and bottom-edge (Y) factors.
struct BepScore {
    double score = 0.0;
    double x = 0.0;
    double y = 0.0;
};

/// Symmetric variant: X penalises DO width outside GT, Y is normalised by
/// the smaller of the two heights.
BepScore bep1(const BBox& gt, const BBox& det) noexcept;

/// GT-allied variant: X ignores DO excess width, Y is normalised by the GT
/// height.
BepScore bep2(const BBox& gt, const BBox& det) noexcept;

/// Scalar value of `spec` for one pair. X/Y kinds return the bare
/// component.
double score(const MetricSpec& spec, const BBox& gt, const BBox& det);

/// For BEP kinds, the BEP score with its components; for every other kind
/// {score, score, score}.
BepScore score_components(const MetricSpec& spec, const BBox& gt, const BBox& det);

}  // namespace bepeval
