#include "bepeval/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace bepeval {

namespace {

double clamp_unit(double v) noexcept { return std::clamp(v, 0.0, 1.0); }

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_weight(std::string_view text, std::string_view whole) {
    text = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("malformed tversky weights in '" + std::string(whole) + "'");
    }
    return v;
}

std::string format_weight(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

MetricSpec::MetricSpec(MetricKind kind) : kind_(kind) {
    if (kind == MetricKind::Tversky) {
        throw std::invalid_argument("use MetricSpec::tversky(alpha, beta) for custom weights");
    }
}

MetricSpec::MetricSpec(MetricKind kind, double alpha, double beta)
    : kind_(kind), alpha_(alpha), beta_(beta) {}

MetricSpec MetricSpec::tversky(double alpha, double beta) {
    if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw std::invalid_argument("tversky weights must be finite and non-negative");
    }
    return MetricSpec(MetricKind::Tversky, alpha, beta);
}

bool MetricSpec::is_tversky_family() const noexcept {
    switch (kind_) {
        case MetricKind::Tversky:
        case MetricKind::Iou:
        case MetricKind::Dice:
        case MetricKind::Iog:
            return true;
        default:
            return false;
    }
}

std::pair<double, double> MetricSpec::tversky_weights() const {
    switch (kind_) {
        case MetricKind::Tversky: return {alpha_, beta_};
        case MetricKind::Iou: return {1.0, 1.0};
        case MetricKind::Dice: return {0.5, 0.5};
        case MetricKind::Iog: return {1.0, 0.0};
        default: throw std::logic_error("metric " + name() + " has no tversky weights");
    }
}

std::string MetricSpec::name() const {
    switch (kind_) {
        case MetricKind::Tversky: return "tversky:" + format_weight(alpha_) + "," + format_weight(beta_);
        case MetricKind::Iou: return "iou";
        case MetricKind::Dice: return "dice";
        case MetricKind::Iog: return "iog";
        case MetricKind::Bep1: return "bep1";
        case MetricKind::Bep2: return "bep2";
        case MetricKind::X1: return "x1";
        case MetricKind::X2: return "x2";
        case MetricKind::Y1: return "y1";
        case MetricKind::Y2: return "y2";
    }
    return "?";
}

std::string MetricSpec::label() const {
    switch (kind_) {
        case MetricKind::Tversky:
            return "Tversky(" + format_weight(alpha_) + "," + format_weight(beta_) + ")";
        case MetricKind::Iou: return "IOU";
        case MetricKind::Dice: return "Dice";
        case MetricKind::Iog: return "IOG";
        case MetricKind::Bep1: return "BEP1";
        case MetricKind::Bep2: return "BEP2";
        case MetricKind::X1: return "X1";
        case MetricKind::X2: return "X2";
        case MetricKind::Y1: return "Y1";
        case MetricKind::Y2: return "Y2";
    }
    return "?";
}

MetricSpec parse_metric(std::string_view text) {
    const std::string key = lower(trim(text));
    if (key == "iou" || key == "jaccard") return MetricSpec::iou();
    if (key == "dice") return MetricSpec::dice();
    if (key == "iog") return MetricSpec::iog();
    if (key == "bep1") return MetricSpec::bep1();
    if (key == "bep2") return MetricSpec::bep2();
    if (key == "x1") return MetricSpec::x1();
    if (key == "x2") return MetricSpec::x2();
    if (key == "y1") return MetricSpec::y1();
    if (key == "y2") return MetricSpec::y2();
    constexpr std::string_view prefix = "tversky:";
    if (key.starts_with(prefix)) {
        const std::string_view rest = std::string_view(key).substr(prefix.size());
        const auto comma = rest.find(',');
        if (comma == std::string_view::npos) {
            throw std::invalid_argument("tversky metric needs two weights: tversky:ALPHA,BETA");
        }
        return MetricSpec::tversky(parse_weight(rest.substr(0, comma), text),
                                   parse_weight(rest.substr(comma + 1), text));
    }
    throw std::invalid_argument("unknown metric '" + std::string(text) + "'");
}

std::vector<MetricSpec> parse_metric_list(std::string_view text) {
    const char sep = text.find(';') != std::string_view::npos ? ';' : ',';
    std::vector<MetricSpec> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(sep, start), text.size());
        const auto item = trim(text.substr(start, end - start));
        if (!item.empty()) out.push_back(parse_metric(item));
        start = end + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty metric list");
    return out;
}

BinaryMask::BinaryMask(std::size_t width, std::size_t height)
    : width_(width), height_(height), bits_(width * height, false) {}

BinaryMask::BinaryMask(std::size_t width, std::size_t height, std::vector<bool> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
    if (bits_.size() != width * height) {
        throw std::invalid_argument("mask bit count does not match width*height");
    }
}

BinaryMask BinaryMask::rasterize(const BBox& box, std::size_t width, std::size_t height) {
    BinaryMask mask(width, height);
    for (std::size_t row = 0; row < height; ++row) {
        const double r = static_cast<double>(row);
        if (r < box.y() || r + 1.0 > box.bottom()) continue;
        for (std::size_t col = 0; col < width; ++col) {
            const double c = static_cast<double>(col);
            if (c >= box.x() && c + 1.0 <= box.right()) mask.set(col, row);
        }
    }
    return mask;
}

std::size_t BinaryMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

OverlapDecomposition decompose_masks(const BinaryMask& gt, const BinaryMask& det) {
    if (gt.width() != det.width() || gt.height() != det.height()) {
        throw std::invalid_argument("mask dimensions differ");
    }
    std::size_t a = 0, b = 0, c = 0;
    for (std::size_t row = 0; row < gt.height(); ++row) {
        for (std::size_t col = 0; col < gt.width(); ++col) {
            const bool g = gt.at(col, row);
            const bool d = det.at(col, row);
            a += g && !d;
            b += g && d;
            c += d && !g;
        }
    }
    return {static_cast<double>(a), static_cast<double>(b), static_cast<double>(c)};
}

double tversky_ratio(const OverlapDecomposition& parts, double alpha, double beta) noexcept {
    if (parts.b <= 0.0) return 0.0;
    return clamp_unit(parts.b / (parts.b + alpha * parts.a + beta * parts.c));
}

double tversky(const BBox& gt, const BBox& det, double alpha, double beta) {
    if (!(alpha >= 0.0) || !(beta >= 0.0)) {
        throw std::invalid_argument("tversky weights must be non-negative");
    }
    return tversky_ratio(decompose_areas(gt, det), alpha, beta);
}

double tversky_mask(const BinaryMask& gt, const BinaryMask& det, double alpha, double beta) {
    if (!(alpha >= 0.0) || !(beta >= 0.0)) {
        throw std::invalid_argument("tversky weights must be non-negative");
    }
    const auto parts = decompose_masks(gt, det);
    if (parts.a + parts.b == 0.0) throw std::invalid_argument("ground-truth mask is empty");
    return tversky_ratio(parts, alpha, beta);
}

BepScore bep1(const BBox& gt, const BBox& det) noexcept {
    const auto hx = decompose_horizontal(gt, det);
    const double x = clamp_unit(hx.x_b / (hx.x_a + hx.x_b + hx.x_c));
    const double y = clamp_unit(1.0 - bottom_edge_gap(gt, det) / std::min(gt.h(), det.h()));
    return {x * y, x, y};
}

BepScore bep2(const BBox& gt, const BBox& det) noexcept {
    const auto hx = decompose_horizontal(gt, det);
    const double x = clamp_unit(hx.x_b / (hx.x_a + hx.x_b));
    const double y = clamp_unit(1.0 - bottom_edge_gap(gt, det) / gt.h());
    return {x * y, x, y};
}

BepScore score_components(const MetricSpec& spec, const BBox& gt, const BBox& det) {
    switch (spec.kind()) {
        case MetricKind::Bep1: return bep1(gt, det);
        case MetricKind::Bep2: return bep2(gt, det);
        default: {
            const double s = score(spec, gt, det);
            return {s, s, s};
        }
    }
}

double score(const MetricSpec& spec, const BBox& gt, const BBox& det) {
    switch (spec.kind()) {
        case MetricKind::Bep1: return bep1(gt, det).score;
        case MetricKind::Bep2: return bep2(gt, det).score;
        case MetricKind::X1: return bep1(gt, det).x;
        case MetricKind::X2: return bep2(gt, det).x;
        case MetricKind::Y1: return bep1(gt, det).y;
        case MetricKind::Y2: return bep2(gt, det).y;
        default: {
            const auto [alpha, beta] = spec.tversky_weights();
            return tversky(gt, det, alpha, beta);
        }
    }
}

}  // namespace bepeval
