#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bepeval/evaluation.hpp"
#include "bepeval/geometry.hpp"

namespace bepeval {

/// Malformed or invalid input data. Carries the source name and the
/// 1-based line number when one applies (0 otherwise).
class DataError : public std::runtime_error {
public:
    DataError(std::string source, std::size_t line, const std::string& what);

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

struct AnnotatedBox {
    BBox box;
    std::string label;
    std::optional<std::string> object_id;
};

struct AnnotatedFrame {
    std::string video_id;
    std::int64_t frame_index = 0;
    std::vector<AnnotatedBox> boxes;
};

/// Reads one JSON object per line:
///   {"video_id":"v1","frame":0,"x":0,"y":0,"w":10,"h":10,"label":"ferry","id":"b7"}
/// "id" is optional; unknown keys are ignored; blank lines are skipped.
/// Records are grouped into frames ordered by (video_id, frame); within a
/// frame boxes keep their file order. Throws DataError naming the line.
std::vector<AnnotatedFrame> read_annotations(std::istream& in, const std::string& source = "<stream>");

std::vector<AnnotatedFrame> load_annotations(const std::filesystem::path& path);

/// Writes the same line schema, keys in canonical order. Integral
/// coordinates are written as JSON integers.
void write_annotations(std::ostream& out, std::span<const AnnotatedFrame> frames);

void save_annotations(const std::filesystem::path& path, std::span<const AnnotatedFrame> frames);

/// Joins ground truth and detections on (video_id, frame). A key present in
/// only one input yields a frame with the other side empty.
std::vector<Frame> join_frames(std::span<const AnnotatedFrame> gts, std::span<const AnnotatedFrame> dets);

enum class Verdict { TP, FP };

std::string to_string(Verdict v);

struct FrameVerdict {
    std::string video_id;
    std::int64_t frame_index = 0;
    Verdict verdict = Verdict::FP;
};

/// Reference verdicts, one JSON object per line:
///   {"video_id":"v1","frame":0,"verdict":"TP"}
std::vector<FrameVerdict> read_verdicts(std::istream& in, const std::string& source = "<stream>");

std::vector<FrameVerdict> load_verdicts(const std::filesystem::path& path);

}  // namespace bepeval
