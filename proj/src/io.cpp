#include "bepeval/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace bepeval {

namespace {

using nlohmann::json;

std::string describe(const std::string& source, std::size_t line, const std::string& what) {
    std::ostringstream msg;
    msg << source;
    if (line > 0) msg << ":" << line;
    msg << ": " << what;
    return msg.str();
}

bool is_blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char ch) { return std::isspace(ch); });
}

template <typename Fn>
void for_each_record(std::istream& in, const std::string& source, Fn&& fn) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line)) continue;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            throw DataError(source, lineno, std::string("invalid JSON: ") + e.what());
        }
        if (!record.is_object()) throw DataError(source, lineno, "record is not a JSON object");
        try {
            fn(record, lineno);
        } catch (const DataError&) {
            throw;
        } catch (const std::exception& e) {
            throw DataError(source, lineno, e.what());
        }
    }
}

const json& require(const json& record, const char* key) {
    const auto it = record.find(key);
    if (it == record.end()) throw std::invalid_argument(std::string("missing field '") + key + "'");
    return *it;
}

std::string require_string(const json& record, const char* key) {
    const auto& v = require(record, key);
    if (!v.is_string()) throw std::invalid_argument(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

double require_number(const json& record, const char* key) {
    const auto& v = require(record, key);
    if (!v.is_number()) throw std::invalid_argument(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

std::int64_t require_frame(const json& record) {
    const auto& v = require(record, "frame");
    if (v.is_number_unsigned()) return static_cast<std::int64_t>(v.get<std::uint64_t>());
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::int64_t>();
    throw std::invalid_argument("field 'frame' must be a non-negative integer");
}

json number(double v) {
    if (std::floor(v) == v && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
    return v;
}

struct Record {
    std::string video_id;
    std::int64_t frame = 0;
    AnnotatedBox box;
};

}  // namespace

DataError::DataError(std::string source, std::size_t line, const std::string& what)
    : std::runtime_error(describe(source, line, what)), source_(std::move(source)), line_(line) {}

std::vector<AnnotatedFrame> read_annotations(std::istream& in, const std::string& source) {
    std::vector<Record> records;
    for_each_record(in, source, [&](const json& r, std::size_t lineno) {
        std::optional<std::string> id;
        if (const auto it = r.find("id"); it != r.end() && !it->is_null()) {
            if (!it->is_string()) throw DataError(source, lineno, "field 'id' must be a string");
            id = it->get<std::string>();
        }
        const double x = require_number(r, "x");
        const double y = require_number(r, "y");
        const double w = require_number(r, "w");
        const double h = require_number(r, "h");
        if (!(w > 0.0) || !(h > 0.0)) {
            std::ostringstream msg;
            msg << "invalid box: w=" << w << " h=" << h << " (both must be positive)";
            throw DataError(source, lineno, msg.str());
        }
        records.push_back({require_string(r, "video_id"), require_frame(r),
                           AnnotatedBox{BBox(x, y, w, h), require_string(r, "label"), std::move(id)}});
    });

    std::stable_sort(records.begin(), records.end(), [](const Record& l, const Record& r) {
        return std::tie(l.video_id, l.frame) < std::tie(r.video_id, r.frame);
    });

    std::vector<AnnotatedFrame> frames;
    for (auto& rec : records) {
        if (frames.empty() || frames.back().video_id != rec.video_id || frames.back().frame_index != rec.frame) {
            frames.push_back({rec.video_id, rec.frame, {}});
        }
        frames.back().boxes.push_back(std::move(rec.box));
    }
    return frames;
}

std::vector<AnnotatedFrame> load_annotations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError(path.string(), 0, "cannot open file");
    return read_annotations(in, path.string());
}

void write_annotations(std::ostream& out, std::span<const AnnotatedFrame> frames) {
    for (const auto& frame : frames) {
        for (const auto& ab : frame.boxes) {
            nlohmann::ordered_json rec;
            rec["video_id"] = frame.video_id;
            rec["frame"] = frame.frame_index;
            rec["x"] = number(ab.box.x());
            rec["y"] = number(ab.box.y());
            rec["w"] = number(ab.box.w());
            rec["h"] = number(ab.box.h());
            rec["label"] = ab.label;
            if (ab.object_id) rec["id"] = *ab.object_id;
            out << rec.dump() << '\n';
        }
    }
}

void save_annotations(const std::filesystem::path& path, std::span<const AnnotatedFrame> frames) {
    std::ofstream out(path);
    if (!out) throw DataError(path.string(), 0, "cannot open file for writing");
    write_annotations(out, frames);
}

std::vector<Frame> join_frames(std::span<const AnnotatedFrame> gts, std::span<const AnnotatedFrame> dets) {
    std::map<std::pair<std::string, std::int64_t>, Frame> joined;
    auto slot = [&](const AnnotatedFrame& af) -> Frame& {
        auto& f = joined[{af.video_id, af.frame_index}];
        f.video_id = af.video_id;
        f.frame_index = af.frame_index;
        return f;
    };
    for (const auto& af : gts) {
        auto& f = slot(af);
        for (const auto& ab : af.boxes) f.gts.push_back(ab.box);
    }
    for (const auto& af : dets) {
        auto& f = slot(af);
        for (const auto& ab : af.boxes) f.dets.push_back(ab.box);
    }
    std::vector<Frame> frames;
    frames.reserve(joined.size());
    for (auto& [key, frame] : joined) frames.push_back(std::move(frame));
    return frames;
}

std::string to_string(Verdict v) { return v == Verdict::TP ? "TP" : "FP"; }

std::vector<FrameVerdict> read_verdicts(std::istream& in, const std::string& source) {
    std::vector<FrameVerdict> out;
    for_each_record(in, source, [&](const json& r, std::size_t lineno) {
        const auto text = require_string(r, "verdict");
        Verdict v;
        if (text == "TP") {
            v = Verdict::TP;
        } else if (text == "FP") {
            v = Verdict::FP;
        } else {
            throw DataError(source, lineno, "verdict must be \"TP\" or \"FP\"");
        }
        out.push_back({require_string(r, "video_id"), require_frame(r), v});
    });
    return out;
}

std::vector<FrameVerdict> load_verdicts(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError(path.string(), 0, "cannot open file");
    return read_verdicts(in, path.string());
}

}  // namespace bepeval
