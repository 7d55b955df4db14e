#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>

#include "bepeval/evaluation.hpp"
#include "bepeval/io.hpp"
#include "bepeval/matching.hpp"
#include "bepeval/metrics.hpp"
#include "bepeval/report.hpp"
#include "bepeval/scenarios.hpp"

namespace bepeval::cli {

namespace {

/// Bad flags or flag combinations; maps to kExitUsage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    std::string format = "csv";
    std::string path;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--format", opts.format, "csv, markdown or jsonl")->capture_default_str();
    cmd->add_option("-o,--output", opts.path, "write the report here instead of stdout");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_number(const std::string& text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw UsageError("malformed number '" + text + "'");
    }
    return v;
}

std::vector<double> parse_axis(const std::string& text, const char* name) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        const double v = parse_number(item);
        if (!(v >= 0.0 && v <= 1.0)) throw UsageError(std::string("--") + name + " values must lie in [0, 1]");
        out.push_back(v);
    }
    return out;
}

template <typename T, typename Fn>
T usage_guard(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

TpCriterion build_criterion(const MetricSpec& metric, std::optional<double> c0, std::optional<double> x0,
                            std::optional<double> y0) {
    return usage_guard<TpCriterion>([&] {
        if (metric.is_bep()) {
            if (c0 && (x0 || y0)) throw UsageError("use either --c0 or --x0/--y0 with " + metric.name());
            if (c0) return TpCriterion::single(metric, *c0);
            return TpCriterion::dual(metric, x0.value_or(std::sqrt(0.5)), y0.value_or(0.75));
        }
        if (metric.is_x_component()) {
            if (y0) throw UsageError("--y0 does not apply to " + metric.name());
            if (c0 && x0) throw UsageError("give only one of --c0/--x0");
            return TpCriterion::single(metric, c0 ? *c0 : x0.value_or(std::sqrt(0.5)));
        }
        if (metric.is_y_component()) {
            if (x0) throw UsageError("--x0 does not apply to " + metric.name());
            if (c0 && y0) throw UsageError("give only one of --c0/--y0");
            return TpCriterion::single(metric, c0 ? *c0 : y0.value_or(0.75));
        }
        if (x0 || y0) throw UsageError("dual (x0, y0) thresholds require a BEP metric, got " + metric.name());
        return TpCriterion::single(metric, c0.value_or(0.5));
    });
}

std::vector<Frame> load_frames(const std::string& gt_path, const std::string& det_path) {
    const auto gts = load_annotations(gt_path);
    const auto dets = load_annotations(det_path);
    return join_frames(gts, dets);
}

void emit(const Table& table, const OutputOptions& opts, std::ostream& out) {
    const OutputFormat format = usage_guard<OutputFormat>([&] { return parse_output_format(opts.format); });
    std::ostringstream buffer;
    render(table, format, buffer);
    if (opts.path.empty()) {
        out << buffer.str();
        return;
    }
    std::ofstream file(opts.path, std::ios::binary);
    if (!file) throw DataError(opts.path, 0, "cannot open output file");
    file << buffer.str();
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounding-box detection assessment: Tversky-family and bottom-edge-proximity metrics"};
    app.name("bepeval");
    app.require_subcommand(1);

    // score
    std::string score_gt, score_det, score_metrics = "iou,dice,iog,bep1,bep2";
    OutputOptions score_out;
    auto* score_cmd = app.add_subcommand("score", "score one GT/DO pair under several metrics");
    score_cmd->add_option("--gt", score_gt, "ground truth box x,y,w,h")->required();
    score_cmd->add_option("--det", score_det, "detected box x,y,w,h")->required();
    score_cmd->add_option("--metric", score_metrics, "comma-separated metrics")->capture_default_str();
    add_output_options(score_cmd, score_out);

    // compare
    std::string cmp_gt, cmp_det, cmp_reference;
    std::vector<std::string> cmp_criteria;
    bool cmp_successes = false;
    OutputOptions cmp_out;
    auto* cmp_cmd = app.add_subcommand("compare", "TP/FP verdict grid per criterion (builtin scenarios by default)");
    auto* cmp_gt_opt = cmp_cmd->add_option("--gt", cmp_gt, "ground-truth annotation file");
    auto* cmp_det_opt = cmp_cmd->add_option("--det", cmp_det, "detection annotation file");
    cmp_gt_opt->needs(cmp_det_opt);
    cmp_det_opt->needs(cmp_gt_opt);
    cmp_cmd->add_option("--reference", cmp_reference, "reference verdicts (JSON lines) for --gt/--det input")
        ->needs(cmp_gt_opt);
    cmp_cmd->add_option("--criteria", cmp_criteria, "criteria such as iou:0.5 or bep2:0.7,0.75 (';' separates)");
    cmp_cmd->add_flag("--successes", cmp_successes, "count matches with the reference verdicts");
    add_output_options(cmp_cmd, cmp_out);

    // evaluate
    std::string ev_gt, ev_det, ev_metric = "bep2";
    std::optional<double> ev_c0, ev_x0, ev_y0;
    double ev_min_px = kDefaultMinSizePx;
    bool ev_per_video = false;
    OutputOptions ev_out;
    auto* ev_cmd = app.add_subcommand("evaluate", "precision and recall of a detection file");
    ev_cmd->add_option("--gt", ev_gt, "ground-truth annotation file")->required();
    ev_cmd->add_option("--det", ev_det, "detection annotation file")->required();
    ev_cmd->add_option("--metric", ev_metric, "metric name")->capture_default_str();
    ev_cmd->add_option("--c0", ev_c0, "single threshold on the metric score");
    ev_cmd->add_option("--x0", ev_x0, "threshold on the X component");
    ev_cmd->add_option("--y0", ev_y0, "threshold on the Y component");
    ev_cmd->add_option("--min-px", ev_min_px, "reject detections smaller than this in either dimension")
        ->capture_default_str();
    ev_cmd->add_flag("--per-video", ev_per_video, "add one row per video");
    add_output_options(ev_cmd, ev_out);

    // sweep
    std::string sw_gt, sw_det, sw_metrics = "iou,dice,iog,bep1,bep2,y1,y2";
    std::string sw_c0, sw_x0, sw_y0;
    double sw_min_px = kDefaultMinSizePx;
    OutputOptions sw_out;
    auto* sw_cmd = app.add_subcommand("sweep", "precision and recall over a threshold grid");
    sw_cmd->add_option("--gt", sw_gt, "ground-truth annotation file")->required();
    sw_cmd->add_option("--det", sw_det, "detection annotation file")->required();
    sw_cmd->add_option("--metrics", sw_metrics, "comma-separated metrics")->capture_default_str();
    sw_cmd->add_option("--c0", sw_c0, "c0 axis, comma-separated (default 0.5,0.7,0.9)");
    sw_cmd->add_option("--x0", sw_x0, "x0 axis, comma-separated (default sqrt of 0.5,0.7,0.9)");
    sw_cmd->add_option("--y0", sw_y0, "y0 axis, comma-separated (default 0.6,0.75,0.9)");
    sw_cmd->add_option("--min-px", sw_min_px, "reject detections smaller than this in either dimension")
        ->capture_default_str();
    add_output_options(sw_cmd, sw_out);

    // scenarios
    std::string sc_gt_out, sc_det_out, sc_ref_out;
    OutputOptions sc_out;
    auto* sc_cmd = app.add_subcommand("scenarios", "list or export the builtin scenario fixtures");
    sc_cmd->add_option("--gt-out", sc_gt_out, "write fixture ground truth as annotation lines");
    sc_cmd->add_option("--det-out", sc_det_out, "write fixture detections as annotation lines");
    sc_cmd->add_option("--reference-out", sc_ref_out, "write reference verdicts as JSON lines");
    add_output_options(sc_cmd, sc_out);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "bepeval: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (score_cmd->parsed()) {
            const auto [gt, det] = usage_guard<std::pair<BBox, BBox>>(
                [&] { return std::pair{parse_bbox(score_gt), parse_bbox(score_det)}; });
            const auto metrics = usage_guard<std::vector<MetricSpec>>([&] { return parse_metric_list(score_metrics); });
            emit(score_table(gt, det, metrics), score_out, out);
        } else if (cmp_cmd->parsed()) {
            std::vector<TpCriterion> criteria;
            for (const auto& arg : cmp_criteria) {
                for (const auto& item : split(arg, ';')) {
                    criteria.push_back(usage_guard<TpCriterion>([&] { return parse_criterion(item); }));
                }
            }
            if (criteria.empty()) criteria = qualitative_criteria();

            std::vector<Example> examples;
            bool count = cmp_successes;
            if (cmp_gt.empty()) {
                examples = examples_from(builtin_scenarios());
                count = true;
            } else {
                const auto frames = load_frames(cmp_gt, cmp_det);
                std::vector<FrameVerdict> verdicts;
                if (!cmp_reference.empty()) {
                    verdicts = load_verdicts(cmp_reference);
                    count = true;
                } else if (count) {
                    throw UsageError("--successes needs --reference when comparing files");
                }
                examples = examples_from(frames, verdicts);
            }
            VerdictGrid grid;
            try {
                grid = compare(examples, criteria, count);
            } catch (const std::invalid_argument& e) {
                throw DataError(cmp_reference.empty() ? "<builtin>" : cmp_reference, 0, e.what());
            }
            emit(verdict_table(grid), cmp_out, out);
        } else if (ev_cmd->parsed()) {
            const MetricSpec metric = usage_guard<MetricSpec>([&] { return parse_metric(ev_metric); });
            const TpCriterion criterion = build_criterion(metric, ev_c0, ev_x0, ev_y0);
            if (!(ev_min_px >= 0.0)) throw UsageError("--min-px must be non-negative");
            const auto frames = load_frames(ev_gt, ev_det);
            emit(report_table(evaluate_dataset(frames, criterion, ev_min_px), ev_per_video), ev_out, out);
        } else if (sw_cmd->parsed()) {
            const auto metrics = usage_guard<std::vector<MetricSpec>>([&] { return parse_metric_list(sw_metrics); });
            SweepAxes axes = SweepAxes::defaults();
            if (!sw_c0.empty()) axes.c0 = parse_axis(sw_c0, "c0");
            if (!sw_x0.empty()) axes.x0 = parse_axis(sw_x0, "x0");
            if (!sw_y0.empty()) axes.y0 = parse_axis(sw_y0, "y0");
            if (!(sw_min_px >= 0.0)) throw UsageError("--min-px must be non-negative");
            const auto frames = load_frames(sw_gt, sw_det);
            emit(sweep_table(sweep(frames, metrics, axes, sw_min_px)), sw_out, out);
        } else if (sc_cmd->parsed()) {
            const auto fixtures = builtin_scenarios();
            if (!sc_gt_out.empty()) save_annotations(sc_gt_out, scenario_ground_truth(fixtures));
            if (!sc_det_out.empty()) save_annotations(sc_det_out, scenario_detections(fixtures));
            if (!sc_ref_out.empty()) {
                std::ofstream ref(sc_ref_out);
                if (!ref) throw DataError(sc_ref_out, 0, "cannot open file for writing");
                for (const auto& f : fixtures) {
                    ref << R"({"video_id":")" << f.name << R"(","frame":0,"verdict":")"
                        << to_string(f.expected.at(kReferenceKey)) << "\"}\n";
                }
            }
            if (sc_gt_out.empty() && sc_det_out.empty() && sc_ref_out.empty()) {
                Table t{{"name", "gt", "det", "reference", "description"}, {}, {}};
                for (const auto& f : fixtures) {
                    t.rows.push_back({f.name, to_string(f.gts.front()), to_string(f.dets.front()),
                                      to_string(f.expected.at(kReferenceKey)), f.description});
                }
                emit(t, sc_out, out);
            }
        }
    } catch (const UsageError& e) {
        err << "bepeval: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        err << "bepeval: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "bepeval: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}

}  // namespace bepeval::cli
