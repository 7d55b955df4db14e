#include "bepeval/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace bepeval {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string cell_text(const Cell& cell) {
    return std::visit(overloaded{
                          [](std::monostate) { return std::string(); },
                          [](NotAvailable) { return std::string(kNaToken); },
                          [](const std::string& s) { return s; },
                          [](std::int64_t v) { return std::to_string(v); },
                          [](double v) { return format_fixed(v); },
                      },
                      cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
    return std::visit(overloaded{
                          [](std::monostate) { return nlohmann::ordered_json(nullptr); },
                          [](NotAvailable) { return nlohmann::ordered_json(kNaToken); },
                          [](const std::string& s) { return nlohmann::ordered_json(s); },
                          [](std::int64_t v) { return nlohmann::ordered_json(v); },
                          // Parse the rendered text back so JSON carries the same rounding as CSV.
                          [](double v) { return nlohmann::ordered_json::parse(format_fixed(v)); },
                      },
                      cell);
}

std::string markdown_escape(std::string text) {
    std::string out;
    for (char ch : text) {
        if (ch == '|') out += '\\';
        out += ch;
    }
    return out;
}

struct ThresholdCells {
    Cell first;
    Cell y0;
};

ThresholdCells threshold_cells(const TpCriterion& c) {
    if (const auto* dual = std::get_if<DualThreshold>(&c.mode())) return {dual->x0, dual->y0};
    const double t = std::get<SingleThreshold>(c.mode()).c0;
    if (c.metric().is_y_component()) return {std::monostate{}, t};
    return {t, std::monostate{}};
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

OutputFormat parse_output_format(std::string_view text) {
    std::string key(text);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (key == "csv") return OutputFormat::Csv;
    if (key == "markdown" || key == "md" || key == "markdown-table") return OutputFormat::Markdown;
    if (key == "jsonl" || key == "json-lines" || key == "ndjson") return OutputFormat::JsonLines;
    throw std::invalid_argument("unknown output format '" + std::string(text) + "' (csv, markdown, jsonl)");
}

std::string format_fixed(double value, int decimals) {
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
    if (ec != std::errc{}) throw std::runtime_error("number too large to format");
    return std::string(buf, ptr);
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string ratio_bucket(double value) {
    static constexpr double edges[] = {0.1, 0.2, 0.3, 0.4, 0.5};
    static constexpr const char* names[] = {"<=0.1", "<=0.2", "<=0.3", "<=0.4", "<=0.5"};
    for (std::size_t i = 0; i < std::size(edges); ++i) {
        if (value <= edges[i]) return names[i];
    }
    return ">0.5";
}

Cell ratio_cell(const std::optional<double>& value) {
    if (!value) return NotAvailable{};
    return *value;
}

void render(const Table& table, OutputFormat format, std::ostream& out) {
    switch (format) {
        case OutputFormat::Csv: {
            for (std::size_t i = 0; i < table.header.size(); ++i) {
                out << (i ? "," : "") << csv_escape(table.header[i]);
            }
            out << '\n';
            for (const auto& row : table.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(cell_text(row[i]));
                out << '\n';
            }
            break;
        }
        case OutputFormat::Markdown: {
            out << '|';
            for (const auto& h : table.header) out << ' ' << markdown_escape(h) << " |";
            out << "\n|";
            for (std::size_t i = 0; i < table.header.size(); ++i) out << "---|";
            out << '\n';
            for (const auto& row : table.rows) {
                out << '|';
                for (std::size_t i = 0; i < row.size(); ++i) {
                    std::string text = cell_text(row[i]);
                    const bool bucketed = std::find(table.bucket_columns.begin(), table.bucket_columns.end(), i) !=
                                          table.bucket_columns.end();
                    if (bucketed && std::holds_alternative<double>(row[i])) {
                        text += " (" + ratio_bucket(std::get<double>(row[i])) + ")";
                    }
                    out << ' ' << markdown_escape(text) << " |";
                }
                out << '\n';
            }
            break;
        }
        case OutputFormat::JsonLines: {
            for (const auto& row : table.rows) {
                nlohmann::ordered_json obj = nlohmann::ordered_json::object();
                for (std::size_t i = 0; i < row.size() && i < table.header.size(); ++i) {
                    obj[table.header[i]] = cell_json(row[i]);
                }
                out << obj.dump() << '\n';
            }
            break;
        }
    }
}

Table score_table(const BBox& gt, const BBox& det, std::span<const MetricSpec> metrics) {
    Table t{{"metric", "score", "x", "y"}, {}, {}};
    for (const auto& m : metrics) {
        const BepScore s = score_components(m, gt, det);
        if (m.is_bep()) {
            t.rows.push_back({m.name(), s.score, s.x, s.y});
        } else {
            t.rows.push_back({m.name(), s.score, std::monostate{}, std::monostate{}});
        }
    }
    return t;
}

Table report_table(const DatasetReport& report, bool per_video) {
    Table t{{"scope", "metric", "c0_x0", "y0", "tp", "n_det", "n_gt", "precision", "recall"}, {}, {7, 8}};
    const auto th = threshold_cells(report.criterion);
    const std::string metric = report.criterion.metric().name();
    t.rows.push_back({std::string("all"), metric, th.first, th.y0, as_int(report.counts.tp),
                      as_int(report.counts.n_det), as_int(report.counts.n_gt), ratio_cell(report.precision),
                      ratio_cell(report.recall)});
    if (per_video) {
        for (const auto& v : report.per_video) {
            t.rows.push_back({v.video_id, metric, th.first, th.y0, as_int(v.counts.tp), as_int(v.counts.n_det),
                              as_int(v.counts.n_gt), ratio_cell(v.precision), ratio_cell(v.recall)});
        }
    }
    return t;
}

Table sweep_table(const SweepGrid& grid) {
    Table t{{"metric", "c0_x0", "y0", "precision", "recall", "tp", "n_det", "n_gt"}, {}, {3, 4}};
    for (const auto& row : grid.rows) {
        const auto th = threshold_cells(row.criterion);
        const auto& r = row.report;
        t.rows.push_back({row.criterion.metric().name(), th.first, th.y0, ratio_cell(r.precision),
                          ratio_cell(r.recall), as_int(r.counts.tp), as_int(r.counts.n_det),
                          as_int(r.counts.n_gt)});
    }
    return t;
}

Table verdict_table(const VerdictGrid& grid) {
    Table t;
    t.header.push_back("criterion");
    for (const auto& e : grid.examples) t.header.push_back(e);
    const bool counted = !grid.rows.empty() && grid.rows.front().successes.has_value();
    if (counted) t.header.push_back("successes");

    const bool any_reference =
        std::any_of(grid.reference.begin(), grid.reference.end(), [](const auto& r) { return r.has_value(); });
    if (any_reference) {
        std::vector<Cell> row{std::string(kReferenceKey)};
        for (const auto& r : grid.reference) {
            row.push_back(r ? Cell(to_string(*r)) : Cell(std::monostate{}));
        }
        if (counted) row.push_back(std::string("-"));
        t.rows.push_back(std::move(row));
    }
    for (const auto& vr : grid.rows) {
        std::vector<Cell> row{vr.criterion.label()};
        for (Verdict v : vr.verdicts) row.push_back(to_string(v));
        if (vr.successes) row.push_back(as_int(*vr.successes));
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace bepeval
