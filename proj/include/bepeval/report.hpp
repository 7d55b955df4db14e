#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bepeval/evaluation.hpp"
#include "bepeval/geometry.hpp"
#include "bepeval/metrics.hpp"
#include "bepeval/scenarios.hpp"

namespace bepeval {

/// Placeholder for an undefined ratio (zero denominator).
struct NotAvailable {
    friend bool operator==(NotAvailable, NotAvailable) = default;
};

inline constexpr std::string_view kNaToken = "NA";

/// monostate renders as an empty cell.
using Cell = std::variant<std::monostate, NotAvailable, std::string, std::int64_t, double>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    /// Columns whose numeric cells get a legend bucket in markdown output.
    std::vector<std::size_t> bucket_columns;
};

enum class OutputFormat { Csv, Markdown, JsonLines };

OutputFormat parse_output_format(std::string_view text);

/// Fixed-point with `decimals` digits, round-half-to-even on exact ties.
std::string format_fixed(double value, int decimals = 4);

/// RFC-4180 quoting: fields containing a comma, quote, CR or LF are quoted
/// and embedded quotes doubled.
std::string csv_escape(std::string_view field);

/// Legend bucket for a ratio: "<=0.1", "<=0.2", ..., "<=0.5" or ">0.5".
std::string ratio_bucket(double value);

void render(const Table& table, OutputFormat format, std::ostream& out);

Cell ratio_cell(const std::optional<double>& value);

Table score_table(const BBox& gt, const BBox& det, std::span<const MetricSpec> metrics);
Table report_table(const DatasetReport& report, bool per_video);
Table sweep_table(const SweepGrid& grid);
Table verdict_table(const VerdictGrid& grid);

}  // namespace bepeval
