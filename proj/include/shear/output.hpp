#pragma once

// Result records and their text / JSON / CSV renderings for the CLI.
//
// A record is a flat object (string, number, bool or null fields) tagged
// with a kind. Documents carry the records plus run metadata.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "shear/series.hpp"

namespace shear {

using Json = nlohmann::ordered_json;

enum class OutputFormat : std::uint8_t { Text, Json, Csv };

OutputFormat parse_format(std::string_view s);
std::string_view to_string(OutputFormat f) noexcept;

inline constexpr std::string_view kSchemaId = "shearlyap/1";

struct OutputRecord {
    std::string kind;  // BoundReport, McEstimate, CurvePoint, TableRow, ...
    Json payload = Json::object();
};

struct OutputMetadata {
    std::string tool_version;
    std::string command;
    std::optional<std::uint64_t> seed;
    SeriesConfig series_config;
    std::string timestamp;  // ISO 8601, UTC
};

std::string tool_version();
std::string utc_timestamp();
OutputMetadata make_metadata(std::string command, const SeriesConfig& cfg,
                             std::optional<std::uint64_t> seed);

struct Document {
    OutputMetadata metadata;
    std::vector<OutputRecord> records;

    void add(std::string kind, Json payload);
};

Json to_json(const OutputMetadata& m);
Json to_json(const Document& doc);

/// Column order for CSV and text: "kind" first, then payload keys in
/// first-seen order across records.
std::vector<std::string> columns(const Document& doc);

void write_json(std::ostream& os, const Document& doc);
/// RFC 4180 long format: one header row, CRLF line ends, fields quoted
/// when they contain a comma, quote, CR or LF. Metadata is not included.
void write_csv(std::ostream& os, const Document& doc);
/// Human-readable: '#' metadata lines then one aligned table per kind.
void write_text(std::ostream& os, const Document& doc);
void write(std::ostream& os, const Document& doc, OutputFormat f);

std::string csv_escape(std::string_view field);
/// Shortest round-trip decimal of x ("nan", "inf", "-inf" for non-finite).
std::string format_number(double x);

/// "start:stop:step", "start:stop" (step 1) or a single value. Points run
/// from start towards stop and never pass it; stop is included when it lies
/// on the grid up to rounding.
std::vector<double> parse_range(std::string_view spec);

/// Accepts integers and decimal/scientific literals with an integral value
/// ("10000000", "1e7").
std::uint64_t parse_count(std::string_view s);

/// Reads "key = value" lines; '#' starts a comment, blank lines are skipped.
std::map<std::string, std::string> read_key_value_file(const std::string& path);

/// Applies max_index, tail_tol and check_tail from a key/value map; other
/// keys throw DomainError.
void apply_series_config(const std::map<std::string, std::string>& kv, SeriesConfig& cfg);

/// Resolves an --output path against SHEARLYAP_OUTPUT_DIR when the path is
/// relative and the variable is set.
std::string resolve_output_path(const std::string& path);

}  // namespace shear
