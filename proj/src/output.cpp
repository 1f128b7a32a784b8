#include "shear/output.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "shear/error.hpp"

#ifndef SHEARLYAP_VERSION
#define SHEARLYAP_VERSION "0.0.0"
#endif

namespace shear {

OutputFormat parse_format(std::string_view s) {
    if (s == "text") return OutputFormat::Text;
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    throw DomainError("unknown format '" + std::string(s) + "' (expected text, json or csv)");
}

std::string_view to_string(OutputFormat f) noexcept {
    switch (f) {
        case OutputFormat::Text: return "text";
        case OutputFormat::Json: return "json";
        case OutputFormat::Csv: return "csv";
    }
    return "?";
}

std::string tool_version() { return SHEARLYAP_VERSION; }

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

OutputMetadata make_metadata(std::string command, const SeriesConfig& cfg,
                             std::optional<std::uint64_t> seed) {
    return {tool_version(), std::move(command), seed, cfg, utc_timestamp()};
}

void Document::add(std::string kind, Json payload) {
    records.push_back({std::move(kind), std::move(payload)});
}

Json to_json(const OutputMetadata& m) {
    Json j;
    j["tool_version"] = m.tool_version;
    j["command"] = m.command;
    j["seed"] = m.seed ? Json(*m.seed) : Json(nullptr);
    j["series_config"] = {{"max_index", m.series_config.max_index},
                          {"tail_tol", m.series_config.tail_tol},
                          {"check_tail", m.series_config.check_tail}};
    j["timestamp"] = m.timestamp;
    return j;
}

Json to_json(const Document& doc) {
    Json j;
    j["schema"] = kSchemaId;
    j["metadata"] = to_json(doc.metadata);
    Json recs = Json::array();
    for (const auto& r : doc.records) recs.push_back({{"kind", r.kind}, {"payload", r.payload}});
    j["records"] = std::move(recs);
    return j;
}

std::vector<std::string> columns(const Document& doc) {
    std::vector<std::string> cols{"kind"};
    for (const auto& r : doc.records) {
        for (const auto& [key, _] : r.payload.items()) {
            if (std::find(cols.begin(), cols.end(), key) == cols.end()) cols.push_back(key);
        }
    }
    return cols;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

// Non-finite doubles are stored as strings since JSON has no literal for them.
Json sanitize(const Json& j) {
    if (j.is_number_float() && !std::isfinite(j.get<double>())) {
        return format_number(j.get<double>());
    }
    return j;
}

std::string cell(const Json& v, bool compact) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (!compact || !std::isfinite(x)) return format_number(x);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.8g", x);
        return buf;
    }
    return v.dump();
}

}  // namespace

void write_json(std::ostream& os, const Document& doc) {
    Json j = to_json(doc);
    for (auto& r : j["records"]) {
        for (auto& [key, v] : r["payload"].items()) v = sanitize(v);
    }
    os << j.dump(2) << '\n';
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(std::ostream& os, const Document& doc) {
    const auto cols = columns(doc);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_escape(cols[i]);
    os << "\r\n";
    for (const auto& r : doc.records) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) os << ',';
            if (i == 0) {
                os << csv_escape(r.kind);
            } else if (r.payload.contains(cols[i])) {
                os << csv_escape(cell(r.payload[cols[i]], false));
            }
        }
        os << "\r\n";
    }
}

void write_text(std::ostream& os, const Document& doc) {
    const auto& m = doc.metadata;
    os << "# shearlyap " << m.tool_version << "  " << m.command << '\n';
    os << "# series: max_index=" << m.series_config.max_index
       << " tail_tol=" << format_number(m.series_config.tail_tol)
       << " check_tail=" << (m.series_config.check_tail ? "true" : "false");
    if (m.seed) os << "  seed=" << *m.seed;
    os << "\n# " << m.timestamp << '\n';

    // Consecutive records of the same kind form one table.
    std::size_t start = 0;
    while (start < doc.records.size()) {
        std::size_t end = start;
        while (end < doc.records.size() && doc.records[end].kind == doc.records[start].kind) ++end;
        std::vector<std::string> cols;
        for (std::size_t i = start; i < end; ++i) {
            for (const auto& [key, _] : doc.records[i].payload.items()) {
                if (std::find(cols.begin(), cols.end(), key) == cols.end()) cols.push_back(key);
            }
        }
        std::vector<std::vector<std::string>> rows;
        std::vector<std::size_t> width(cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) width[c] = cols[c].size();
        for (std::size_t i = start; i < end; ++i) {
            std::vector<std::string> row;
            for (std::size_t c = 0; c < cols.size(); ++c) {
                const auto& p = doc.records[i].payload;
                row.push_back(p.contains(cols[c]) ? cell(p[cols[c]], true) : "");
                if (row.back().empty()) row.back() = "-";
                width[c] = std::max(width[c], row.back().size());
            }
            rows.push_back(std::move(row));
        }
        os << '\n' << doc.records[start].kind << '\n';
        auto put = [&](const std::vector<std::string>& cells) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c) os << "  ";
                const bool last = c + 1 == cells.size();
                os << std::left << std::setw(last ? 0 : static_cast<int>(width[c])) << cells[c];
            }
            os << '\n';
        };
        put(cols);
        for (const auto& row : rows) put(row);
        start = end;
    }
}

void write(std::ostream& os, const Document& doc, OutputFormat f) {
    switch (f) {
        case OutputFormat::Text: write_text(os, doc); break;
        case OutputFormat::Json: write_json(os, doc); break;
        case OutputFormat::Csv: write_csv(os, doc); break;
    }
}

namespace {

double parse_double(std::string_view s, std::string_view what) {
    const std::string str(s);
    char* end = nullptr;
    const double x = std::strtod(str.c_str(), &end);
    if (str.empty() || end != str.c_str() + str.size() || !std::isfinite(x)) {
        throw DomainError("invalid " + std::string(what) + " '" + str + "'");
    }
    return x;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::vector<double> parse_range(std::string_view spec) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const auto colon = spec.find(':', pos);
        parts.push_back(spec.substr(pos, colon - pos));
        if (colon == std::string_view::npos) break;
        pos = colon + 1;
    }
    if (parts.size() == 1) return {parse_double(parts[0], "range value")};
    if (parts.size() > 3) throw DomainError("range must be start:stop[:step]");
    const double start = parse_double(parts[0], "range start");
    const double stop = parse_double(parts[1], "range stop");
    const double step = parts.size() == 3 ? parse_double(parts[2], "range step") : 1.0;
    if (step == 0.0) throw DomainError("range step must be non-zero");
    const double span = (stop - start) / step;
    if (span < -1e-9) throw DomainError("range step points away from stop");
    if (span > 1e7) throw DomainError("range has too many points");
    // The slack absorbs rounding in (stop - start) / step, e.g. 0:1:0.1.
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = start + static_cast<double>(i) * step;
    // Snap the end point when it is on the grid.
    if (std::abs(out.back() - stop) <= 1e-9 * std::max(1.0, std::abs(step))) out.back() = stop;
    return out;
}

std::uint64_t parse_count(std::string_view s) {
    const double x = parse_double(s, "count");
    if (x < 1 || x > 9.0e18 || std::floor(x) != x) {
        throw DomainError("count must be a positive integer, got '" + std::string(s) + "'");
    }
    return static_cast<std::uint64_t>(x);
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw DomainError(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        kv[trim(std::string_view(t).substr(0, eq))] = trim(std::string_view(t).substr(eq + 1));
    }
    return kv;
}

void apply_series_config(const std::map<std::string, std::string>& kv, SeriesConfig& cfg) {
    for (const auto& [key, value] : kv) {
        if (key == "max_index") {
            const double x = parse_double(value, "max_index");
            if (std::floor(x) != x) throw DomainError("max_index must be an integer");
            cfg.max_index = static_cast<int>(x);
        } else if (key == "tail_tol") {
            cfg.tail_tol = parse_double(value, "tail_tol");
        } else if (key == "check_tail") {
            if (value == "true" || value == "1") {
                cfg.check_tail = true;
            } else if (value == "false" || value == "0") {
                cfg.check_tail = false;
            } else {
                throw DomainError("check_tail must be true or false");
            }
        } else {
            throw DomainError("unknown config key '" + key + "'");
        }
    }
    cfg.validate();
}

std::string resolve_output_path(const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path p(path);
    const char* dir = std::getenv("SHEARLYAP_OUTPUT_DIR");
    if (p.is_absolute() || dir == nullptr || *dir == '\0') return path;
    return (fs::path(dir) / p).string();
}

}  // namespace shear
