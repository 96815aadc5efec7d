/*
 * Report assembly and emission.
 *
 * Every report carries the command, a config echo (seed, budget, tol — the
 * knobs that produced each verdict), the toolkit version, and the C₃ recipe
 * identifier, then a command-specific result payload. JSON is the native
 * format; CSV is native for sweep (one row per grid point) and a flattened
 * pointer,value table for everything else. Both formats are byte-stable.
 */
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ks3/error.hpp"
#include "ks3/jsonw.hpp"
#include "ks3/ks.hpp"
#include "ks3/version.hpp"

namespace ks3 {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    std::string command;
    Json config = Json::object();
    Json result = Json::object();
    std::optional<CsvTable> csv;  // native CSV form; absent ⇒ flatten the JSON

    Json to_json() const {
        Json j = Json::object();
        j.set("tool", Json::of(kToolName));
        j.set("version", Json::of(kVersion));
        j.set("command", Json::of(command));
        j.set("c3_recipe", Json::of(kC3Recipe));
        j.set("config", config);
        j.set("result", result);
        return j;
    }
};

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline std::string csv_to_string(const CsvTable& t) {
    std::string out;
    for (size_t i = 0; i < t.header.size(); ++i) {
        if (i) out.push_back(',');
        out += csv_escape(t.header[i]);
    }
    out.push_back('\n');
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += csv_escape(row[i]);
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace detail

inline std::string emit_report(const Report& r, const std::string& format) {
    if (format == "json") return r.to_json().dump();
    if (format != "csv") throw InputError("emit_report: unknown format '" + format + "'");
    if (r.csv.has_value()) return detail::csv_to_string(*r.csv);
    CsvTable table;
    table.header = {"key", "value"};
    table.rows = r.to_json().flatten();
    return detail::csv_to_string(table);
}

}  // namespace ks3
