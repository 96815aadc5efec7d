/*
 * Map-file ingestion and serialization.
 *
 * Schema: {"d": 3, "kind": "bloch" | "bloch_diagonal" | "kraus" | "choi",
 *          "T": 8×8 reals | "mu": [8 reals] | "ops": [3×3 complex] |
 *          "matrix": 9×9 complex}, complex entries spelled [re, im].
 *
 * Schema violations raise SchemaError carrying the JSON pointer of the
 * offending node; semantic violations (non-unital, non-Hermiticity-
 * preserving) surface from map ingestion. Serialization emits the same
 * schema through the byte-stable writer, so serialize → parse round-trips
 * bit-exactly.
 */
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ks3/error.hpp"
#include "ks3/jsonw.hpp"
#include "ks3/map.hpp"
#include "ks3/matrix.hpp"

namespace ks3 {

namespace detail {

using nlohmann::json;

inline std::string ptr(const std::string& base, size_t index) {
    return base + "/" + std::to_string(index);
}

inline double number_at(const json& node, const std::string& pointer) {
    if (!node.is_number()) throw SchemaError(pointer, "expected a number");
    return node.get<double>();
}

inline cx complex_at(const json& node, const std::string& pointer) {
    if (!node.is_array() || node.size() != 2)
        throw SchemaError(pointer, "expected a complex entry as a [re, im] pair");
    return cx{number_at(node[0], ptr(pointer, 0)), number_at(node[1], ptr(pointer, 1))};
}

inline ComplexMatrix complex_matrix_at(const json& node, const std::string& pointer, int dim) {
    if (!node.is_array() || static_cast<int>(node.size()) != dim)
        throw SchemaError(pointer, "expected " + std::to_string(dim) + " rows");
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
        const json& row = node[static_cast<size_t>(r)];
        const std::string row_ptr = ptr(pointer, static_cast<size_t>(r));
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw SchemaError(row_ptr, "expected " + std::to_string(dim) + " entries");
        for (int c = 0; c < dim; ++c)
            m(r, c) = complex_at(row[static_cast<size_t>(c)], ptr(row_ptr, static_cast<size_t>(c)));
    }
    return m;
}

}  // namespace detail

inline UnitalMap parse_map_json(const nlohmann::json& j) {
    using detail::number_at;
    using detail::ptr;

    if (!j.is_object()) throw SchemaError("", "map file root must be an object");
    if (!j.contains("d")) throw SchemaError("/d", "missing required key");
    if (!j["d"].is_number_integer() || j["d"].get<int>() != 3)
        throw SchemaError("/d", "only d = 3 is supported");
    if (!j.contains("kind")) throw SchemaError("/kind", "missing required key");
    if (!j["kind"].is_string()) throw SchemaError("/kind", "expected a string");
    const std::string kind = j["kind"].get<std::string>();

    if (kind == "bloch") {
        if (!j.contains("T")) throw SchemaError("/T", "missing required key for kind \"bloch\"");
        const auto& T = j["T"];
        if (!T.is_array() || T.size() != 8) throw SchemaError("/T", "expected 8 rows");
        RealMatrix t(8, 8);
        for (int r = 0; r < 8; ++r) {
            const auto& row = T[static_cast<size_t>(r)];
            const std::string row_ptr = ptr("/T", static_cast<size_t>(r));
            if (!row.is_array() || row.size() != 8) throw SchemaError(row_ptr, "expected 8 entries");
            for (int c = 0; c < 8; ++c)
                t(r, c) = number_at(row[static_cast<size_t>(c)], ptr(row_ptr, static_cast<size_t>(c)));
        }
        return UnitalMap::from_bloch(std::move(t));
    }
    if (kind == "bloch_diagonal") {
        if (!j.contains("mu")) throw SchemaError("/mu", "missing required key for kind \"bloch_diagonal\"");
        const auto& mu = j["mu"];
        if (!mu.is_array() || mu.size() != 8) throw SchemaError("/mu", "expected 8 entries");
        std::vector<double> v(8);
        for (size_t k = 0; k < 8; ++k) v[k] = number_at(mu[k], ptr("/mu", k));
        return UnitalMap::from_diagonal(std::move(v));
    }
    if (kind == "kraus") {
        if (!j.contains("ops")) throw SchemaError("/ops", "missing required key for kind \"kraus\"");
        const auto& ops = j["ops"];
        if (!ops.is_array() || ops.empty()) throw SchemaError("/ops", "expected a nonempty array");
        std::vector<ComplexMatrix> ks;
        ks.reserve(ops.size());
        for (size_t k = 0; k < ops.size(); ++k)
            ks.push_back(detail::complex_matrix_at(ops[k], ptr("/ops", k), 3));
        return UnitalMap::from_kraus(std::move(ks));
    }
    if (kind == "choi") {
        if (!j.contains("matrix")) throw SchemaError("/matrix", "missing required key for kind \"choi\"");
        return UnitalMap::from_choi(detail::complex_matrix_at(j["matrix"], "/matrix", 9));
    }
    throw SchemaError("/kind", "unknown kind \"" + kind + "\"");
}

inline UnitalMap parse_map_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    return parse_map_json(j);
}

inline UnitalMap parse_map_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open map file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_map_text(buf.str());
}

namespace detail {

inline Json complex_json(cx v) {
    Json pair = Json::array();
    pair.push(Json::of(v.real()));
    pair.push(Json::of(v.imag()));
    return pair;
}

inline Json complex_matrix_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.dim(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.dim(); ++c) row.push(complex_json(m(r, c)));
        rows.push(std::move(row));
    }
    return rows;
}

}  // namespace detail

inline Json serialize_map(const UnitalMap& map) {
    Json out = Json::object();
    out.set("d", Json::of(3));
    out.set("kind", Json::of(to_string(map.kind())));
    switch (map.kind()) {
        case MapKind::bloch: {
            Json rows = Json::array();
            for (int r = 0; r < 8; ++r) {
                Json row = Json::array();
                for (int c = 0; c < 8; ++c) row.push(Json::of(map.T()(r, c)));
                rows.push(std::move(row));
            }
            out.set("T", std::move(rows));
            break;
        }
        case MapKind::bloch_diagonal: {
            Json mu = Json::array();
            for (double v : map.mu_diagonal()) mu.push(Json::of(v));
            out.set("mu", std::move(mu));
            break;
        }
        case MapKind::kraus: {
            Json ops = Json::array();
            for (const auto& K : map.kraus_ops()) ops.push(detail::complex_matrix_json(K));
            out.set("ops", std::move(ops));
            break;
        }
        case MapKind::choi: {
            out.set("matrix", detail::complex_matrix_json(map.choi_payload()));
            break;
        }
    }
    return out;
}

}  // namespace ks3
