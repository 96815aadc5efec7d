/*
 * Minimal byte-stable JSON writer for reports.
 *
 * Object keys keep insertion order (the emitting code fixes the canonical
 * order), floating-point values are printed with %.17g so they re-parse to
 * the identical double, and integers are printed exactly. Identical report
 * content therefore serializes to identical bytes, which the determinism
 * contract depends on.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ks3/error.hpp"

namespace ks3 {

class Json {
  public:
    enum class Type { null, boolean, number_double, number_int, number_uint, string, array, object };

    Json() : type_(Type::null) {}

    static Json null() { return Json(); }
    static Json of(bool b) {
        Json j;
        j.type_ = Type::boolean;
        j.bool_ = b;
        return j;
    }
    static Json of(double v) {
        if (!std::isfinite(v)) throw NumericError("Json: non-finite number in report");
        Json j;
        j.type_ = Type::number_double;
        j.double_ = v;
        return j;
    }
    static Json of(int v) {
        Json j;
        j.type_ = Type::number_int;
        j.int_ = v;
        return j;
    }
    static Json of(std::int64_t v) {
        Json j;
        j.type_ = Type::number_int;
        j.int_ = v;
        return j;
    }
    static Json of(std::uint64_t v) {
        Json j;
        j.type_ = Type::number_uint;
        j.uint_ = v;
        return j;
    }
    static Json of(const char* s) { return of(std::string(s)); }
    static Json of(std::string s) {
        Json j;
        j.type_ = Type::string;
        j.string_ = std::move(s);
        return j;
    }
    static Json array() {
        Json j;
        j.type_ = Type::array;
        return j;
    }
    static Json object() {
        Json j;
        j.type_ = Type::object;
        return j;
    }

    Json& push(Json v) {
        items_.push_back(std::move(v));
        return *this;
    }
    Json& set(std::string key, Json v) {
        keys_.push_back(std::move(key));
        items_.push_back(std::move(v));
        return *this;
    }

    std::string dump(int indent = 2) const {
        std::string out;
        write(out, indent, 0);
        out.push_back('\n');
        return out;
    }

    static std::string format_double(double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    // Depth-first {json-pointer, scalar} rows; arrays/objects contribute
    // their leaves. Used for the CSV rendering of non-tabular reports.
    std::vector<std::vector<std::string>> flatten() const {
        std::vector<std::vector<std::string>> rows;
        flatten_into(rows, "");
        return rows;
    }

  private:
    void flatten_into(std::vector<std::vector<std::string>>& rows, const std::string& ptr) const {
        switch (type_) {
            case Type::null: rows.push_back({ptr, "null"}); return;
            case Type::boolean: rows.push_back({ptr, bool_ ? "true" : "false"}); return;
            case Type::number_double: rows.push_back({ptr, format_double(double_)}); return;
            case Type::number_int: rows.push_back({ptr, std::to_string(int_)}); return;
            case Type::number_uint: rows.push_back({ptr, std::to_string(uint_)}); return;
            case Type::string: rows.push_back({ptr, string_}); return;
            case Type::array:
                for (size_t i = 0; i < items_.size(); ++i)
                    items_[i].flatten_into(rows, ptr + "/" + std::to_string(i));
                return;
            case Type::object:
                for (size_t i = 0; i < items_.size(); ++i) items_[i].flatten_into(rows, ptr + "/" + keys_[i]);
                return;
        }
    }

    void write(std::string& out, int indent, int depth) const {
        switch (type_) {
            case Type::null: out += "null"; return;
            case Type::boolean: out += bool_ ? "true" : "false"; return;
            case Type::number_double: out += format_double(double_); return;
            case Type::number_int: out += std::to_string(int_); return;
            case Type::number_uint: out += std::to_string(uint_); return;
            case Type::string: write_escaped(out, string_); return;
            case Type::array: {
                if (items_.empty()) {
                    out += "[]";
                    return;
                }
                out.push_back('[');
                for (size_t i = 0; i < items_.size(); ++i) {
                    newline(out, indent, depth + 1);
                    items_[i].write(out, indent, depth + 1);
                    if (i + 1 < items_.size()) out.push_back(',');
                }
                newline(out, indent, depth);
                out.push_back(']');
                return;
            }
            case Type::object: {
                if (items_.empty()) {
                    out += "{}";
                    return;
                }
                out.push_back('{');
                for (size_t i = 0; i < items_.size(); ++i) {
                    newline(out, indent, depth + 1);
                    write_escaped(out, keys_[i]);
                    out += ": ";
                    items_[i].write(out, indent, depth + 1);
                    if (i + 1 < items_.size()) out.push_back(',');
                }
                newline(out, indent, depth);
                out.push_back('}');
                return;
            }
        }
    }

    static void newline(std::string& out, int indent, int depth) {
        out.push_back('\n');
        out.append(static_cast<size_t>(indent) * static_cast<size_t>(depth), ' ');
    }

    static void write_escaped(std::string& out, const std::string& s) {
        out.push_back('"');
        for (const char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\r': out += "\\r"; break;
                case '\t': out += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out += buf;
                    } else {
                        out.push_back(c);
                    }
            }
        }
        out.push_back('"');
    }

    Type type_;
    bool bool_ = false;
    double double_ = 0.0;
    std::int64_t int_ = 0;
    std::uint64_t uint_ = 0;
    std::string string_;
    std::vector<std::string> keys_;  // object keys, parallel to items_
    std::vector<Json> items_;        // array elements or object values
};

}  // namespace ks3
