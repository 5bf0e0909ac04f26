#include "core/jsonw.hpp"

#include <cmath>
#include <cstdio>

#include "core/error.hpp"

namespace radscf {

Json Json::object() { return Json(Storage(std::vector<Member>{})); }
Json Json::array() { return Json(Storage(std::vector<Json>{})); }

Json& Json::set(const std::string& key, Json v) {
    auto* obj = std::get_if<std::vector<Member>>(&value_);
    if (!obj) throw InternalError("Json::set on a non-object value");
    obj->emplace_back(key, std::move(v));
    return *this;
}

Json& Json::push(Json v) {
    auto* arr = std::get_if<std::vector<Json>>(&value_);
    if (!arr) throw InternalError("Json::push on a non-array value");
    arr->push_back(std::move(v));
    return *this;
}

std::string format_double(double v) {
    if (!std::isfinite(v)) return v > 0 ? "1e9999" : (v < 0 ? "-1e9999" : "0");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void newline_indent(std::string& out, int indent, int depth) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent) * depth, ' ');
}

}  // namespace

void Json::write(std::string& out, int indent, int depth) const {
    if (std::holds_alternative<std::nullptr_t>(value_)) {
        out += "null";
    } else if (auto* b = std::get_if<bool>(&value_)) {
        out += *b ? "true" : "false";
    } else if (auto* i = std::get_if<long long>(&value_)) {
        out += std::to_string(*i);
    } else if (auto* d = std::get_if<double>(&value_)) {
        out += format_double(*d);
    } else if (auto* s = std::get_if<std::string>(&value_)) {
        write_escaped(out, *s);
    } else if (auto* obj = std::get_if<std::vector<Member>>(&value_)) {
        if (obj->empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (const auto& [k, v] : *obj) {
            if (!first) out += ',';
            first = false;
            newline_indent(out, indent, depth + 1);
            write_escaped(out, k);
            out += indent > 0 ? ": " : ":";
            v.write(out, indent, depth + 1);
        }
        newline_indent(out, indent, depth);
        out += '}';
    } else if (auto* arr = std::get_if<std::vector<Json>>(&value_)) {
        if (arr->empty()) {
            out += "[]";
            return;
        }
        out += '[';
        bool first = true;
        for (const auto& v : *arr) {
            if (!first) out += ',';
            first = false;
            newline_indent(out, indent, depth + 1);
            v.write(out, indent, depth + 1);
        }
        newline_indent(out, indent, depth);
        out += ']';
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    return out;
}

}  // namespace radscf
