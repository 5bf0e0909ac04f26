#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace radscf {

// Minimal JSON value with insertion-ordered object keys and fixed numeric
// formatting (%.10g), so identical inputs always serialize byte-identically.
// Parsing is out of scope; tests use a full JSON library for that side.
class Json {
public:
    Json() : value_(nullptr) {}
    Json(std::nullptr_t) : value_(nullptr) {}
    Json(bool b) : value_(b) {}
    Json(int i) : value_(static_cast<long long>(i)) {}
    Json(long long i) : value_(i) {}
    Json(std::size_t i) : value_(static_cast<long long>(i)) {}
    Json(double d) : value_(d) {}
    Json(const char* s) : value_(std::string(s)) {}
    Json(std::string s) : value_(std::move(s)) {}

    static Json object();
    static Json array();

    Json& set(const std::string& key, Json v);  // object only
    Json& push(Json v);                         // array only

    std::string dump(int indent = 2) const;

private:
    struct ObjectTag {};
    struct ArrayTag {};
    using Member = std::pair<std::string, Json>;
    using Storage = std::variant<std::nullptr_t, bool, long long, double,
                                 std::string, std::vector<Member>, std::vector<Json>>;

    explicit Json(Storage s) : value_(std::move(s)) {}
    void write(std::string& out, int indent, int depth) const;

    Storage value_;
};

std::string format_double(double v);  // %.10g with C-locale digits

}  // namespace radscf
