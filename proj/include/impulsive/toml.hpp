#pragma once

// Minimal TOML-subset reader for problem files: top-level tables, bare keys,
// strings, booleans, integers, floats, single-level arrays, and inline
// tables. Comments start with '#'. Arrays and inline tables may span lines
// (brackets are balanced across physical lines). Errors carry the line
// number of the offending token.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace impulsive::toml {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line_number)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + msg),
          line(line_number) {}
    int line;
};

class Value;
using Array = std::vector<Value>;
using Table = std::map<std::string, Value>;

class Value {
public:
    Value() : data_(std::monostate{}) {}
    explicit Value(bool b) : data_(b) {}
    explicit Value(std::int64_t i) : data_(i) {}
    explicit Value(double d) : data_(d) {}
    explicit Value(std::string s) : data_(std::move(s)) {}
    explicit Value(Array a) : data_(std::move(a)) {}
    explicit Value(Table t) : data_(std::move(t)) {}

    int line = 0;

    bool is_bool() const { return std::holds_alternative<bool>(data_); }
    bool is_integer() const { return std::holds_alternative<std::int64_t>(data_); }
    bool is_float() const { return std::holds_alternative<double>(data_); }
    bool is_number() const { return is_integer() || is_float(); }
    bool is_string() const { return std::holds_alternative<std::string>(data_); }
    bool is_array() const { return std::holds_alternative<Array>(data_); }
    bool is_table() const { return std::holds_alternative<Table>(data_); }

    bool as_bool() const;
    std::int64_t as_integer() const;
    double as_double() const; // integers promote
    const std::string& as_string() const;
    const Array& as_array() const;
    const Table& as_table() const;
    Table& as_table();

private:
    std::variant<std::monostate, bool, std::int64_t, double, std::string, Array, Table>
        data_;
};

// Parses a whole document into a table of sections/keys.
Table parse(const std::string& text);

} // namespace impulsive::toml
