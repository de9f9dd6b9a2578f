#include "impulsive/toml.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace impulsive::toml {

bool Value::as_bool() const {
    if (!is_bool()) throw ParseError("expected a boolean", line);
    return std::get<bool>(data_);
}

std::int64_t Value::as_integer() const {
    if (!is_integer()) throw ParseError("expected an integer", line);
    return std::get<std::int64_t>(data_);
}

double Value::as_double() const {
    if (is_integer()) return static_cast<double>(std::get<std::int64_t>(data_));
    if (!is_float()) throw ParseError("expected a number", line);
    return std::get<double>(data_);
}

const std::string& Value::as_string() const {
    if (!is_string()) throw ParseError("expected a string", line);
    return std::get<std::string>(data_);
}

const Array& Value::as_array() const {
    if (!is_array()) throw ParseError("expected an array", line);
    return std::get<Array>(data_);
}

const Table& Value::as_table() const {
    if (!is_table()) throw ParseError("expected a table", line);
    return std::get<Table>(data_);
}

Table& Value::as_table() {
    if (!is_table()) throw ParseError("expected a table", line);
    return std::get<Table>(data_);
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char take() {
        const char c = text[pos++];
        if (c == '\n') ++line;
        return c;
    }

    // Skips spaces, tabs, and comments; newlines only when requested.
    void skip_ws(bool across_lines) {
        while (!done()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                take();
            } else if (c == '#') {
                while (!done() && peek() != '\n') take();
            } else if (c == '\n' && across_lines) {
                take();
            } else {
                break;
            }
        }
    }
};

bool is_bare_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string parse_key(Cursor& cur) {
    cur.skip_ws(false);
    if (cur.done()) throw ParseError("expected a key", cur.line);
    if (cur.peek() == '"') {
        cur.take();
        std::string key;
        while (!cur.done() && cur.peek() != '"') key.push_back(cur.take());
        if (cur.done()) throw ParseError("unterminated quoted key", cur.line);
        cur.take();
        return key;
    }
    std::string key;
    while (!cur.done() && is_bare_key_char(cur.peek())) key.push_back(cur.take());
    if (key.empty()) throw ParseError("expected a key", cur.line);
    return key;
}

Value parse_value(Cursor& cur);

Value parse_array(Cursor& cur) {
    const int line = cur.line;
    cur.take(); // '['
    Array items;
    while (true) {
        cur.skip_ws(true);
        if (cur.done()) throw ParseError("unterminated array", line);
        if (cur.peek() == ']') {
            cur.take();
            break;
        }
        items.push_back(parse_value(cur));
        cur.skip_ws(true);
        if (cur.done()) throw ParseError("unterminated array", line);
        if (cur.peek() == ',') {
            cur.take();
        } else if (cur.peek() != ']') {
            throw ParseError("expected ',' or ']' in array", cur.line);
        }
    }
    Value v(std::move(items));
    v.line = line;
    return v;
}

Value parse_inline_table(Cursor& cur) {
    const int line = cur.line;
    cur.take(); // '{'
    Table table;
    cur.skip_ws(true);
    if (!cur.done() && cur.peek() == '}') {
        cur.take();
    } else {
        while (true) {
            const std::string key = parse_key(cur);
            cur.skip_ws(false);
            if (cur.done() || cur.peek() != '=')
                throw ParseError("expected '=' after key \"" + key + "\"", cur.line);
            cur.take();
            cur.skip_ws(true);
            if (table.count(key))
                throw ParseError("duplicate key \"" + key + "\"", cur.line);
            table.emplace(key, parse_value(cur));
            cur.skip_ws(true);
            if (cur.done()) throw ParseError("unterminated inline table", line);
            if (cur.peek() == ',') {
                cur.take();
                cur.skip_ws(true);
                continue;
            }
            if (cur.peek() == '}') {
                cur.take();
                break;
            }
            throw ParseError("expected ',' or '}' in inline table", cur.line);
        }
    }
    Value v(std::move(table));
    v.line = line;
    return v;
}

Value parse_scalar(Cursor& cur) {
    const int line = cur.line;
    if (cur.peek() == '"') {
        cur.take();
        std::string s;
        while (!cur.done() && cur.peek() != '"') {
            char c = cur.take();
            if (c == '\\' && !cur.done()) {
                const char esc = cur.take();
                switch (esc) {
                    case 'n': c = '\n'; break;
                    case 't': c = '\t'; break;
                    case '"': c = '"'; break;
                    case '\\': c = '\\'; break;
                    default: throw ParseError("unsupported escape sequence", cur.line);
                }
            }
            s.push_back(c);
        }
        if (cur.done()) throw ParseError("unterminated string", line);
        cur.take();
        Value v(std::move(s));
        v.line = line;
        return v;
    }

    std::string token;
    while (!cur.done()) {
        const char c = cur.peek();
        if (c == ',' || c == ']' || c == '}' || c == '\n' || c == '#' || c == ' ' ||
            c == '\t' || c == '\r')
            break;
        token.push_back(cur.take());
    }
    if (token.empty()) throw ParseError("expected a value", line);

    if (token == "true" || token == "false") {
        Value v(token == "true");
        v.line = line;
        return v;
    }

    const bool looks_float = token.find_first_of(".eE") != std::string::npos ||
                             token == "inf" || token == "-inf" || token == "nan";
    if (!looks_float) {
        std::int64_t i = 0;
        const auto [ptr, ec] =
            std::from_chars(token.data(), token.data() + token.size(), i);
        if (ec == std::errc{} && ptr == token.data() + token.size()) {
            Value v(i);
            v.line = line;
            return v;
        }
    }
    double d = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), d);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError("cannot parse value \"" + token + "\"", line);
    Value v(d);
    v.line = line;
    return v;
}

Value parse_value(Cursor& cur) {
    cur.skip_ws(false);
    if (cur.done()) throw ParseError("expected a value", cur.line);
    if (cur.peek() == '[') return parse_array(cur);
    if (cur.peek() == '{') return parse_inline_table(cur);
    return parse_scalar(cur);
}

void expect_line_end(Cursor& cur) {
    cur.skip_ws(false);
    if (cur.done()) return;
    if (cur.peek() != '\n')
        throw ParseError(std::string("unexpected trailing content '") + cur.peek() + "'",
                         cur.line);
    cur.take();
}

} // namespace

Table parse(const std::string& text) {
    Cursor cur{text};
    Table root;
    Table* current = &root;
    std::string current_name;

    while (true) {
        cur.skip_ws(true);
        if (cur.done()) break;

        if (cur.peek() == '[') {
            const int line = cur.line;
            cur.take();
            std::string name;
            while (!cur.done() && cur.peek() != ']') name.push_back(cur.take());
            if (cur.done()) throw ParseError("unterminated section header", line);
            cur.take();
            if (name.empty()) throw ParseError("empty section name", line);
            if (root.count(name))
                throw ParseError("duplicate section [" + name + "]", line);
            Value v{Table{}};
            v.line = line;
            auto [it, _] = root.emplace(name, std::move(v));
            current = &it->second.as_table();
            current_name = name;
            expect_line_end(cur);
            continue;
        }

        const int line = cur.line;
        const std::string key = parse_key(cur);
        cur.skip_ws(false);
        if (cur.done() || cur.peek() != '=')
            throw ParseError("expected '=' after key \"" + key + "\"", line);
        cur.take();
        cur.skip_ws(false);
        Value v = parse_value(cur);
        if (current->count(key))
            throw ParseError("duplicate key \"" + key + "\"" +
                                 (current_name.empty() ? "" : " in [" + current_name + "]"),
                             line);
        current->emplace(key, std::move(v));
        expect_line_end(cur);
    }
    return root;
}

} // namespace impulsive::toml
