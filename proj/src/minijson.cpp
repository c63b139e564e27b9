#include "clover/minijson.hpp"

#include <cctype>

#include "clover/errors.hpp"

namespace clover {
namespace mj {

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;
    int line = 1, col = 1;

    void advance() {
        if (s[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' ||
                                  s[pos] == '\r'))
            advance();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("model: " + msg, line, col);
    }
    char peek() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        return s[pos];
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }
    bool try_eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            advance();
            return true;
        }
        return false;
    }

    std::string string_token() {
        expect('"');
        std::string out;
        while (pos < s.size() && s[pos] != '"') {
            char c = s[pos];
            if (c == '\\') {
                advance();
                if (pos >= s.size()) fail("unterminated escape");
                char e = s[pos];
                switch (e) {
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case '/': out += '/'; break;
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    default: fail("unsupported escape sequence");
                }
                advance();
            } else if (c == '\n') {
                fail("newline in string");
            } else {
                out += c;
                advance();
            }
        }
        if (pos >= s.size()) fail("unterminated string");
        advance();
        return out;
    }

    Value value() {
        char c = peek();
        Value v;
        v.line = line;
        v.column = col;
        if (c == '{') {
            advance();
            v.kind = Value::Kind::Object;
            if (!try_eat('}')) {
                do {
                    skip_ws();
                    std::string key = string_token();
                    for (const auto& [k, ignored] : v.members)
                        if (k == key) fail("duplicate key \"" + key + "\"");
                    expect(':');
                    v.members.emplace_back(key, value());
                } while (try_eat(','));
                expect('}');
            }
        } else if (c == '[') {
            advance();
            v.kind = Value::Kind::Array;
            if (!try_eat(']')) {
                do {
                    v.items.push_back(value());
                } while (try_eat(','));
                expect(']');
            }
        } else if (c == '"') {
            v.kind = Value::Kind::String;
            v.str = string_token();
        } else if (c == 't' || c == 'f') {
            v.kind = Value::Kind::Bool;
            const char* w = (c == 't') ? "true" : "false";
            for (const char* p = w; *p; ++p) {
                if (pos >= s.size() || s[pos] != *p) fail("bad literal");
                advance();
            }
            v.boolean = (c == 't');
        } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            v.kind = Value::Kind::Integer;
            std::string num;
            if (c == '-') {
                num += '-';
                advance();
            }
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                fail("expected digits");
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                num += s[pos];
                advance();
            }
            if (pos < s.size() && (s[pos] == '.' || s[pos] == 'e' || s[pos] == 'E'))
                fail("only integers are supported");
            v.integer = Int(num);
        } else {
            fail("unexpected character");
        }
        return v;
    }
};

[[noreturn]] void fail_at(const Value& v, const std::string& msg) {
    throw ParseError("model: " + msg, v.line, v.column);
}

} // namespace

bool Value::has(const std::string& key) const {
    for (const auto& [k, val] : members)
        if (k == key) return true;
    return false;
}

const Value& Value::at(const std::string& key) const {
    for (const auto& [k, val] : members)
        if (k == key) return val;
    fail_at(*this, "missing key \"" + key + "\"");
}

const std::string& Value::as_string() const {
    if (kind != Kind::String) fail_at(*this, "expected a string");
    return str;
}
const Int& Value::as_integer() const {
    if (kind != Kind::Integer) fail_at(*this, "expected an integer");
    return integer;
}
bool Value::as_bool() const {
    if (kind != Kind::Bool) fail_at(*this, "expected a boolean");
    return boolean;
}
const std::vector<Value>& Value::as_array() const {
    if (kind != Kind::Array) fail_at(*this, "expected an array");
    return items;
}

Value parse(const std::string& text) {
    Lexer lex{text};
    Value v = lex.value();
    lex.skip_ws();
    if (lex.pos != text.size()) lex.fail("trailing input");
    return v;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace mj
} // namespace clover
