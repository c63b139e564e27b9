#pragma once

#include <string>
#include <utility>
#include <vector>

#include "clover/ints.hpp"

namespace clover {
namespace mj {

// Small JSON reader for the model file format: objects, arrays, strings,
// booleans and arbitrary-precision integers. Floats and null are rejected;
// errors carry line/column positions.
struct Value {
    enum class Kind { Object, Array, String, Integer, Bool };
    Kind kind = Kind::Object;
    std::vector<std::pair<std::string, Value>> members; // objects, in file order
    std::vector<Value> items;                           // arrays
    std::string str;
    Int integer;
    bool boolean = false;
    int line = 0, column = 0; // position of the value's first token

    bool has(const std::string& key) const;
    const Value& at(const std::string& key) const;

    const std::string& as_string() const;
    const Int& as_integer() const;
    bool as_bool() const;
    const std::vector<Value>& as_array() const;
};

Value parse(const std::string& text);

std::string quote(const std::string& s); // JSON string escaping

} // namespace mj
} // namespace clover
