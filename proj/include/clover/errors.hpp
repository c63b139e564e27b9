#pragma once

#include <stdexcept>
#include <string>

namespace clover {

// Exit-code contract: 0 success, 1 verification failure, 2 input error,
// 3 resource limit.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : InputError {
    int line, column;
    ParseError(const std::string& msg, int ln, int col)
        : InputError(msg + " at line " + std::to_string(ln) + ", column " +
                     std::to_string(col)),
          line(ln), column(col) {}
};

struct ModelError : InputError {
    explicit ModelError(const std::string& msg) : InputError(msg) {}
};

struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace clover
