#pragma once

#include <stdexcept>
#include <string>

namespace lsh {

// Malformed or inconsistent user input. Maps to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A well-formed computation whose mathematical check failed (d^2 != 0, dictionary mismatch).
// Maps to exit code 1.
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lsh
