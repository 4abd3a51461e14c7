#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fgbar {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at column " + std::to_string(position + 1)),
          position_(position) {}

    // Message already carries its own location (e.g. "line 3: ...").
    explicit ParseError(const std::string& message) : std::runtime_error(message), position_(0) {}

    // 0-based byte offset into the input text.
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Evaluation requested at a point where the quantity is undefined
// (e.g. off the complement of V(f*g)).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace fgbar
