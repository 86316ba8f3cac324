#pragma once

#include <stdexcept>
#include <string>

namespace addsurf {

// Every library failure carries a short machine-readable kind
// ("DivisionByZero", "NonFixedPoint", ...) next to the message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

}  // namespace addsurf
