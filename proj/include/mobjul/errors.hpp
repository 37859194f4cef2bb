#pragma once

#include <stdexcept>
#include <string>

namespace mobjul {

/// Raised when an operation would exceed its configured atom/word budget.
struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when reading or writing an artifact fails.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mobjul
