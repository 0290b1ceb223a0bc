#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kld {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input supplied by the caller (shape, range, flags, file contents).
/// The CLI maps this family to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

class UnsupportedDimensionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Malformed CSV input; row and column are 1-based, 0 when not applicable.
class CsvParseError : public ValidationError {
public:
    CsvParseError(const std::string& what, std::size_t row, std::size_t column)
        : ValidationError(what), row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

/// A design that a computation cannot handle, e.g. coincident points under
/// the nearest-neighbor entropy estimator.
class DegenerateDesignError : public Error {
public:
    DegenerateDesignError(const std::string& what,
                          std::vector<std::pair<std::size_t, std::size_t>> collisions = {})
        : Error(what), collisions_(std::move(collisions)) {}

    /// Pairs (i, j), i < j, of coinciding point indices.
    const std::vector<std::pair<std::size_t, std::size_t>>& collisions() const noexcept {
        return collisions_;
    }

private:
    std::vector<std::pair<std::size_t, std::size_t>> collisions_;
};

}  // namespace kld
