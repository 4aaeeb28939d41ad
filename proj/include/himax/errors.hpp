#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace himax {

/// Invalid numeric input (non-finite values, zero degrees of freedom, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A column whose variance (or norm) vanishes, so no correlation is defined.
class DegenerateColumnError : public DomainError {
  public:
    DegenerateColumnError(std::size_t column, const std::string& what)
        : DomainError(what + " (column " + std::to_string(column) + ")"), column_(column) {}

    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    std::size_t column_;
};

/// Inconsistent or too-small matrix / block dimensions.
class ShapeError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// Root solver could not bracket the requested target.
class BracketError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// Malformed CSV input. Row and column are 1-based positions in the file.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t row, std::size_t column, std::string detail, std::string source = {})
        : std::runtime_error((source.empty() ? std::string() : source + ": ") + "line " +
                             std::to_string(row) + ", column " + std::to_string(column) + ": " +
                             detail),
          row_(row), column_(column), detail_(std::move(detail)) {}

    [[nodiscard]] std::size_t row() const noexcept { return row_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

  private:
    std::size_t row_;
    std::size_t column_;
    std::string detail_;
};

/// Caller combined arguments that do not fit together (e.g. statistic/approximation mismatch).
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace himax
