#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace himax {

/// n x p observation matrix: rows are observations, columns are variates.
/// Stored column-major so each variate is a contiguous span.
class DataMatrix {
  public:
    DataMatrix() = default;
    DataMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    /// Builds from row-major nested vectors; all rows must have equal length.
    static DataMatrix from_rows(const std::vector<std::vector<double>>& rows);
    /// Builds from column vectors; all columns must have equal length.
    static DataMatrix from_columns(const std::vector<std::vector<double>>& columns);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }

    double& operator()(std::size_t row, std::size_t col) { return values_[col * rows_ + row]; }
    double operator()(std::size_t row, std::size_t col) const { return values_[col * rows_ + row]; }

    [[nodiscard]] std::span<double> column(std::size_t col) {
        return {values_.data() + col * rows_, rows_};
    }
    [[nodiscard]] std::span<const double> column(std::size_t col) const {
        return {values_.data() + col * rows_, rows_};
    }

    /// Rows [first, first + count) as a new matrix.
    [[nodiscard]] DataMatrix row_slice(std::size_t first, std::size_t count) const;

    [[nodiscard]] std::span<const double> raw() const noexcept { return values_; }

    friend bool operator==(const DataMatrix&, const DataMatrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// d independent n x p arrays sharing one shape (the general block form).
class BlockSample {
  public:
    BlockSample() = default;
    /// Throws ShapeError if blocks is empty, any block is empty, or shapes differ.
    explicit BlockSample(std::vector<DataMatrix> blocks);

    /// Splits the rows of data into `count` consecutive blocks of equal size.
    /// Throws ShapeError unless count divides data.rows().
    static BlockSample split_rows(const DataMatrix& data, std::size_t count);

    [[nodiscard]] std::size_t block_count() const noexcept { return blocks_.size(); }
    [[nodiscard]] std::size_t rows() const noexcept { return blocks_.empty() ? 0 : blocks_[0].rows(); }
    [[nodiscard]] std::size_t cols() const noexcept { return blocks_.empty() ? 0 : blocks_[0].cols(); }
    [[nodiscard]] const DataMatrix& block(std::size_t m) const { return blocks_.at(m); }
    [[nodiscard]] const std::vector<DataMatrix>& blocks() const noexcept { return blocks_; }

  private:
    std::vector<DataMatrix> blocks_;
};

/// Reads comma-separated numeric data. A first row containing any non-numeric
/// cell is treated as a header and skipped. Blank lines are ignored.
/// Throws ParseError with the 1-based line/column of the offending cell.
DataMatrix read_csv(std::istream& in);

/// As above; file errors are reported with the path.
DataMatrix read_csv_file(const std::filesystem::path& path);

}  // namespace himax
