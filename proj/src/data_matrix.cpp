#include "himax/data_matrix.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string_view>

#include "himax/errors.hpp"

namespace himax {

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

DataMatrix DataMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    DataMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) {
            throw ShapeError("from_rows: row " + std::to_string(r) + " has " +
                             std::to_string(rows[r].size()) + " entries, expected " +
                             std::to_string(m.cols()));
        }
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

DataMatrix DataMatrix::from_columns(const std::vector<std::vector<double>>& columns) {
    if (columns.empty()) return {};
    DataMatrix m(columns.front().size(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != m.rows()) {
            throw ShapeError("from_columns: column " + std::to_string(c) + " has " +
                             std::to_string(columns[c].size()) + " entries, expected " +
                             std::to_string(m.rows()));
        }
        std::copy(columns[c].begin(), columns[c].end(), m.column(c).begin());
    }
    return m;
}

DataMatrix DataMatrix::row_slice(std::size_t first, std::size_t count) const {
    if (first + count > rows_) {
        throw ShapeError("row_slice: range exceeds matrix rows");
    }
    DataMatrix out(count, cols_);
    for (std::size_t c = 0; c < cols_; ++c) {
        auto src = column(c).subspan(first, count);
        std::copy(src.begin(), src.end(), out.column(c).begin());
    }
    return out;
}

BlockSample::BlockSample(std::vector<DataMatrix> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) {
        throw ShapeError("BlockSample: need at least one block");
    }
    const auto n = blocks_.front().rows();
    const auto p = blocks_.front().cols();
    if (n == 0 || p == 0) {
        throw ShapeError("BlockSample: blocks must be non-empty");
    }
    for (std::size_t m = 1; m < blocks_.size(); ++m) {
        if (blocks_[m].rows() != n || blocks_[m].cols() != p) {
            throw ShapeError("BlockSample: block " + std::to_string(m) + " is " +
                             std::to_string(blocks_[m].rows()) + "x" +
                             std::to_string(blocks_[m].cols()) + ", expected " +
                             std::to_string(n) + "x" + std::to_string(p));
        }
    }
}

BlockSample BlockSample::split_rows(const DataMatrix& data, std::size_t count) {
    if (count == 0 || data.rows() == 0 || data.rows() % count != 0) {
        throw ShapeError("split_rows: " + std::to_string(data.rows()) +
                         " rows cannot be split into " + std::to_string(count) + " equal blocks");
    }
    const std::size_t size = data.rows() / count;
    std::vector<DataMatrix> blocks;
    blocks.reserve(count);
    for (std::size_t m = 0; m < count; ++m) blocks.push_back(data.row_slice(m * size, size));
    return BlockSample(std::move(blocks));
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view cell) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    if (cell.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::vector<std::string_view> split_cells(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

}  // namespace

DataMatrix read_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        if (trim(view).empty()) continue;
        const auto cells = split_cells(view);

        if (first_content) {
            first_content = false;
            width = cells.size();
            bool numeric = true;
            for (auto cell : cells) numeric = numeric && parse_number(cell).has_value();
            if (!numeric) continue;  // header row
        }
        if (cells.size() != width) {
            throw ParseError(line_no, std::min(cells.size(), width) + 1,
                             "expected " + std::to_string(width) + " cells, found " +
                                 std::to_string(cells.size()));
        }
        std::vector<double> row;
        row.reserve(width);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto value = parse_number(cells[c]);
            if (!value) {
                throw ParseError(line_no, c + 1,
                                 "malformed number '" + std::string(trim(cells[c])) + "'");
            }
            row.push_back(*value);
        }
        rows.push_back(std::move(row));
    }
    return DataMatrix::from_rows(rows);
}

DataMatrix read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    try {
        return read_csv(in);
    } catch (const ParseError& e) {
        throw ParseError(e.row(), e.column(), e.detail(), path.string());
    }
}

}  // namespace himax
