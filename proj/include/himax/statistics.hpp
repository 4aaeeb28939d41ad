#pragma once

#include <cstddef>
#include <string_view>

#include "himax/data_matrix.hpp"

namespace himax {

enum class StatKind {
    LTildeCentered,  ///< n * Ltilde^2 - 4 log p + log2 p
    W,               ///< n * L^2 - 4 log p (split-sample statistic)
    WGeneral,        ///< W_{p,n}^2 / n - alpha_p
    LGeneral,        ///< d^2 n L_{p,n}^2 - alpha_p
};

std::string_view to_string(StatKind kind);

/// Zero-based column indices, i < j.
struct ColumnPair {
    std::size_t i = 0;
    std::size_t j = 0;
    friend bool operator==(const ColumnPair&, const ColumnPair&) = default;
};

struct PairMax {
    double value = 0.0;
    ColumnPair pair;
};

struct StatValue {
    StatKind kind = StatKind::W;
    /// The centered statistic that is compared against a critical value.
    double value = 0.0;
    /// The underlying maximum before scaling/centering (Ltilde^2, L^2, W^2, or L_{p,n}^2).
    double max_squared = 0.0;
    std::size_t p = 0;
    std::size_t n = 0;
    unsigned d = 1;
    ColumnPair argmax_pair;
};

/// Both pair maxima from one pass over the full-sample centered columns.
/// Ltilde is max |rho_ij|; l_squared is max r_ij^2 = 2(A^2 + B^2) / D with the
/// halves split at floor(n/2).
struct SplitScan {
    PairMax l_tilde;
    PairMax l_squared;
};

/// Requires n >= 4 and p >= 2. Throws DegenerateColumnError for a constant column.
SplitScan split_correlation_scan(const DataMatrix& data);

/// max_{i<j} |Pearson correlation|; requires n >= 2, p >= 2.
PairMax max_abs_correlation(const DataMatrix& data);

StatValue statistic_L_tilde(const DataMatrix& data);
StatValue statistic_W(const DataMatrix& data);

/// Builds the statistic values from an already computed scan.
StatValue statistic_L_tilde(const SplitScan& scan, std::size_t n, std::size_t p);
StatValue statistic_W(const SplitScan& scan, std::size_t n, std::size_t p);

/// General d-block forms on uncentered data. Require p >= 2.
StatValue statistic_W_general(const BlockSample& sample);
/// Throws DegenerateColumnError when some column has zero energy across all blocks.
StatValue statistic_L_general(const BlockSample& sample);

/// max_{i<j} |<col_i, col_j>| / (|col_i| |col_j|) on raw, uncentered columns.
PairMax mutual_coherence(const DataMatrix& dictionary);

}  // namespace himax
