#include "himax/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "himax/errors.hpp"
#include "himax/numerics.hpp"

namespace himax {
namespace {

// Fixed-order four-lane dot product. The summation order never depends on
// anything but the length, so results are reproducible.
double dot(const double* a, const double* b, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        s0 += a[k] * b[k];
        s1 += a[k + 1] * b[k + 1];
        s2 += a[k + 2] * b[k + 2];
        s3 += a[k + 3] * b[k + 3];
    }
    for (; k < n; ++k) s0 += a[k] * b[k];
    return (s0 + s1) + (s2 + s3);
}

void require_shape(std::size_t n, std::size_t p, std::size_t min_n, const char* what) {
    if (p < 2 || n < min_n) {
        throw ShapeError(std::string(what) + ": need n >= " + std::to_string(min_n) +
                         " and p >= 2, got n = " + std::to_string(n) + ", p = " +
                         std::to_string(p));
    }
}

// A column is degenerate when it is constant or its centered energy is lost
// in rounding relative to its raw energy.
bool negligible_energy(double centered, double raw, std::size_t n) {
    const double eps = std::numeric_limits<double>::epsilon();
    return !(centered > 0.0) || !std::isfinite(centered) ||
           centered <= raw * static_cast<double>(n) * static_cast<double>(n) * eps * eps;
}

// Columns demeaned by their full-sample mean and scaled to unit Euclidean norm.
DataMatrix centered_unit_columns(const DataMatrix& data) {
    const std::size_t n = data.rows();
    DataMatrix out(n, data.cols());
    for (std::size_t c = 0; c < data.cols(); ++c) {
        auto src = data.column(c);
        auto dst = out.column(c);
        const double mean = std::accumulate(src.begin(), src.end(), 0.0) / static_cast<double>(n);
        const bool constant =
            std::all_of(src.begin(), src.end(), [&](double x) { return x == src.front(); });
        double raw = 0.0;
        double energy = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            dst[k] = src[k] - mean;
            raw += src[k] * src[k];
            energy += dst[k] * dst[k];
        }
        if (constant || negligible_energy(energy, raw, n)) {
            throw DegenerateColumnError(c, "column has zero sample variance");
        }
        const double scale = 1.0 / std::sqrt(energy);
        for (auto& x : dst) x *= scale;
    }
    return out;
}

DataMatrix unit_columns(const DataMatrix& data) {
    DataMatrix out = data;
    for (std::size_t c = 0; c < data.cols(); ++c) {
        auto col = out.column(c);
        const double energy = dot(col.data(), col.data(), col.size());
        if (!(energy > 0.0) || !std::isfinite(energy)) {
            throw DegenerateColumnError(c, "column has zero Euclidean norm");
        }
        const double scale = 1.0 / std::sqrt(energy);
        for (auto& x : col) x *= scale;
    }
    return out;
}

// max_{i<j} |<u_i, u_j>|, ties resolved to the lexicographically smallest pair.
PairMax max_abs_inner(const DataMatrix& unit) {
    PairMax best{-1.0, {}};
    const std::size_t n = unit.rows();
    for (std::size_t i = 0; i + 1 < unit.cols(); ++i) {
        const double* ui = unit.column(i).data();
        for (std::size_t j = i + 1; j < unit.cols(); ++j) {
            const double v = std::fabs(dot(ui, unit.column(j).data(), n));
            if (v > best.value) best = {v, {i, j}};
        }
    }
    best.value = std::min(best.value, 1.0);
    return best;
}

}  // namespace

std::string_view to_string(StatKind kind) {
    switch (kind) {
        case StatKind::LTildeCentered: return "L_tilde_centered";
        case StatKind::W: return "W_n";
        case StatKind::WGeneral: return "W_pn_general";
        case StatKind::LGeneral: return "L_pn_general";
    }
    return "unknown";
}

SplitScan split_correlation_scan(const DataMatrix& data) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    require_shape(n, p, 4, "split_correlation_scan");
    const DataMatrix unit = centered_unit_columns(data);
    const std::size_t half = n / 2;
    const std::size_t rest = n - half;

    SplitScan scan{{-1.0, {}}, {-1.0, {}}};
    for (std::size_t i = 0; i + 1 < p; ++i) {
        const double* ui = unit.column(i).data();
        for (std::size_t j = i + 1; j < p; ++j) {
            const double* uj = unit.column(j).data();
            const double a = dot(ui, uj, half);
            const double b = dot(ui + half, uj + half, rest);
            const double rho = std::fabs(a + b);
            const double r2 = 2.0 * (a * a + b * b);
            if (rho > scan.l_tilde.value) scan.l_tilde = {rho, {i, j}};
            if (r2 > scan.l_squared.value) scan.l_squared = {r2, {i, j}};
        }
    }
    scan.l_tilde.value = std::min(scan.l_tilde.value, 1.0);
    return scan;
}

PairMax max_abs_correlation(const DataMatrix& data) {
    require_shape(data.rows(), data.cols(), 2, "max_abs_correlation");
    return max_abs_inner(centered_unit_columns(data));
}

StatValue statistic_L_tilde(const SplitScan& scan, std::size_t n, std::size_t p) {
    const double lt = scan.l_tilde.value;
    const double pd = static_cast<double>(p);
    StatValue out;
    out.kind = StatKind::LTildeCentered;
    out.max_squared = lt * lt;
    out.value = static_cast<double>(n) * out.max_squared - 4.0 * clipped_log(pd) + clipped_log2(pd);
    out.p = p;
    out.n = n;
    out.d = 1;
    out.argmax_pair = scan.l_tilde.pair;
    return out;
}

StatValue statistic_W(const SplitScan& scan, std::size_t n, std::size_t p) {
    StatValue out;
    out.kind = StatKind::W;
    out.max_squared = scan.l_squared.value;
    out.value = static_cast<double>(n) * out.max_squared - 4.0 * clipped_log(static_cast<double>(p));
    out.p = p;
    out.n = n;
    out.d = 2;
    out.argmax_pair = scan.l_squared.pair;
    return out;
}

StatValue statistic_L_tilde(const DataMatrix& data) {
    require_shape(data.rows(), data.cols(), 2, "statistic_L_tilde");
    const PairMax m = max_abs_correlation(data);
    SplitScan scan;
    scan.l_tilde = m;
    return statistic_L_tilde(scan, data.rows(), data.cols());
}

StatValue statistic_W(const DataMatrix& data) {
    return statistic_W(split_correlation_scan(data), data.rows(), data.cols());
}

namespace {

struct BlockMax {
    PairMax best;
    std::vector<double> energy;  // A_{n,i} = sum over blocks and rows of X^2
};

// Scans ||sum_k X_{k,i,j}||^2 over all pairs, optionally divided by A_i A_j.
BlockMax scan_blocks(const BlockSample& sample, bool normalize) {
    const std::size_t p = sample.cols();
    const std::size_t n = sample.rows();
    const std::size_t d = sample.block_count();
    require_shape(n, p, 1, "general statistic");

    BlockMax out;
    out.energy.assign(p, 0.0);
    for (const auto& block : sample.blocks()) {
        for (std::size_t i = 0; i < p; ++i) {
            const double* c = block.column(i).data();
            out.energy[i] += dot(c, c, n);
        }
    }
    if (normalize) {
        for (std::size_t i = 0; i < p; ++i) {
            if (!(out.energy[i] > 0.0)) {
                throw DegenerateColumnError(i, "column has zero energy across all blocks");
            }
        }
    }

    out.best = {-1.0, {}};
    for (std::size_t i = 0; i + 1 < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            double norm2 = 0.0;
            for (std::size_t m = 0; m < d; ++m) {
                const auto& block = sample.block(m);
                const double s = dot(block.column(i).data(), block.column(j).data(), n);
                norm2 += s * s;
            }
            if (normalize) norm2 /= out.energy[i] * out.energy[j];
            if (norm2 > out.best.value) out.best = {norm2, {i, j}};
        }
    }
    return out;
}

}  // namespace

StatValue statistic_W_general(const BlockSample& sample) {
    const BlockMax scan = scan_blocks(sample, false);
    const auto d = static_cast<unsigned>(sample.block_count());
    StatValue out;
    out.kind = StatKind::WGeneral;
    out.max_squared = scan.best.value;
    out.p = sample.cols();
    out.n = sample.rows();
    out.d = d;
    out.value = out.max_squared / static_cast<double>(out.n) -
                centering_constant(static_cast<double>(out.p), d);
    out.argmax_pair = scan.best.pair;
    return out;
}

StatValue statistic_L_general(const BlockSample& sample) {
    const BlockMax scan = scan_blocks(sample, true);
    const auto d = static_cast<unsigned>(sample.block_count());
    StatValue out;
    out.kind = StatKind::LGeneral;
    out.max_squared = scan.best.value;
    out.p = sample.cols();
    out.n = sample.rows();
    out.d = d;
    const double dd = static_cast<double>(d);
    out.value = dd * dd * static_cast<double>(out.n) * out.max_squared -
                centering_constant(static_cast<double>(out.p), d);
    out.argmax_pair = scan.best.pair;
    return out;
}

PairMax mutual_coherence(const DataMatrix& dictionary) {
    require_shape(dictionary.rows(), dictionary.cols(), 1, "mutual_coherence");
    return max_abs_inner(unit_columns(dictionary));
}

}  // namespace himax
