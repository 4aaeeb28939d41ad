#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "himax/approximations.hpp"
#include "himax/data_matrix.hpp"
#include "himax/random.hpp"

namespace himax {

/// The three tests compared in the level study.
enum class TestStatistic {
    W,          ///< W_n at its limit critical value by default
    LTildeNew,  ///< Ltilde at the intermediate (d = 1) critical value by default
    LTildeOld,  ///< Ltilde at the limit critical value by default
};

std::string_view to_string(TestStatistic stat);
std::optional<TestStatistic> parse_test_statistic(std::string_view name);

/// Critical-value approximation a statistic uses unless overridden.
ApproxKind default_approx(TestStatistic stat);

/// Parameters of the approximation for one statistic at (n, p): d = 2 for W_n,
/// d = 1 for Ltilde.
ApproxParams approx_params(TestStatistic stat, std::size_t n, std::size_t p);

/// A named i.i.d. entry distribution.
struct Distribution {
    std::string name;
    std::function<double(RandomStream&)> draw;

    static Distribution standard_normal();
    static Distribution student_t(unsigned dof);
    static Distribution custom(std::string name, std::function<double(RandomStream&)> draw);
};

/// Parses "normal" or "t<dof>" / "student_t:<dof>". Throws UsageError otherwise.
Distribution parse_distribution(std::string_view spec);

struct GridPoint {
    std::size_t n = 0;
    std::size_t p = 0;
};

struct SimConfig {
    Distribution distribution = Distribution::standard_normal();
    std::vector<GridPoint> grid;
    std::size_t replications = 5000;
    double nominal_alpha = 0.05;
    std::uint64_t seed = 0;
    std::vector<TestStatistic> statistics{TestStatistic::W, TestStatistic::LTildeNew,
                                          TestStatistic::LTildeOld};
    /// Per-statistic override of default_approx.
    std::map<TestStatistic, ApproxKind> approximations;
    /// Extra label folded into every stream key (the table number for reproductions).
    std::uint64_t stream_label = 0;
};

/// Throws UsageError for R < 100, alpha outside (0, 1), an empty grid or
/// statistic list, a grid point with n < 4 or p < 2, or an invalid pairing.
void validate(const SimConfig& config);

struct CellResult {
    std::string distribution;
    std::size_t n = 0;
    std::size_t p = 0;
    TestStatistic statistic = TestStatistic::W;
    std::size_t replications = 0;
    std::size_t rejections = 0;
    double level = 0.0;
    double standard_error = 0.0;
    double critical_value = 0.0;
    ApproxKind approx = ApproxKind::LimitW;
};

struct SimResult {
    std::vector<CellResult> cells;
    /// Replications where max r^2 < Ltilde^2 was observed; always 0 in exact arithmetic.
    std::size_t domination_violations = 0;

    [[nodiscard]] const CellResult* find(std::size_t n, std::size_t p, TestStatistic stat) const;
};

/// n x p matrix of i.i.d. draws, filled observation by observation.
DataMatrix sample_null(const Distribution& distribution, std::size_t n, std::size_t p,
                       RandomStream& stream);

/// The stream used for replication `replication` of grid cell (n, p).
RandomStream replication_stream(const SimConfig& config, std::size_t n, std::size_t p,
                                std::size_t replication);

/// Rejection counts under H0 for every (grid point, statistic). Deterministic in
/// config; `threads` (0 = hardware concurrency) only affects speed.
SimResult estimate_levels(const SimConfig& config, unsigned threads = 0);

/// CSV with columns distribution,n,p,statistic,R,rejections,level,se,critical_value,approx.
std::string to_csv(const SimResult& result);
/// Aligned text, one line per cell.
std::string to_text(const SimResult& result);

inline constexpr std::size_t kTableDims[] = {4, 8, 16, 32, 64, 128};
inline constexpr std::size_t kTableSizes[] = {16, 32, 64, 128, 256};

struct TableReproduction {
    int which = 1;
    SimResult result;
    std::string csv;
    std::string text;
};

/// The 6 x 5 (p, n) grid for all three statistics at alpha = 0.05; table 1
/// draws N(0, 1) entries, table 2 draws t_7 entries.
SimConfig table_config(int which, std::size_t replications, std::uint64_t seed);
TableReproduction reproduce_table(int which, std::size_t replications, std::uint64_t seed,
                                  unsigned threads = 0);
/// Rows grouped by p then statistic, one column per n.
std::string render_table(const SimResult& result, int which, std::size_t replications);

}  // namespace himax
