#include "himax/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "himax/errors.hpp"
#include "himax/format.hpp"
#include "himax/statistics.hpp"

namespace himax {

std::string_view to_string(TestStatistic stat) {
    switch (stat) {
        case TestStatistic::W: return "W_n";
        case TestStatistic::LTildeNew: return "L_tilde_new";
        case TestStatistic::LTildeOld: return "L_tilde_old";
    }
    return "unknown";
}

std::optional<TestStatistic> parse_test_statistic(std::string_view name) {
    if (name == "W_n" || name == "W") return TestStatistic::W;
    if (name == "L_tilde_new") return TestStatistic::LTildeNew;
    if (name == "L_tilde_old") return TestStatistic::LTildeOld;
    return std::nullopt;
}

ApproxKind default_approx(TestStatistic stat) {
    switch (stat) {
        case TestStatistic::W: return ApproxKind::LimitW;
        case TestStatistic::LTildeNew: return ApproxKind::Intermediate;
        case TestStatistic::LTildeOld: return ApproxKind::LimitLTilde;
    }
    return ApproxKind::LimitW;
}

ApproxParams approx_params(TestStatistic stat, std::size_t n, std::size_t p) {
    return ApproxParams(p, n, stat == TestStatistic::W ? 2u : 1u);
}

Distribution Distribution::standard_normal() {
    return {"normal", [](RandomStream& s) { return s.normal(); }};
}

Distribution Distribution::student_t(unsigned dof) {
    if (dof == 0) throw UsageError("student_t: degrees of freedom must be positive");
    const double df = dof;
    return {"t" + std::to_string(dof), [df](RandomStream& s) { return s.student_t(df); }};
}

Distribution Distribution::custom(std::string name, std::function<double(RandomStream&)> draw) {
    if (!draw) throw UsageError("custom distribution '" + name + "' has no sampler");
    return {std::move(name), std::move(draw)};
}

Distribution parse_distribution(std::string_view spec) {
    if (spec == "normal" || spec == "standard_normal") return Distribution::standard_normal();
    std::string_view digits;
    if (spec.starts_with("student_t:")) {
        digits = spec.substr(10);
    } else if (spec.starts_with("t")) {
        digits = spec.substr(1);
    }
    unsigned dof = 0;
    if (!digits.empty()) {
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), dof);
        if (ec == std::errc() && ptr == digits.data() + digits.size() && dof > 0) {
            return Distribution::student_t(dof);
        }
    }
    throw UsageError("unknown distribution '" + std::string(spec) +
                     "' (expected normal, t<dof> or student_t:<dof>)");
}

const CellResult* SimResult::find(std::size_t n, std::size_t p, TestStatistic stat) const {
    for (const auto& cell : cells) {
        if (cell.n == n && cell.p == p && cell.statistic == stat) return &cell;
    }
    return nullptr;
}

void validate(const SimConfig& config) {
    if (config.replications < 100) throw UsageError("replications must be >= 100");
    if (!(config.nominal_alpha > 0.0 && config.nominal_alpha < 1.0)) {
        throw UsageError("nominal alpha must lie in (0, 1)");
    }
    if (config.grid.empty()) throw UsageError("empty (n, p) grid");
    if (config.statistics.empty()) throw UsageError("no statistics requested");
    if (!config.distribution.draw) throw UsageError("distribution has no sampler");
    for (const auto& g : config.grid) {
        if (g.n < 4 || g.p < 2) {
            throw UsageError("grid point (n = " + std::to_string(g.n) + ", p = " +
                             std::to_string(g.p) + ") needs n >= 4 and p >= 2");
        }
    }
    for (const auto& [stat, kind] : config.approximations) {
        const bool ok = stat == TestStatistic::W ? kind != ApproxKind::LimitLTilde
                                                 : kind != ApproxKind::LimitW;
        if (!ok) {
            throw UsageError(std::string(to_string(stat)) + " cannot use approximation " +
                             std::string(to_string(kind)));
        }
    }
}

DataMatrix sample_null(const Distribution& distribution, std::size_t n, std::size_t p,
                       RandomStream& stream) {
    DataMatrix m(n, p);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < p; ++i) m(k, i) = distribution.draw(stream);
    }
    return m;
}

RandomStream replication_stream(const SimConfig& config, std::size_t n, std::size_t p,
                                std::size_t replication) {
    return RandomStream(derive_key(config.seed, {config.stream_label, n, p}), replication);
}

namespace {

constexpr std::size_t kChunk = 50;

struct CellPlan {
    GridPoint point;
    std::vector<ApproxKind> kinds;
    std::vector<double> critical;
};

}  // namespace

SimResult estimate_levels(const SimConfig& config, unsigned threads) {
    validate(config);
    const std::size_t stats = config.statistics.size();
    const std::size_t reps = config.replications;

    std::vector<CellPlan> plan;
    for (const auto& g : config.grid) {
        CellPlan cell{g, {}, {}};
        for (auto stat : config.statistics) {
            const auto it = config.approximations.find(stat);
            const ApproxKind kind = it == config.approximations.end() ? default_approx(stat) : it->second;
            cell.kinds.push_back(kind);
            cell.critical.push_back(
                critical_value(approx_params(stat, g.n, g.p), kind, config.nominal_alpha));
        }
        plan.push_back(std::move(cell));
    }

    const std::size_t chunks_per_cell = (reps + kChunk - 1) / kChunk;
    const std::size_t total_chunks = chunks_per_cell * plan.size();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total_chunks));

    std::vector<std::size_t> rejections(plan.size() * stats, 0);
    std::size_t violations = 0;
    std::mutex merge;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;

    auto worker = [&] {
        std::vector<std::size_t> local(rejections.size(), 0);
        std::size_t local_violations = 0;
        try {
            for (std::size_t job = next++; job < total_chunks && !failed; job = next++) {
                const std::size_t c = job / chunks_per_cell;
                const std::size_t first = (job % chunks_per_cell) * kChunk;
                const std::size_t last = std::min(reps, first + kChunk);
                const auto& cell = plan[c];
                const std::size_t n = cell.point.n;
                const std::size_t p = cell.point.p;
                for (std::size_t r = first; r < last; ++r) {
                    RandomStream stream = replication_stream(config, n, p, r);
                    const DataMatrix sample = sample_null(config.distribution, n, p, stream);
                    SplitScan scan;
                    try {
                        scan = split_correlation_scan(sample);
                    } catch (const DegenerateColumnError& e) {
                        throw DomainError("degenerate null sample at n = " + std::to_string(n) +
                                          ", p = " + std::to_string(p) + ", replication " +
                                          std::to_string(r) + ": " + e.what());
                    }
                    const double lt2 = scan.l_tilde.value * scan.l_tilde.value;
                    if (scan.l_squared.value < lt2 - 1e-12) ++local_violations;
                    const StatValue w = statistic_W(scan, n, p);
                    const StatValue lt = statistic_L_tilde(scan, n, p);
                    for (std::size_t s = 0; s < stats; ++s) {
                        const double value =
                            config.statistics[s] == TestStatistic::W ? w.value : lt.value;
                        if (value > cell.critical[s]) ++local[c * stats + s];
                    }
                }
            }
        } catch (...) {
            std::lock_guard lock(merge);
            if (!error) error = std::current_exception();
            failed = true;
        }
        std::lock_guard lock(merge);
        for (std::size_t i = 0; i < local.size(); ++i) rejections[i] += local[i];
        violations += local_violations;
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    SimResult result;
    result.domination_violations = violations;
    const double r = static_cast<double>(reps);
    for (std::size_t c = 0; c < plan.size(); ++c) {
        for (std::size_t s = 0; s < stats; ++s) {
            CellResult cell;
            cell.distribution = config.distribution.name;
            cell.n = plan[c].point.n;
            cell.p = plan[c].point.p;
            cell.statistic = config.statistics[s];
            cell.replications = reps;
            cell.rejections = rejections[c * stats + s];
            cell.level = static_cast<double>(cell.rejections) / r;
            cell.standard_error = std::sqrt(cell.level * (1.0 - cell.level) / r);
            cell.critical_value = plan[c].critical[s];
            cell.approx = plan[c].kinds[s];
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

std::string to_csv(const SimResult& result) {
    std::ostringstream out;
    out << "distribution,n,p,statistic,R,rejections,level,se,critical_value,approx\n";
    for (const auto& c : result.cells) {
        out << c.distribution << ',' << c.n << ',' << c.p << ',' << to_string(c.statistic) << ','
            << c.replications << ',' << c.rejections << ',' << format_shortest(c.level) << ','
            << format_shortest(c.standard_error) << ',' << format_shortest(c.critical_value) << ','
            << to_string(c.approx) << '\n';
    }
    return out.str();
}

std::string to_text(const SimResult& result) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-12s %6s %6s %-12s %7s %10s %16s %16s %16s %-13s\n",
                  "distribution", "n", "p", "statistic", "R", "rejections", "level", "se",
                  "critical_value", "approx");
    out << line;
    for (const auto& c : result.cells) {
        std::snprintf(line, sizeof line, "%-12s %6zu %6zu %-12s %7zu %10zu %16s %16s %16s %-13s\n",
                      c.distribution.c_str(), c.n, c.p, std::string(to_string(c.statistic)).c_str(),
                      c.replications, c.rejections, format_sig10(c.level).c_str(),
                      format_sig10(c.standard_error).c_str(), format_sig10(c.critical_value).c_str(),
                      std::string(to_string(c.approx)).c_str());
        out << line;
    }
    return out.str();
}

SimConfig table_config(int which, std::size_t replications, std::uint64_t seed) {
    if (which != 1 && which != 2) throw UsageError("table must be 1 or 2");
    SimConfig config;
    config.distribution = which == 1 ? Distribution::standard_normal() : Distribution::student_t(7);
    for (auto p : kTableDims) {
        for (auto n : kTableSizes) config.grid.push_back({n, p});
    }
    config.replications = replications;
    config.nominal_alpha = 0.05;
    config.seed = seed;
    config.stream_label = static_cast<std::uint64_t>(which);
    return config;
}

std::string render_table(const SimResult& result, int which, std::size_t replications) {
    std::ostringstream out;
    char line[256];
    out << "Estimated significance levels, alpha = 0.05, X ~ "
        << (which == 1 ? "N(0, 1)" : "t_7") << ", R = " << replications << "\n";
    std::snprintf(line, sizeof line, "%5s  %-12s", "p", "statistic");
    out << line;
    for (auto n : kTableSizes) {
        std::snprintf(line, sizeof line, "  %8s", ("n = " + std::to_string(n)).c_str());
        out << line;
    }
    out << '\n';
    for (auto p : kTableDims) {
        bool first = true;
        for (auto stat : {TestStatistic::W, TestStatistic::LTildeNew, TestStatistic::LTildeOld}) {
            if (first) {
                std::snprintf(line, sizeof line, "%5zu  %-12s", p, std::string(to_string(stat)).c_str());
            } else {
                std::snprintf(line, sizeof line, "%5s  %-12s", "", std::string(to_string(stat)).c_str());
            }
            first = false;
            out << line;
            for (auto n : kTableSizes) {
                const CellResult* cell = result.find(n, p, stat);
                if (cell) {
                    std::snprintf(line, sizeof line, "  %8.4f", cell->level);
                } else {
                    std::snprintf(line, sizeof line, "  %8s", "-");
                }
                out << line;
            }
            out << '\n';
        }
    }
    return out.str();
}

TableReproduction reproduce_table(int which, std::size_t replications, std::uint64_t seed,
                                  unsigned threads) {
    TableReproduction out;
    out.which = which;
    out.result = estimate_levels(table_config(which, replications, seed), threads);
    out.csv = to_csv(out.result);
    out.text = render_table(out.result, which, replications);
    return out;
}

}  // namespace himax
