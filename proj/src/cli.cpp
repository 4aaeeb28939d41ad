#include "himax/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "himax/approximations.hpp"
#include "himax/coherence.hpp"
#include "himax/data_matrix.hpp"
#include "himax/errors.hpp"
#include "himax/format.hpp"
#include "himax/montecarlo.hpp"
#include "himax/statistics.hpp"
#include "himax/version.hpp"

namespace himax::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Output {
    Json inputs = Json::object();
    Json results;  // flat object, or array of flat objects
    std::optional<std::string> csv;
    std::optional<std::string> text;
};

std::string scalar_text(const Json& v, bool shortest) {
    if (v.is_number_float()) {
        const double x = v.get<double>();
        return shortest ? format_shortest(x) : format_sig10(x);
    }
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string render_csv(const Json& results) {
    std::ostringstream out;
    const Json rows = results.is_array() ? results : Json::array({results});
    if (rows.empty()) return {};
    bool first = true;
    for (const auto& [key, value] : rows.front().items()) {
        out << (first ? "" : ",") << key;
        first = false;
    }
    out << '\n';
    for (const auto& row : rows) {
        first = true;
        for (const auto& [key, value] : row.items()) {
            out << (first ? "" : ",") << scalar_text(value, true);
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

std::string render_text(const Json& results) {
    std::ostringstream out;
    if (results.is_object()) {
        std::size_t width = 0;
        for (const auto& [key, value] : results.items()) width = std::max(width, key.size());
        for (const auto& [key, value] : results.items()) {
            out << key << std::string(width - key.size(), ' ') << "  " << scalar_text(value, false)
                << '\n';
        }
        return out.str();
    }
    if (results.empty()) return {};
    std::vector<std::string> keys;
    for (const auto& [key, value] : results.front().items()) keys.push_back(key);
    std::vector<std::size_t> widths;
    for (const auto& key : keys) widths.push_back(key.size());
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : results) {
        std::vector<std::string> line;
        for (std::size_t c = 0; c < keys.size(); ++c) {
            line.push_back(scalar_text(row.at(keys[c]), false));
            widths[c] = std::max(widths[c], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            out << (c ? "  " : "") << std::string(widths[c] - line[c].size(), ' ') << line[c];
        }
        out << '\n';
    };
    emit(keys);
    for (const auto& line : cells) emit(line);
    return out.str();
}

void emit(std::ostream& out, const std::string& format, const std::string& command,
          const Output& o) {
    if (format == "json") {
        Json doc;
        doc["command"] = command;
        doc["inputs"] = o.inputs;
        doc["results"] = o.results;
        doc["version"] = kVersion;
        out << doc.dump(2) << '\n';
    } else if (format == "csv") {
        out << (o.csv ? *o.csv : render_csv(o.results));
    } else {
        out << (o.text ? *o.text : render_text(o.results));
    }
}

Json cell_json(const CellResult& c) {
    Json j;
    j["distribution"] = c.distribution;
    j["n"] = c.n;
    j["p"] = c.p;
    j["statistic"] = std::string(to_string(c.statistic));
    j["R"] = c.replications;
    j["rejections"] = c.rejections;
    j["level"] = c.level;
    j["se"] = c.standard_error;
    j["critical_value"] = c.critical_value;
    j["approx"] = std::string(to_string(c.approx));
    return j;
}

Json cells_json(const SimResult& result) {
    Json rows = Json::array();
    for (const auto& c : result.cells) rows.push_back(cell_json(c));
    return rows;
}

ApproxKind require_approx(const std::string& name) {
    const auto kind = parse_approx_kind(name);
    if (!kind) {
        throw UsageError("unknown approximation '" + name +
                         "' (expected limit_W, limit_Ltilde or intermediate)");
    }
    return *kind;
}

std::vector<TestStatistic> parse_statistics(const std::vector<std::string>& names) {
    std::vector<TestStatistic> out;
    for (const auto& name : names) {
        const auto stat = parse_test_statistic(name);
        if (!stat) {
            throw UsageError("unknown statistic '" + name +
                             "' (expected W_n, L_tilde_new or L_tilde_old)");
        }
        out.push_back(*stat);
    }
    return out;
}

template <class T>
T json_get(const Json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw UsageError(std::string("config field '") + key + "': " + e.what());
    }
}

SimConfig config_from_json(const Json& j, std::uint64_t default_seed) {
    if (!j.is_object()) throw UsageError("simulation config must be a JSON object");
    SimConfig config;
    config.distribution = parse_distribution(json_get<std::string>(j, "distribution", "normal"));
    if (j.contains("grid")) {
        for (const auto& g : j.at("grid")) {
            if (!g.is_array() || g.size() != 2) throw UsageError("grid entries must be [n, p]");
            config.grid.push_back({g[0].get<std::size_t>(), g[1].get<std::size_t>()});
        }
    } else {
        const auto ns = json_get<std::vector<std::size_t>>(j, "n", {});
        const auto ps = json_get<std::vector<std::size_t>>(j, "p", {});
        for (auto p : ps) {
            for (auto n : ns) config.grid.push_back({n, p});
        }
    }
    config.replications = json_get<std::size_t>(j, "replications", config.replications);
    config.nominal_alpha = json_get<double>(j, "nominal_alpha", config.nominal_alpha);
    config.seed = json_get<std::uint64_t>(j, "seed", default_seed);
    if (j.contains("statistics")) {
        config.statistics = parse_statistics(json_get<std::vector<std::string>>(j, "statistics", {}));
    }
    if (j.contains("approximations")) {
        for (const auto& [name, kind] : j.at("approximations").items()) {
            const auto stat = parse_statistics({name}).front();
            config.approximations[stat] = require_approx(kind.get<std::string>());
        }
    }
    return config;
}

Json config_json(const SimConfig& config) {
    Json j;
    j["distribution"] = config.distribution.name;
    Json grid = Json::array();
    for (const auto& g : config.grid) grid.push_back({g.n, g.p});
    j["grid"] = grid;
    j["replications"] = config.replications;
    j["nominal_alpha"] = config.nominal_alpha;
    j["seed"] = config.seed;
    Json stats = Json::array();
    for (auto s : config.statistics) stats.push_back(std::string(to_string(s)));
    j["statistics"] = stats;
    return j;
}

std::size_t as_dimension(double x, const char* what) {
    if (!(x >= 2.0) || x != std::floor(x) || x > 1e15) {
        throw UsageError(std::string(what) + " must be an integer >= 2");
    }
    return static_cast<std::size_t>(x);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"High-dimensional independence tests, critical values and level studies", "himax"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    std::uint64_t seed = 42;
    int threads_flag = -1;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--seed", seed, "Random seed for simulations");
    app.add_option("--threads", threads_flag, "Worker threads (0 = auto; env HIMAX_THREADS)")
        ->check(CLI::NonNegativeNumber);
    app.set_version_flag("--version", std::string("himax ") + kVersion);

    // test
    auto* test = app.add_subcommand("test", "Run an independence test on a CSV dataset");
    std::string test_file;
    std::string test_stat = "W";
    std::string test_approx;
    double test_alpha = 0.05;
    std::size_t test_blocks = 0;
    test->add_option("--file", test_file, "CSV file: rows = observations, columns = variates")
        ->required();
    test->add_option("--statistic", test_stat, "W, Ltilde, W_general or L_general")
        ->check(CLI::IsMember({"W", "Ltilde", "W_general", "L_general"}));
    test->add_option("--approx", test_approx, "limit_W, limit_Ltilde or intermediate");
    test->add_option("--alpha", test_alpha, "Nominal level");
    test->add_option("--blocks", test_blocks,
                     "Block count d for the general statistics (rows split into d equal blocks)");

    // critval
    auto* critval = app.add_subcommand("critval", "Critical value y_alpha of an approximation");
    std::size_t cv_p = 0;
    std::size_t cv_n = 0;
    unsigned cv_d = 1;
    std::string cv_approx = "intermediate";
    double cv_alpha = 0.05;
    critval->add_option("--p", cv_p, "Dimension")->required();
    critval->add_option("--n", cv_n, "Sample size (informational)");
    critval->add_option("--d", cv_d, "Chi-square degrees of freedom");
    critval->add_option("--approx", cv_approx, "limit_W, limit_Ltilde or intermediate");
    critval->add_option("--alpha", cv_alpha, "Nominal level");

    // coherence
    auto* coherence = app.add_subcommand("coherence", "Sparse-recovery coherence certificate");
    std::size_t co_n = 0;
    std::size_t co_p = 0;
    std::string co_file;
    double co_alpha = 0.05;
    coherence->add_option("--n", co_n, "Dictionary rows");
    coherence->add_option("--p", co_p, "Dictionary columns");
    coherence->add_option("--file", co_file, "CSV dictionary to certify and check");
    coherence->add_option("--alpha", co_alpha, "Failure probability");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo significance levels under H0");
    std::string sim_config_file;
    std::string sim_dist = "normal";
    std::vector<std::size_t> sim_n;
    std::vector<std::size_t> sim_p;
    std::size_t sim_reps = 5000;
    double sim_alpha = 0.05;
    std::vector<std::string> sim_stats;
    simulate->add_option("--config", sim_config_file, "JSON simulation config");
    simulate->add_option("--distribution", sim_dist, "normal, t<dof> or student_t:<dof>");
    simulate->add_option("--n", sim_n, "Sample sizes")->delimiter(',');
    simulate->add_option("--p", sim_p, "Dimensions")->delimiter(',');
    simulate->add_option("--replications", sim_reps, "Replications per cell");
    simulate->add_option("--alpha", sim_alpha, "Nominal level");
    simulate->add_option("--statistics", sim_stats, "W_n, L_tilde_new, L_tilde_old")
        ->delimiter(',');

    // table
    auto* table = app.add_subcommand("table", "Reproduce a level table (1: normal, 2: t_7)");
    int tb_which = 1;
    std::size_t tb_reps = 5000;
    table->add_option("--which", tb_which, "Table number")->check(CLI::IsMember({1, 2}));
    table->add_option("--replications", tb_reps, "Replications per cell");

    // rategap
    auto* rategap = app.add_subcommand("rategap", "Gap between intermediate and limit laws");
    std::vector<double> rg_p;
    std::vector<double> rg_y;
    rategap->add_option("--p", rg_p, "Dimensions (n identified with p)")->delimiter(',')->required();
    rategap->add_option("--y", rg_y, "Evaluation points")->delimiter(',')->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << e.what() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    unsigned threads = 0;
    if (threads_flag >= 0) {
        threads = static_cast<unsigned>(threads_flag);
    } else if (const char* env = std::getenv("HIMAX_THREADS"); env && *env) {
        threads = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }

    std::string command;
    Output o;
    try {
        if (*test) {
            command = "test";
            const DataMatrix data = read_csv_file(test_file);
            StatValue stat;
            std::optional<ApproxParams> params;
            ApproxKind kind = ApproxKind::Intermediate;
            if (test_stat == "W") {
                stat = statistic_W(data);
                params.emplace(data.cols(), data.rows(), 2u);
                kind = ApproxKind::LimitW;
            } else if (test_stat == "Ltilde") {
                stat = statistic_L_tilde(data);
                params.emplace(data.cols(), data.rows(), 1u);
            } else {
                if (test_blocks == 0) throw UsageError("--blocks is required for " + test_stat);
                const BlockSample sample = BlockSample::split_rows(data, test_blocks);
                stat = test_stat == "W_general" ? statistic_W_general(sample)
                                                : statistic_L_general(sample);
                params.emplace(sample.cols(), sample.rows(), static_cast<unsigned>(test_blocks));
            }
            if (!test_approx.empty()) kind = require_approx(test_approx);
            check_pairing(stat, kind, *params);
            const double crit = critical_value(*params, kind, test_alpha);
            const double pv = p_value(stat, kind, *params);

            o.inputs["file"] = test_file;
            o.inputs["statistic"] = test_stat;
            o.inputs["approx"] = std::string(to_string(kind));
            o.inputs["alpha"] = test_alpha;
            if (test_blocks) o.inputs["blocks"] = test_blocks;
            o.results["statistic"] = std::string(to_string(stat.kind));
            o.results["value"] = stat.value;
            o.results["max_squared"] = stat.max_squared;
            o.results["pair_i"] = stat.argmax_pair.i;
            o.results["pair_j"] = stat.argmax_pair.j;
            o.results["n"] = stat.n;
            o.results["p"] = stat.p;
            o.results["d"] = stat.d;
            o.results["approx"] = std::string(to_string(kind));
            o.results["alpha"] = test_alpha;
            o.results["critical_value"] = crit;
            o.results["p_value"] = pv;
            o.results["decision"] = stat.value > crit ? "reject" : "accept";
        } else if (*critval) {
            command = "critval";
            const ApproxKind kind = require_approx(cv_approx);
            const ApproxParams params(cv_p, cv_n, cv_d);
            const double y = critical_value(params, kind, cv_alpha);
            o.inputs["p"] = cv_p;
            o.inputs["n"] = cv_n;
            o.inputs["d"] = cv_d;
            o.inputs["approx"] = cv_approx;
            o.inputs["alpha"] = cv_alpha;
            o.results["approx"] = cv_approx;
            o.results["alpha_p"] = params.alpha_p();
            o.results["critical_value"] = y;
            o.results["cdf_at_critical_value"] = approx_cdf(kind, params, y);
        } else if (*coherence) {
            command = "coherence";
            std::optional<DataMatrix> dict;
            if (!co_file.empty()) {
                dict = read_csv_file(co_file);
                if (co_n && co_n != dict->rows()) throw UsageError("--n disagrees with the file");
                if (co_p && co_p != dict->cols()) throw UsageError("--p disagrees with the file");
                co_n = dict->rows();
                co_p = dict->cols();
                o.inputs["file"] = co_file;
            } else if (co_n == 0 || co_p == 0) {
                throw UsageError("coherence needs --n and --p, or --file");
            }
            const CoherenceCertificate cert = certify(co_n, co_p, co_alpha);
            o.inputs["n"] = co_n;
            o.inputs["p"] = co_p;
            o.inputs["alpha"] = co_alpha;
            o.results["n"] = cert.n;
            o.results["p"] = cert.p;
            o.results["alpha"] = cert.alpha;
            o.results["y_alpha"] = cert.y_alpha;
            o.results["alpha_p"] = cert.alpha_p;
            o.results["m_alpha"] = cert.m_alpha;
            o.results["sparsity_threshold"] = cert.sparsity_threshold;
            o.results["certifies_nonzero"] = cert.certifies_nonzero;
            if (dict) {
                const CoherenceCheck check = verify_on_sample(*dict, cert);
                o.results["coherence"] = check.coherence.value;
                o.results["pair_i"] = check.coherence.pair.i;
                o.results["pair_j"] = check.coherence.pair.j;
                o.results["bound_holds"] = check.bound_holds;
            }
        } else if (*simulate) {
            command = "simulate";
            SimConfig config;
            if (!sim_config_file.empty()) {
                std::ifstream in(sim_config_file);
                if (!in) throw std::runtime_error("cannot open '" + sim_config_file + "'");
                Json j;
                try {
                    j = Json::parse(in);
                } catch (const Json::parse_error& e) {
                    throw UsageError(sim_config_file + ": " + e.what());
                }
                config = config_from_json(j, seed);
            } else {
                config.distribution = parse_distribution(sim_dist);
                for (auto p : sim_p) {
                    for (auto n : sim_n) config.grid.push_back({n, p});
                }
                config.replications = sim_reps;
                config.nominal_alpha = sim_alpha;
                config.seed = seed;
                if (!sim_stats.empty()) config.statistics = parse_statistics(sim_stats);
            }
            const SimResult result = estimate_levels(config, threads);
            o.inputs = config_json(config);
            o.results = cells_json(result);
            o.csv = to_csv(result);
            o.text = to_text(result);
        } else if (*table) {
            command = "table";
            const TableReproduction t = reproduce_table(tb_which, tb_reps, seed, threads);
            o.inputs["which"] = tb_which;
            o.inputs["replications"] = tb_reps;
            o.inputs["seed"] = seed;
            o.results = cells_json(t.result);
            o.csv = t.csv;
            o.text = t.text;
        } else if (*rategap) {
            command = "rategap";
            o.inputs["p"] = rg_p;
            o.inputs["y"] = rg_y;
            o.results = Json::array();
            for (double pd : rg_p) {
                const std::size_t p = as_dimension(pd, "--p");
                for (double y : rg_y) {
                    const RateGap g = rate_gap(p, y);
                    Json row;
                    row["p"] = p;
                    row["y"] = y;
                    row["exact_gap"] = g.exact_gap;
                    row["prediction"] = g.prediction;
                    row["ratio"] = g.exact_gap / g.prediction;
                    o.results.push_back(row);
                }
            }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }

    emit(out, format, command, o);
    return kExitOk;
}

}  // namespace himax::cli
