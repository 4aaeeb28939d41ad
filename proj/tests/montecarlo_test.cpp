#include <gtest/gtest.h>

#include <cmath>

#include "himax/errors.hpp"
#include "himax/montecarlo.hpp"

using namespace himax;

namespace {

SimConfig small_config() {
    SimConfig c;
    c.grid = {{16, 4}, {32, 8}};
    c.replications = 200;
    c.seed = 11;
    return c;
}

}  // namespace

TEST(SampleNull, ShapeAndDeterminism) {
    const auto dist = Distribution::standard_normal();
    RandomStream a(derive_key(1, {2}), 0);
    RandomStream b(derive_key(1, {2}), 0);
    const auto x = sample_null(dist, 16, 4, a);
    EXPECT_EQ(x.rows(), 16u);
    EXPECT_EQ(x.cols(), 4u);
    EXPECT_EQ(x, sample_null(dist, 16, 4, b));
}

TEST(SampleNull, NormalMoments) {
    const auto dist = Distribution::standard_normal();
    RandomStream s(derive_key(5, {1}), 0);
    const auto x = sample_null(dist, 1000, 1000, s);
    double sum = 0.0, sq = 0.0;
    for (double v : x.raw()) {
        sum += v;
        sq += v * v;
    }
    const double mean = sum / 1e6;
    EXPECT_NEAR(mean, 0.0, 0.004);
    EXPECT_NEAR(sq / 1e6 - mean * mean, 1.0, 0.006);
}

TEST(Distributions, Parse) {
    EXPECT_EQ(parse_distribution("normal").name, "normal");
    EXPECT_EQ(parse_distribution("t7").name, "t7");
    EXPECT_EQ(parse_distribution("student_t:5").name, "t5");
    EXPECT_THROW(parse_distribution("cauchy"), UsageError);
    EXPECT_THROW(parse_distribution("t0"), UsageError);
}

TEST(Statistics, NamesAndPairing) {
    EXPECT_EQ(to_string(TestStatistic::LTildeNew), "L_tilde_new");
    EXPECT_EQ(parse_test_statistic("W_n"), TestStatistic::W);
    EXPECT_FALSE(parse_test_statistic("nope").has_value());
    EXPECT_EQ(default_approx(TestStatistic::W), ApproxKind::LimitW);
    EXPECT_EQ(default_approx(TestStatistic::LTildeNew), ApproxKind::Intermediate);
    EXPECT_EQ(default_approx(TestStatistic::LTildeOld), ApproxKind::LimitLTilde);
    EXPECT_EQ(approx_params(TestStatistic::W, 16, 8).d(), 2u);
    EXPECT_EQ(approx_params(TestStatistic::LTildeNew, 16, 8).d(), 1u);
}

TEST(Validate, RejectsBadConfigs) {
    auto c = small_config();
    EXPECT_NO_THROW(validate(c));
    c.replications = 99;
    EXPECT_THROW(validate(c), UsageError);
    c = small_config();
    c.nominal_alpha = 1.0;
    EXPECT_THROW(validate(c), UsageError);
    c = small_config();
    c.grid.clear();
    EXPECT_THROW(validate(c), UsageError);
    c = small_config();
    c.grid.push_back({3, 4});
    EXPECT_THROW(validate(c), UsageError);
    c = small_config();
    c.grid.push_back({8, 1});
    EXPECT_THROW(validate(c), UsageError);
    c = small_config();
    c.statistics.clear();
    EXPECT_THROW(validate(c), UsageError);
    c = small_config();
    c.approximations[TestStatistic::LTildeNew] = ApproxKind::LimitW;
    EXPECT_THROW(validate(c), UsageError);
}

TEST(EstimateLevels, ShapeCountsAndBinomialIdentity) {
    const auto c = small_config();
    const auto r = estimate_levels(c, 1);
    ASSERT_EQ(r.cells.size(), 6u);
    EXPECT_EQ(r.domination_violations, 0u);
    for (const auto& cell : r.cells) {
        EXPECT_EQ(cell.replications, 200u);
        EXPECT_LE(cell.rejections, cell.replications);
        EXPECT_EQ(cell.level, cell.rejections / 200.0);
        EXPECT_EQ(cell.standard_error, std::sqrt(cell.level * (1.0 - cell.level) / 200.0));
        EXPECT_GE(cell.level, 0.0);
        EXPECT_LE(cell.level, 1.0);
        EXPECT_EQ(cell.approx, default_approx(cell.statistic));
    }
    ASSERT_NE(r.find(32, 8, TestStatistic::LTildeOld), nullptr);
    EXPECT_EQ(r.find(64, 8, TestStatistic::W), nullptr);
}

TEST(EstimateLevels, IndependentOfThreadCount) {
    auto c = small_config();
    c.distribution = Distribution::student_t(7);
    const auto one = to_csv(estimate_levels(c, 1));
    EXPECT_EQ(one, to_csv(estimate_levels(c, 3)));
    EXPECT_EQ(one, to_csv(estimate_levels(c, 8)));
    c.seed = 12;
    EXPECT_NE(one, to_csv(estimate_levels(c, 1)));
}

TEST(EstimateLevels, DegenerateSampleAborts) {
    auto c = small_config();
    c.distribution = Distribution::custom("const", [](RandomStream&) { return 1.0; });
    EXPECT_THROW(estimate_levels(c, 1), DomainError);
}

TEST(EstimateLevels, NullSpotCells) {
    SimConfig c;
    c.replications = 5000;
    c.seed = 42;
    c.grid = {{256, 4}, {16, 128}};
    const auto r = estimate_levels(c);
    // Six nearly independent pairs with n r^2 close to chi2(2): the W_n level at the
    // limit critical value is about 1 - (1 - e^{-(4 log 4 + y)/2})^6.
    const double y = critical_value(ApproxParams(4, 256, 2), ApproxKind::LimitW, 0.05);
    const double approx = 1.0 - std::pow(1.0 - std::exp(-(4.0 * std::log(4.0) + y) / 2.0), 6.0);
    EXPECT_NEAR(r.find(256, 4, TestStatistic::W)->level, approx, 4.0 * std::sqrt(approx * (1 - approx) / 5000));
    EXPECT_LE(r.find(16, 128, TestStatistic::LTildeNew)->level, 0.003);
    for (auto stat : {TestStatistic::W, TestStatistic::LTildeNew, TestStatistic::LTildeOld})
        EXPECT_LT(r.find(16, 128, stat)->level, 0.01);
    EXPECT_EQ(r.domination_violations, 0u);
}

TEST(EstimateLevels, HeavyTailsInflateW) {
    SimConfig c;
    c.distribution = Distribution::student_t(7);
    c.replications = 2000;
    c.seed = 42;
    c.grid = {{64, 128}};
    c.statistics = {TestStatistic::W};
    const auto r = estimate_levels(c);
    EXPECT_GT(r.find(64, 128, TestStatistic::W)->level, 0.08);
}

TEST(ReproduceTable, SmokeLayout) {
    const auto t = reproduce_table(1, 100, 42);
    EXPECT_EQ(t.result.cells.size(), 90u);
    for (const auto& cell : t.result.cells) {
        EXPECT_GE(cell.level, 0.0);
        EXPECT_LE(cell.level, 1.0);
    }
    EXPECT_EQ(t.csv, to_csv(t.result));
    EXPECT_EQ(std::count(t.csv.begin(), t.csv.end(), '\n'), 91);
    EXPECT_NE(t.text.find("0."), std::string::npos);
    EXPECT_EQ(table_config(2, 100, 1).distribution.name, "t7");
}
