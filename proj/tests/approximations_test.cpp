#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "himax/approximations.hpp"
#include "himax/errors.hpp"
#include "himax/numerics.hpp"

using namespace himax;

namespace {
const double kSqrt8Pi = std::sqrt(8.0 * std::numbers::pi);
}

TEST(ApproxParams, CenteringConstant) {
    const ApproxParams two(100, 50, 2);
    EXPECT_DOUBLE_EQ(two.alpha_p(), 4.0 * std::log(100.0));
    const ApproxParams one(100, 50, 1);
    EXPECT_DOUBLE_EQ(one.alpha_p(), 4.0 * std::log(100.0) - std::log(std::log(100.0)));
    const ApproxParams small(2, 4, 1);
    EXPECT_DOUBLE_EQ(small.alpha_p(), 3.0);  // both logs clip to 1
    EXPECT_THROW(ApproxParams(1, 10, 1), DomainError);
    EXPECT_THROW(ApproxParams(10, 10, 0), DomainError);
}

TEST(LimitCdfW, Values) {
    EXPECT_NEAR(limit_cdf_W(0.0), 0.606530659712633423603799534991, 1e-15);
    EXPECT_NEAR(limit_cdf_W(4.55409613696443849939776505661), 0.95, 1e-14);
    EXPECT_NEAR(approx_sf(ApproxKind::LimitW, ApproxParams(10, 10, 2), 100.0), 0.5 * std::exp(-50.0), 1e-35);
    EXPECT_LE(limit_cdf_W(100.0), 1.0);
    EXPECT_EQ(limit_cdf_W(-2000.0), 0.0);
}

TEST(LimitCdfLtilde, Values) {
    EXPECT_NEAR(limit_cdf_Ltilde(0.0), 0.819163861376411159890354267669, 1e-15);
    EXPECT_NEAR(limit_cdf_Ltilde(2.7162190705550930158371055838), 0.95, 1e-14);
    EXPECT_GT(limit_cdf_Ltilde(5.0), limit_cdf_Ltilde(4.0));
}

TEST(IntermediateCdf, TwoDegreesClosedForm) {
    const ApproxParams params(4, 16, 2);
    EXPECT_NEAR(intermediate_cdf(params, 0.0), 0.687289278790972198545202339147, 1e-14);
    EXPECT_NEAR(intermediate_cdf(params, 0.0), std::exp(-0.375), 1e-14);
}

TEST(IntermediateCdf, OneDegreeComposesKernels) {
    // alpha_p = 4 ln 10 - 1 (ln 10 < e), scaled by (100 - 10) / 2 = 45.
    const ApproxParams params(10, 10, 1);
    const double a = 4.0 * std::log(10.0) - 1.0;
    EXPECT_NEAR(intermediate_cdf(params, 0.0), std::exp(-45.0 * std::erfc(std::sqrt(a / 2.0))),
                1e-14);
    EXPECT_NEAR(intermediate_cdf(params, 0.0), 0.829082578222796358531286393507, 1e-13);
}

TEST(IntermediateCdf, TendsToOne) {
    const ApproxParams params(50, 50, 1);
    EXPECT_GT(intermediate_cdf(params, 80.0), 1.0 - 1e-12);
}

TEST(IntermediateCdf, NegativeTailArgumentIsTiny) {
    const ApproxParams params(20, 20, 1);
    EXPECT_LT(intermediate_cdf(params, -params.alpha_p() - 5.0), 1e-80);
}

TEST(Cdfs, MonotoneBoundedOnGrid) {
    const ApproxParams p1(64, 64, 1);
    const ApproxParams p2(64, 64, 2);
    const ApproxParams p3(64, 64, 3);
    double prev[5] = {0, 0, 0, 0, 0};
    for (int k = 0; k < 10000; ++k) {
        const double y = -20.0 + 60.0 * k / 9999.0;
        const double v[5] = {limit_cdf_W(y), limit_cdf_Ltilde(y), intermediate_cdf(p1, y),
                             intermediate_cdf(p2, y), intermediate_cdf(p3, y)};
        for (int c = 0; c < 5; ++c) {
            EXPECT_GE(v[c], 0.0);
            EXPECT_LE(v[c], 1.0);
            EXPECT_GE(v[c], prev[c]) << "cdf " << c << " at y=" << y;
            prev[c] = v[c];
        }
    }
}

TEST(IntermediateCdf, TwoDegreesMatchesClosedFormOnGrid) {
    for (std::size_t p : {3u, 7u, 50u, 1000u, 123456u}) {
        const ApproxParams params(p, p, 2);
        for (double y = -params.alpha_p(); y < 30.0; y += 0.25) {
            const double want = std::exp(-0.5 * (1.0 - 1.0 / static_cast<double>(p)) * std::exp(-0.5 * y));
            EXPECT_NEAR(intermediate_cdf(params, y), want, 1e-12) << p << " " << y;
        }
    }
}

TEST(IntermediateCdf, TwoDegreesApproachesLimitW) {
    const ApproxParams params(100000000, 100000000, 2);
    for (double y = -2.0; y <= 10.0; y += 0.1) {
        EXPECT_LT(std::fabs(intermediate_cdf(params, y) - limit_cdf_W(y)), 1e-5) << y;
    }
}

TEST(IntermediateCdf, OneDegreeApproachesLimitLtildeSlowly) {
    // The d = 1 gap shrinks only like log log p / log p.
    for (double y : {-2.0, 0.0, 4.0, 10.0}) {
        double prev = 1.0;
        for (std::size_t p : {1000u, 100000u, 10000000u, 1000000000u}) {
            const double gap = std::fabs(intermediate_cdf(ApproxParams(p, p, 1), y) - limit_cdf_Ltilde(y));
            const double lp = std::log(static_cast<double>(p));
            EXPECT_LT(gap, 0.1 * std::log(lp) / lp) << p << " " << y;
            if (y != 0.0) {
                EXPECT_LT(gap, prev) << p << " " << y;
            }
            prev = gap;
        }
    }
}

TEST(CriticalValue, ClosedForms) {
    const ApproxParams params(10, 10, 1);
    EXPECT_NEAR(critical_value(params, ApproxKind::LimitW, 0.05), 4.55409613696443849939776505661, 1e-12);
    EXPECT_NEAR(critical_value(params, ApproxKind::LimitLTilde, 0.05), 2.7162190705550930158371055838, 1e-12);
}

TEST(CriticalValue, IntermediateRoundTrip) {
    for (std::size_t p : {2u, 4u, 16u, 128u, 5000u}) {
        for (unsigned d : {1u, 2u, 3u}) {
            const ApproxParams params(p, 100, d);
            for (double alpha : {0.01, 0.05, 0.1, 0.5}) {
                const double y = critical_value(params, ApproxKind::Intermediate, alpha);
                EXPECT_NEAR(intermediate_cdf(params, y), 1.0 - alpha, 1e-9);
            }
        }
    }
}

TEST(CriticalValue, IntermediateReferenceValue) {
    // 30-digit root of exp(-8128 P(chi2(1) >= 4 ln 128 - ln ln 128 + y)) = 0.95.
    const ApproxParams params(128, 256, 1);
    EXPECT_NEAR(critical_value(params, ApproxKind::Intermediate, 0.05),
                2.56285437596594353607380798138, 1e-9);
}

TEST(CriticalValue, Errors) {
    const ApproxParams params(10, 10, 1);
    EXPECT_THROW(critical_value(params, ApproxKind::LimitW, 0.0), DomainError);
    EXPECT_THROW(critical_value(params, ApproxKind::LimitW, 1.0), DomainError);
    // p = 2, d = 1: the CDF never drops below exp(-1), so 1 - alpha = 0.2 is unreachable.
    EXPECT_THROW(critical_value(ApproxParams(2, 10, 1), ApproxKind::Intermediate, 0.8), BracketError);
}

namespace {
StatValue stat_of(StatKind kind, double value, std::size_t p, unsigned d) {
    StatValue s;
    s.kind = kind;
    s.value = value;
    s.p = p;
    s.n = 100;
    s.d = d;
    return s;
}
}  // namespace

TEST(PValue, InvertsCriticalValue) {
    struct Case {
        StatKind kind;
        ApproxKind approx;
        unsigned d;
    };
    const Case cases[] = {{StatKind::W, ApproxKind::LimitW, 2},
                          {StatKind::W, ApproxKind::Intermediate, 2},
                          {StatKind::LTildeCentered, ApproxKind::LimitLTilde, 1},
                          {StatKind::LTildeCentered, ApproxKind::Intermediate, 1},
                          {StatKind::WGeneral, ApproxKind::Intermediate, 3},
                          {StatKind::LGeneral, ApproxKind::Intermediate, 3}};
    for (const auto& c : cases) {
        const ApproxParams params(40, 100, c.d);
        for (double alpha : {0.01, 0.05, 0.1, 0.5}) {
            const double y = critical_value(params, c.approx, alpha);
            EXPECT_NEAR(p_value(stat_of(c.kind, y, 40, c.d), c.approx, params), alpha, 1e-8);
        }
    }
}

TEST(PValue, Values) {
    const ApproxParams params(10, 10, 2);
    EXPECT_NEAR(p_value(stat_of(StatKind::W, 0.0, 10, 2), ApproxKind::LimitW, params),
                0.393469340287366576396200465009, 1e-15);
    const double tiny = p_value(stat_of(StatKind::W, 200.0, 10, 2), ApproxKind::LimitW, params);
    EXPECT_GT(tiny, 0.0);
    EXPECT_LT(tiny, 1e-40);
}

TEST(PValue, RejectsMismatchedPairings) {
    const ApproxParams d1(10, 10, 1);
    const ApproxParams d2(10, 10, 2);
    EXPECT_THROW(p_value(stat_of(StatKind::W, 0, 10, 2), ApproxKind::LimitLTilde, d2), UsageError);
    EXPECT_THROW(p_value(stat_of(StatKind::W, 0, 10, 2), ApproxKind::Intermediate, d1), UsageError);
    EXPECT_THROW(p_value(stat_of(StatKind::LTildeCentered, 0, 10, 1), ApproxKind::LimitW, d1), UsageError);
    EXPECT_THROW(p_value(stat_of(StatKind::LTildeCentered, 0, 10, 1), ApproxKind::Intermediate, d2), UsageError);
    EXPECT_THROW(p_value(stat_of(StatKind::WGeneral, 0, 10, 2), ApproxKind::LimitW, d2), UsageError);
    EXPECT_THROW(p_value(stat_of(StatKind::LGeneral, 0, 10, 3), ApproxKind::Intermediate, d2), UsageError);
    EXPECT_THROW(p_value(stat_of(StatKind::W, 0, 11, 2), ApproxKind::Intermediate, d2), UsageError);
}

TEST(RateGap, MatchesHighPrecisionReference) {
    // Reference from a 40-digit evaluation of both laws.
    const RateGap a = rate_gap(1000000, 0.0);
    EXPECT_NEAR(a.exact_gap, -0.0010104856377544107, 1e-12);
    EXPECT_NEAR(a.prediction, 0.0038819884175504637, 1e-12);
    const RateGap b = rate_gap(1000, 2.0);
    EXPECT_NEAR(b.exact_gap, 0.0023832159228235994, 1e-12);
    EXPECT_NEAR(b.prediction, 0.0023847429752978182, 1e-12);
}

TEST(RateGap, PredictionFormula) {
    const double p = 1e4;
    const double y = 1.5;
    const double l = std::log(p);
    const double want = std::log(l) / (8.0 * l) / kSqrt8Pi *
                        std::exp(-y / 2.0 - std::exp(-y / 2.0) / kSqrt8Pi);
    EXPECT_NEAR(rate_gap(10000, y).prediction, want, 1e-15);
}

TEST(RateGap, IntermediateBelowLimitForNonPositiveY) {
    // Expanding the chi2(1) tail with its Mills-ratio correction makes the
    // intermediate intensity exceed the limit intensity by a factor
    // 1 + (log2 p - y - 2) / (8 log p), so the gap is negative whenever
    // y < log2 p - 2.
    for (std::size_t p : {10000u, 1000000u, 100000000u}) {
        for (double y : {-2.0, -1.0, 0.0}) {
            EXPECT_LT(rate_gap(p, y).exact_gap, 0.0) << p << " " << y;
        }
    }
}

TEST(RateGap, RatioFollowsSecondOrderExpansion) {
    for (std::size_t p : {1000000u, 100000000u}) {
        const double l2 = std::log(std::log(static_cast<double>(p)));
        for (double y : {-1.0, 0.0, 2.0}) {
            const RateGap g = rate_gap(p, y);
            const double expected_ratio = -(l2 - y - 2.0) / l2;
            EXPECT_NEAR(g.exact_gap / g.prediction, expected_ratio, 0.1) << p << " " << y;
        }
    }
}

TEST(RateGap, VanishesForLargeY) {
    const RateGap g = rate_gap(1000, 60.0);
    EXPECT_LT(std::fabs(g.exact_gap), 1e-12);
    EXPECT_LT(g.prediction, 1e-12);
    EXPECT_THROW(rate_gap(2, 0.0), DomainError);
}
