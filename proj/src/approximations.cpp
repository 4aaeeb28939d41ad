#include "himax/approximations.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "himax/errors.hpp"
#include "himax/numerics.hpp"

namespace himax {
namespace {

const double kSqrt8Pi = std::sqrt(8.0 * std::numbers::pi);

// Expected number of exceedances; every CDF here is exp(-intensity).
double limit_intensity_W(double y) { return 0.5 * std::exp(-0.5 * y); }
double limit_intensity_Ltilde(double y) { return std::exp(-0.5 * y) / kSqrt8Pi; }

double intermediate_intensity(const ApproxParams& params, double y) {
    const double p = static_cast<double>(params.p());
    return 0.5 * (p * p - p) * chi2_sf(params.d(), params.alpha_p() + y);
}

double intensity(ApproxKind kind, const ApproxParams& params, double y) {
    switch (kind) {
        case ApproxKind::LimitW: return limit_intensity_W(y);
        case ApproxKind::LimitLTilde: return limit_intensity_Ltilde(y);
        case ApproxKind::Intermediate: return intermediate_intensity(params, y);
    }
    throw UsageError("unknown approximation kind");
}

void require_finite(double y) {
    if (std::isnan(y)) throw DomainError("approximation evaluated at NaN");
}

}  // namespace

ApproxParams::ApproxParams(std::size_t p, std::size_t n, unsigned d)
    : p_(p), n_(n), d_(d), alpha_p_(0.0) {
    if (p < 2 || d < 1) {
        throw DomainError("ApproxParams: need p >= 2 and d >= 1, got p = " + std::to_string(p) +
                          ", d = " + std::to_string(d));
    }
    alpha_p_ = centering_constant(static_cast<double>(p), d);
}

std::string_view to_string(ApproxKind kind) {
    switch (kind) {
        case ApproxKind::LimitW: return "limit_W";
        case ApproxKind::LimitLTilde: return "limit_Ltilde";
        case ApproxKind::Intermediate: return "intermediate";
    }
    return "unknown";
}

std::optional<ApproxKind> parse_approx_kind(std::string_view name) {
    if (name == "limit_W") return ApproxKind::LimitW;
    if (name == "limit_Ltilde") return ApproxKind::LimitLTilde;
    if (name == "intermediate") return ApproxKind::Intermediate;
    return std::nullopt;
}

double limit_cdf_W(double y) {
    require_finite(y);
    return std::exp(-limit_intensity_W(y));
}

double limit_cdf_Ltilde(double y) {
    require_finite(y);
    return std::exp(-limit_intensity_Ltilde(y));
}

double intermediate_cdf(const ApproxParams& params, double y) {
    require_finite(y);
    return std::exp(-intermediate_intensity(params, y));
}

double approx_cdf(ApproxKind kind, const ApproxParams& params, double y) {
    require_finite(y);
    return std::exp(-intensity(kind, params, y));
}

double approx_sf(ApproxKind kind, const ApproxParams& params, double y) {
    require_finite(y);
    return -std::expm1(-intensity(kind, params, y));
}

double critical_value(const ApproxParams& params, ApproxKind kind, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("critical_value: alpha must lie in (0, 1)");
    }
    // -log(1 - alpha) is the exceedance intensity at the critical value.
    const double target_intensity = -std::log1p(-alpha);
    switch (kind) {
        case ApproxKind::LimitW: return -2.0 * std::log(2.0 * target_intensity);
        case ApproxKind::LimitLTilde: return -2.0 * std::log(kSqrt8Pi * target_intensity);
        case ApproxKind::Intermediate: break;
    }
    const double a = params.alpha_p();
    const Bracket bracket{-a + 1e-8, a + 100.0};
    return solve_monotone([&](double y) { return approx_sf(kind, params, y); }, alpha, bracket,
                          1e-11);
}

void check_pairing(const StatValue& stat, ApproxKind kind, const ApproxParams& params) {
    auto fail = [&](const std::string& why) {
        throw UsageError("statistic " + std::string(to_string(stat.kind)) +
                         " cannot be paired with approximation " + std::string(to_string(kind)) +
                         ": " + why);
    };
    if (kind == ApproxKind::Intermediate && params.p() != stat.p) {
        fail("dimension p differs (" + std::to_string(params.p()) + " vs " +
             std::to_string(stat.p) + ")");
    }
    switch (stat.kind) {
        case StatKind::W:
            if (kind == ApproxKind::LimitLTilde) fail("W_n uses limit_W or intermediate");
            if (kind == ApproxKind::Intermediate && params.d() != 2) fail("W_n needs d = 2");
            break;
        case StatKind::LTildeCentered:
            if (kind == ApproxKind::LimitW) fail("Ltilde uses limit_Ltilde or intermediate");
            if (kind == ApproxKind::Intermediate && params.d() != 1) fail("Ltilde needs d = 1");
            break;
        case StatKind::WGeneral:
        case StatKind::LGeneral:
            if (kind != ApproxKind::Intermediate) fail("general forms use intermediate only");
            if (params.d() != stat.d) fail("d must equal the block count");
            break;
    }
}

double p_value(const StatValue& stat, ApproxKind kind, const ApproxParams& params) {
    check_pairing(stat, kind, params);
    return approx_sf(kind, params, stat.value);
}

RateGap rate_gap(std::size_t p, double y) {
    if (p < 3) {
        throw DomainError("rate_gap: need p >= 3");
    }
    require_finite(y);
    const ApproxParams params(p, p, 1);
    const double lam_int = intermediate_intensity(params, y);
    const double lam_lim = limit_intensity_Ltilde(y);
    RateGap out{};
    out.exact_gap = std::exp(-lam_lim) * std::expm1(lam_lim - lam_int);
    const double n = static_cast<double>(p);
    out.prediction = clipped_log2(n) / (8.0 * clipped_log(n)) / kSqrt8Pi *
                     std::exp(-0.5 * y - lam_lim);
    return out;
}

}  // namespace himax
