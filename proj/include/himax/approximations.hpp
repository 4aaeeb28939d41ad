#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "himax/statistics.hpp"

namespace himax {

/// Dimension, sample size and chi-square degrees of freedom of an
/// intermediate approximation, with the matching centering constant.
class ApproxParams {
  public:
    /// Throws DomainError unless p >= 2 and d >= 1.
    ApproxParams(std::size_t p, std::size_t n, unsigned d);

    [[nodiscard]] std::size_t p() const noexcept { return p_; }
    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] unsigned d() const noexcept { return d_; }
    /// 4 log p - (2 - d) log2 p.
    [[nodiscard]] double alpha_p() const noexcept { return alpha_p_; }

  private:
    std::size_t p_;
    std::size_t n_;
    unsigned d_;
    double alpha_p_;
};

enum class ApproxKind {
    LimitW,       ///< exp(-exp(-y/2) / 2)
    LimitLTilde,  ///< exp(-exp(-y/2) / sqrt(8 pi))
    Intermediate, ///< exp(-((p^2 - p)/2) P(chi2(d) >= alpha_p + y))
};

std::string_view to_string(ApproxKind kind);
/// Accepts "limit_W", "limit_Ltilde", "intermediate" (case-sensitive).
std::optional<ApproxKind> parse_approx_kind(std::string_view name);

double limit_cdf_W(double y);
double limit_cdf_Ltilde(double y);
double intermediate_cdf(const ApproxParams& params, double y);

/// Dispatches on kind; params is only read for Intermediate.
double approx_cdf(ApproxKind kind, const ApproxParams& params, double y);
/// 1 - approx_cdf, evaluated without cancellation.
double approx_sf(ApproxKind kind, const ApproxParams& params, double y);

/// y with approx_cdf(y) = 1 - alpha. Closed form for the limits; root solve on
/// [-alpha_p + 1e-8, alpha_p + 100] for the intermediate kind.
/// Throws DomainError for alpha outside (0, 1), BracketError if unsolvable.
double critical_value(const ApproxParams& params, ApproxKind kind, double alpha);

/// Throws UsageError unless the statistic and approximation belong together:
/// W_n with limit_W or intermediate d = 2; Ltilde with limit_Ltilde or
/// intermediate d = 1; general forms with intermediate at their own d.
void check_pairing(const StatValue& stat, ApproxKind kind, const ApproxParams& params);

/// Upper-tail p-value of an observed statistic.
double p_value(const StatValue& stat, ApproxKind kind, const ApproxParams& params);

struct RateGap {
    double exact_gap;   ///< intermediate_cdf(d = 1) - limit_cdf_Ltilde
    double prediction;  ///< (log2 n / (8 log n)) (8 pi)^{-1/2} exp(-y/2 - exp(-y/2)/sqrt(8 pi)), n = p
};

/// Gap between the intermediate and limiting laws of the Ltilde statistic,
/// with the sample size identified with p. Requires p >= 3.
RateGap rate_gap(std::size_t p, double y);

}  // namespace himax
