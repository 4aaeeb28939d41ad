#pragma once

#include <functional>

namespace himax {

/// ln(max(x, e)); always >= 1. Applied everywhere a "log" appears in the
/// centering constants. Throws DomainError for non-finite x.
double clipped_log(double x);

/// clipped_log(clipped_log(x)).
double clipped_log2(double x);

/// Centering constant 4 log p - (2 - d) log2 p under the clipped log.
/// d = 2 gives 4 log p; d = 1 gives the familiar 4 log p - log2 p.
double centering_constant(double p, unsigned d);

/// Upper tail P(chi2(dof) >= x). Returns 1 for x <= 0. Throws DomainError when
/// dof == 0 or x is NaN.
double chi2_sf(unsigned dof, double x);

/// Regularized upper incomplete gamma Q(a, x) for a > 0, x >= 0.
double gamma_q(double a, double x);

/// 1 - Phi(x) for the standard normal.
double normal_sf(double x);

struct Bracket {
    double lo;
    double hi;
};

inline constexpr double kSolveTolerance = 1e-10;

/// Finds y in [bracket.lo, bracket.hi] with |f(y) - target| <= tolerance for a
/// monotone f (either direction). Bisection with an Illinois-style secant step.
/// Throws BracketError when target lies outside [f(lo), f(hi)].
double solve_monotone(const std::function<double(double)>& f, double target, Bracket bracket,
                      double tolerance = kSolveTolerance);

}  // namespace himax
