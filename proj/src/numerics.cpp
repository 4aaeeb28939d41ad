#include "himax/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "himax/errors.hpp"

namespace himax {
namespace {

constexpr int kMaxGammaIterations = 100000;
constexpr double kGammaEps = 1e-17;

void require_finite(double x, const char* where) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(where) + ": non-finite argument");
    }
}

// exp(a ln x - x - lgamma(a)), the common prefactor of both expansions.
double gamma_prefactor(double a, double x) {
    return std::exp(a * std::log(x) - x - std::lgamma(a));
}

// Lower regularized P(a, x) by its power series; converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < kMaxGammaIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kGammaEps) {
            break;
        }
    }
    return sum * gamma_prefactor(a, x);
}

// Upper regularized Q(a, x) by the modified Lentz continued fraction; x >= a + 1.
double gamma_q_fraction(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxGammaIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kGammaEps) {
            break;
        }
    }
    return gamma_prefactor(a, x) * h;
}

}  // namespace

double clipped_log(double x) {
    require_finite(x, "clipped_log");
    return x <= std::numbers::e ? 1.0 : std::log(x);
}

double clipped_log2(double x) { return clipped_log(clipped_log(x)); }

double centering_constant(double p, unsigned d) {
    return 4.0 * clipped_log(p) - (2.0 - static_cast<double>(d)) * clipped_log2(p);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || std::isnan(x)) {
        throw DomainError("gamma_q: requires a > 0 and a numeric x");
    }
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) {
        return 1.0 - gamma_p_series(a, x);
    }
    return gamma_q_fraction(a, x);
}

double chi2_sf(unsigned dof, double x) {
    if (dof == 0) {
        throw DomainError("chi2_sf: degrees of freedom must be >= 1");
    }
    if (std::isnan(x)) {
        throw DomainError("chi2_sf: NaN argument");
    }
    if (x <= 0.0) return 1.0;
    return gamma_q(0.5 * dof, 0.5 * x);
}

double normal_sf(double x) {
    if (std::isnan(x)) {
        throw DomainError("normal_sf: NaN argument");
    }
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double solve_monotone(const std::function<double(double)>& f, double target, Bracket bracket,
                      double tolerance) {
    double lo = bracket.lo;
    double hi = bracket.hi;
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(target)) {
        throw BracketError("solve_monotone: invalid bracket or target");
    }
    double flo = f(lo) - target;
    double fhi = f(hi) - target;
    if (std::fabs(flo) <= tolerance) return lo;
    if (std::fabs(fhi) <= tolerance) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw BracketError("solve_monotone: target " + std::to_string(target) +
                           " outside [f(lo), f(hi)] = [" + std::to_string(flo + target) + ", " +
                           std::to_string(fhi + target) + "]");
    }

    double best = std::fabs(flo) < std::fabs(fhi) ? lo : hi;
    double best_err = std::fabs(std::fabs(flo) < std::fabs(fhi) ? flo : fhi);
    int side = 0;  // which end was retained last step (Illinois weighting)
    for (int iter = 0; iter < 400; ++iter) {
        const double width = hi - lo;
        double x = (lo * fhi - hi * flo) / (fhi - flo);
        // Every third step, or when the secant lands on an endpoint, bisect.
        if (iter % 3 == 2 || !(x > lo && x < hi)) {
            x = lo + 0.5 * width;
        }
        if (!(x > lo && x < hi)) {
            break;  // bracket collapsed to adjacent doubles
        }
        const double fx = f(x) - target;
        if (std::fabs(fx) < best_err) {
            best = x;
            best_err = std::fabs(fx);
        }
        if (std::fabs(fx) <= tolerance) {
            return x;
        }
        if (std::signbit(fx) == std::signbit(flo)) {
            lo = x;
            flo = fx;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if (side == 1) flo *= 0.5;
            side = 1;
        }
    }
    return best;
}

}  // namespace himax
