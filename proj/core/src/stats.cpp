#include "caseval/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace caseval::stats {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / 1.4142135623730950488);
}

namespace {

// Acklam's inverse normal approximation, |relative error| < 1.15e-9.
double acklam(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("normal_quantile: p must lie in (0, 1)");
    }
    double x = acklam(p);
    // One Halley refinement against the exact CDF.
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * 3.14159265358979323846) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    if (successes > trials) {
        throw std::invalid_argument("wilson_interval: successes exceed trials");
    }
    const double n = static_cast<double>(trials);
    const double p_hat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p_hat + z2 / (2.0 * n)) / denom;
    const double half =
        (z / denom) * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));
    Interval out;
    // Exact ends at the boundary counts; otherwise clamp rounding noise.
    out.lower = successes == 0 ? 0.0 : std::fmax(0.0, center - half);
    out.upper = successes == trials ? 1.0 : std::fmin(1.0, center + half);
    return out;
}

double proportion_se(double p_hat, std::uint64_t trials) {
    if (trials == 0) return 0.0;
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
}

}  // namespace caseval::stats
