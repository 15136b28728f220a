#pragma once

#include <cstdint>

namespace caseval::stats {

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse standard normal CDF. Acklam's rational approximation refined with
/// one Halley step; accurate to ~1e-15 over (0, 1). Throws std::domain_error
/// outside (0, 1).
double normal_quantile(double p);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

/// Two-sided Wilson score interval for a binomial proportion.
/// z defaults to the 97.5% normal quantile (95% coverage).
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                         double z = 1.959963984540054);

/// Standard error of a binomial proportion estimate, 0 when trials == 0.
double proportion_se(double p_hat, std::uint64_t trials);

}  // namespace caseval::stats
