// log_math.hpp: log-domain helpers for factorials, binomials and 1 +- exp(.)

#pragma once

#include <cmath>
#include <limits>

namespace dicke::logm {

inline double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

inline double log_binomial(int n, int k) {
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

/// log(1 + sign * exp(a)) for a <= 0. Returns -inf when sign < 0 and a == 0.
inline double log1p_signed_exp(int sign, double a) {
    if (sign > 0) return std::log1p(std::exp(a));
    if (a == 0.0) return -std::numeric_limits<double>::infinity();
    // log(1 - e^a): choose the branch with the smaller rounding error
    return a > -0.693147180559945309 ? std::log(-std::expm1(a)) : std::log1p(-std::exp(a));
}

/// n * log(v) treating 0 * log(0) as 0.
inline double xlogy(double n, double v) { return n == 0.0 ? 0.0 : n * std::log(v); }

}  // namespace dicke::logm
