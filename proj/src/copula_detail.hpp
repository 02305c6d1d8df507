#pragma once

#include <cmath>
#include <numbers>

namespace fas::detail {

// ln(1 - e^{-x}) for x >= 0.
inline double log1mexp(double x)
{
    return x <= std::numbers::ln2 ? std::log(-std::expm1(-x)) : std::log1p(-std::exp(-x));
}

inline double frank_generator(double alpha, double t)
{
    return log1mexp(alpha) - log1mexp(alpha * t);
}

// ψ(s) = -(1/α) ln(1 - (1 - e^{-α}) e^{-s})
inline double frank_inv_generator(double alpha, double s)
{
    if (s <= std::numbers::ln2)
        return -std::log(-std::expm1(-s) + std::exp(-alpha - s)) / alpha;
    return -std::log1p(std::expm1(-alpha) * std::exp(-s)) / alpha;
}

} // namespace fas::detail
