#include "fas/special_functions.hpp"

#include "fas/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace fas {

namespace {

constexpr double kTiny = 1e-300;

// log of the common prefactor x^a e^{-x} / Γ(a).
double log_prefactor(double a, double x)
{
    return a * std::log(x) - x - log_gamma(a);
}

double lower_series(double a, double x, const Tolerance& tol)
{
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < tol.max_iter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * tol.rel_eps)
            return sum * std::exp(log_prefactor(a, x));
    }
    throw NonConvergence("reg_lower_inc_gamma: series did not converge for a=" + std::to_string(a) +
                         ", x=" + std::to_string(x));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x), x >= a + 1.
double upper_continued_fraction(double a, double x, const Tolerance& tol)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= tol.max_iter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny)
            d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < tol.rel_eps)
            return std::exp(log_prefactor(a, x)) * h;
    }
    throw NonConvergence("reg_lower_inc_gamma: continued fraction did not converge for a=" +
                         std::to_string(a) + ", x=" + std::to_string(x));
}

void check_shape(double a, const char* fn)
{
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError(std::string(fn) + ": shape must be positive and finite");
}

// Abramowitz & Stegun 26.2.23; |error| < 4.5e-4, enough for a starting point.
double rough_normal_quantile(double p)
{
    const double q = p < 0.5 ? p : 1.0 - p;
    const double t = std::sqrt(-2.0 * std::log(q));
    const double z = t - (2.515517 + t * (0.802853 + t * 0.010328)) /
                             (1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308)));
    return p < 0.5 ? -z : z;
}

double initial_guess(double a, double p)
{
    // Small-p regime: P(a, x) ~ x^a / Γ(a + 1).
    const double small_x = std::exp((std::log(p) + log_gamma(a + 1.0)) / a);
    if (a < 1.0 && small_x < 1.0)
        return small_x;

    const double z = rough_normal_quantile(p);
    const double s = 1.0 / (9.0 * a);
    const double wh = a * std::pow(1.0 - s + z * std::sqrt(s), 3);
    if (wh > 0.0 && std::isfinite(wh))
        return wh;
    return std::max(small_x, std::numeric_limits<double>::min());
}

} // namespace

void Tolerance::validate() const
{
    if (!(rel_eps > 0.0 && rel_eps <= 1e-6))
        throw InvalidParameter("Tolerance: rel_eps must be in (0, 1e-6]");
    if (max_iter < 50)
        throw InvalidParameter("Tolerance: max_iter must be at least 50");
}

double log_gamma(double x)
{
    if (!(x > 0.0))
        throw DomainError("log_gamma: argument must be positive");
    if (std::isinf(x))
        return x;
    return boost::math::lgamma(x);
}

namespace detail {

double reg_upper_inc_gamma(double a, double x, const Tolerance& tol)
{
    if (x == 0.0)
        return 1.0;
    if (std::isinf(x))
        return 0.0;
    if (x < a + 1.0)
        return 1.0 - lower_series(a, x, tol);
    return upper_continued_fraction(a, x, tol);
}

} // namespace detail

double reg_lower_inc_gamma(double a, double x, const Tolerance& tol)
{
    check_shape(a, "reg_lower_inc_gamma");
    if (!(x >= 0.0))
        throw DomainError("reg_lower_inc_gamma: x must be non-negative");
    tol.validate();

    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    if (x < a + 1.0)
        return std::min(lower_series(a, x, tol), 1.0);
    return 1.0 - upper_continued_fraction(a, x, tol);
}

double inv_reg_lower_inc_gamma(double a, double p, const Tolerance& tol)
{
    check_shape(a, "inv_reg_lower_inc_gamma");
    if (!(p >= 0.0 && p < 1.0))
        throw DomainError("inv_reg_lower_inc_gamma: p must be in [0, 1)");
    tol.validate();

    if (p == 0.0)
        return 0.0;
    if (a == 1.0)
        return -std::log1p(-p);

    // Above the median the residual is formed from Q so that p close to 1
    // keeps its precision.
    const bool use_upper = p > 0.5;
    const double q = 1.0 - p;
    const double log_gamma_a = log_gamma(a);

    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    double x = initial_guess(a, p);

    for (int iter = 0; iter < tol.max_iter; ++iter) {
        const double residual = use_upper ? q - detail::reg_upper_inc_gamma(a, x, tol)
                                          : reg_lower_inc_gamma(a, x, tol) - p;
        if (residual == 0.0)
            return x;
        if (residual < 0.0)
            lo = x;
        else
            hi = x;

        const double density = std::exp((a - 1.0) * std::log(x) - x - log_gamma_a);
        double next = x - residual / density;
        if (!(next > lo && next < hi) || !std::isfinite(next))
            next = std::isinf(hi) ? 2.0 * x + 1.0 : 0.5 * (lo + hi);

        if (std::fabs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * next)
            return next;
        if (std::isfinite(hi) && hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
            return next;
        x = next;
    }
    throw NonConvergence("inv_reg_lower_inc_gamma: no convergence for a=" + std::to_string(a) +
                         ", p=" + std::to_string(p));
}

} // namespace fas
