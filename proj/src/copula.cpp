#include "fas/copula.hpp"

#include "fas/errors.hpp"

#include "copula_detail.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace fas {

namespace {

using detail::frank_generator;
using detail::frank_inv_generator;

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_probability(double u, const char* fn)
{
    if (!(u >= 0.0 && u <= 1.0))
        throw DomainError(std::string(fn) + ": argument must lie in [0, 1]");
}

void check_dimension(std::int64_t d, const char* fn)
{
    if (d < 1)
        throw DomainError(std::string(fn) + ": dimension must be at least 1");
}

double clayton_cdf(double beta, std::span<const double> u)
{
    const double lowest = *std::min_element(u.begin(), u.end());
    double bracket = 0.0;
    for (double uj : u)
        bracket += std::pow(lowest / uj, beta);
    bracket -= static_cast<double>(u.size() - 1) * std::pow(lowest, beta);
    return lowest * std::pow(bracket, -1.0 / beta);
}

double gumbel_cdf(double theta, std::span<const double> u)
{
    double largest = 0.0;
    for (double uj : u)
        largest = std::max(largest, -std::log(uj));
    if (largest == 0.0)
        return 1.0;
    double sum = 0.0;
    for (double uj : u)
        sum += std::pow(-std::log(uj) / largest, theta);
    return std::exp(-largest * std::pow(sum, 1.0 / theta));
}

} // namespace

std::string_view to_string(CopulaFamily family)
{
    switch (family) {
    case CopulaFamily::Independence:
        return "independence";
    case CopulaFamily::Frank:
        return "frank";
    case CopulaFamily::Clayton:
        return "clayton";
    case CopulaFamily::Gumbel:
        return "gumbel";
    }
    return "unknown";
}

CopulaFamily parse_copula_family(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (auto family : {CopulaFamily::Independence, CopulaFamily::Frank, CopulaFamily::Clayton,
                        CopulaFamily::Gumbel}) {
        if (lower == to_string(family))
            return family;
    }
    throw InvalidParameter("unknown copula family '" + std::string(name) + "'");
}

void CopulaSpec::validate() const
{
    switch (family) {
    case CopulaFamily::Independence:
        return;
    case CopulaFamily::Frank:
        if (!(param > 0.0) || !std::isfinite(param))
            throw InvalidParameter("Frank copula requires alpha > 0");
        return;
    case CopulaFamily::Clayton:
        if (!(param > 0.0) || !std::isfinite(param))
            throw InvalidParameter("Clayton copula requires beta > 0");
        return;
    case CopulaFamily::Gumbel:
        if (!(param >= 1.0) || !std::isfinite(param))
            throw InvalidParameter("Gumbel copula requires theta >= 1");
        return;
    }
    throw InvalidParameter("unknown copula family");
}

double generator(const CopulaSpec& spec, double t)
{
    spec.validate();
    if (!(t > 0.0 && t <= 1.0))
        throw DomainError("generator: t must lie in (0, 1]");
    switch (spec.family) {
    case CopulaFamily::Independence:
        return -std::log(t);
    case CopulaFamily::Frank:
        return frank_generator(spec.param, t);
    case CopulaFamily::Clayton:
        return std::expm1(-spec.param * std::log(t)) / spec.param;
    case CopulaFamily::Gumbel:
        return std::pow(-std::log(t), spec.param);
    }
    return 0.0;
}

double inv_generator(const CopulaSpec& spec, double s)
{
    spec.validate();
    if (!(s >= 0.0))
        throw DomainError("inv_generator: s must be non-negative");
    if (s == kInf)
        return 0.0;
    switch (spec.family) {
    case CopulaFamily::Independence:
        return std::exp(-s);
    case CopulaFamily::Frank:
        return frank_inv_generator(spec.param, s);
    case CopulaFamily::Clayton:
        return std::exp(-std::log1p(spec.param * s) / spec.param);
    case CopulaFamily::Gumbel:
        return std::exp(-std::pow(s, 1.0 / spec.param));
    }
    return 0.0;
}

double copula_cdf(const CopulaSpec& spec, std::span<const double> u)
{
    spec.validate();
    if (u.empty())
        throw DomainError("copula_cdf: dimension must be at least 1");
    for (double uj : u)
        check_probability(uj, "copula_cdf");
    if (std::find(u.begin(), u.end(), 0.0) != u.end())
        return 0.0;

    switch (spec.family) {
    case CopulaFamily::Independence: {
        double product = 1.0;
        for (double uj : u)
            product *= uj;
        return product;
    }
    case CopulaFamily::Clayton:
        return clayton_cdf(spec.param, u);
    case CopulaFamily::Gumbel:
        return gumbel_cdf(spec.param, u);
    case CopulaFamily::Frank: {
        double s = 0.0;
        for (double uj : u)
            s += frank_generator(spec.param, uj);
        return frank_inv_generator(spec.param, s);
    }
    }
    return 0.0;
}

double diagonal_cdf(const CopulaSpec& spec, double u, std::int64_t d)
{
    spec.validate();
    check_probability(u, "diagonal_cdf");
    check_dimension(d, "diagonal_cdf");
    if (u == 0.0 || u == 1.0 || d == 1)
        return u;

    const double dd = static_cast<double>(d);
    const double log_u = std::log(u);
    switch (spec.family) {
    case CopulaFamily::Independence:
        return std::exp(dd * log_u);
    case CopulaFamily::Gumbel:
        return std::exp(std::pow(dd, 1.0 / spec.param) * log_u);
    case CopulaFamily::Clayton: {
        // [d(u^{-β} - 1) + 1]^{-1/β} = u [d(1 - u^β) + u^β]^{-1/β}
        const double beta = spec.param;
        const double u_pow = std::exp(beta * log_u);
        const double one_minus = -std::expm1(beta * log_u);
        return u * std::pow(dd * one_minus + u_pow, -1.0 / beta);
    }
    case CopulaFamily::Frank:
        // -(1/α) ln(1 + (e^{-αu} - 1)^d / (e^{-α} - 1)^{d-1})
        return frank_inv_generator(spec.param, dd * frank_generator(spec.param, u));
    }
    return 0.0;
}

double diagonal_cdf_derivative(const CopulaSpec& spec, double u, std::int64_t d)
{
    spec.validate();
    check_probability(u, "diagonal_cdf_derivative");
    check_dimension(d, "diagonal_cdf_derivative");
    if (d == 1)
        return 1.0;

    const double dd = static_cast<double>(d);
    if (u == 0.0)
        return spec.family == CopulaFamily::Clayton ? std::pow(dd, -1.0 / spec.param) : 0.0;

    // Archimedean diagonal: D'(u) = d φ'(u) / φ'(D(u)).
    const double diag = diagonal_cdf(spec, u, d);
    switch (spec.family) {
    case CopulaFamily::Independence:
        return dd * std::exp((dd - 1.0) * std::log(u));
    case CopulaFamily::Gumbel:
        return std::pow(dd, 1.0 / spec.param) * diag / u;
    case CopulaFamily::Clayton:
        return dd * std::pow(diag / u, 1.0 + spec.param);
    case CopulaFamily::Frank:
        return dd * std::expm1(spec.param * diag) / std::expm1(spec.param * u);
    }
    return 0.0;
}

double debye1(double x)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("debye1: argument must be positive and finite");
    auto integrand = [](double t) { return t == 0.0 ? 1.0 : t / std::expm1(t); };
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, x, 15, 1e-14);
    return integral / x;
}

double kendall_tau(const CopulaSpec& spec)
{
    spec.validate();
    switch (spec.family) {
    case CopulaFamily::Independence:
        return 0.0;
    case CopulaFamily::Clayton:
        return spec.param / (spec.param + 2.0);
    case CopulaFamily::Gumbel:
        return 1.0 - 1.0 / spec.param;
    case CopulaFamily::Frank: {
        const double alpha = spec.param;
        // The Debye form cancels catastrophically near independence.
        if (alpha < 1e-3)
            return alpha / 9.0 - alpha * alpha * alpha / 900.0;
        return 1.0 - 4.0 / alpha * (1.0 - debye1(alpha));
    }
    }
    return 0.0;
}

} // namespace fas
