// Marshall–Olkin sampling for Archimedean copulas: draw a latent V whose
// Laplace transform is the inverse generator, then U_j = ψ(E_j / V) with
// independent standard exponentials E_j.

#include "fas/copula.hpp"

#include "fas/errors.hpp"

#include "copula_detail.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fas {

namespace {

double standard_exponential(Rng& rng)
{
    return -std::log(open_unit(rng));
}

} // namespace

Rng make_substream(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

double open_unit(Rng& rng)
{
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

double sample_positive_stable(double index, Rng& rng)
{
    if (!(index > 0.0 && index <= 1.0))
        throw InvalidParameter("sample_positive_stable: index must lie in (0, 1]");
    if (index == 1.0)
        return 1.0;

    // Chambers–Mallows–Stuck with skewness 1, scaled so that
    // E[exp(-sS)] = exp(-s^index) (Kanter's representation).
    const double angle = std::numbers::pi * open_unit(rng);
    const double w = standard_exponential(rng);
    const double a = index;
    const double log_s = std::log(std::sin(a * angle)) - std::log(std::sin(angle)) / a +
                         (1.0 - a) / a * (std::log(std::sin((1.0 - a) * angle)) - std::log(w));
    return std::exp(log_s);
}

std::int64_t sample_log_series(double p, double log1m_p, Rng& rng)
{
    // p rounds to 1 for strong dependence; log1m_p still carries the value.
    if (!(p > 0.0 && p <= 1.0) || !(log1m_p < 0.0))
        throw InvalidParameter("sample_log_series: p must lie in (0, 1)");

    // Kemp's LK inversion.
    const double v = open_unit(rng);
    if (v >= p)
        return 1;
    const double log_q = detail::log1mexp(-log1m_p * open_unit(rng));
    const double q = std::exp(log_q);
    if (v <= q * q) {
        const double k = std::floor(1.0 + std::log(v) / log_q);
        constexpr double cap = static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2);
        return static_cast<std::int64_t>(std::min(k, cap));
    }
    return v > q ? 1 : 2;
}

void sample_copula(const CopulaSpec& spec, std::span<double> out, Rng& rng)
{
    spec.validate();
    if (out.empty())
        throw DomainError("sample_copula: dimension must be at least 1");

    switch (spec.family) {
    case CopulaFamily::Independence:
        for (double& u : out)
            u = open_unit(rng);
        return;
    case CopulaFamily::Clayton: {
        // V ~ Gamma(1/β, 1), Laplace transform (1 + s)^{-1/β}.
        const double beta = spec.param;
        std::gamma_distribution<double> mixing(1.0 / beta, 1.0);
        const double v = mixing(rng);
        for (double& u : out)
            u = std::exp(-std::log1p(standard_exponential(rng) / v) / beta);
        return;
    }
    case CopulaFamily::Gumbel: {
        const double index = 1.0 / spec.param;
        const double v = sample_positive_stable(index, rng);
        for (double& u : out)
            u = std::exp(-std::pow(standard_exponential(rng) / v, index));
        return;
    }
    case CopulaFamily::Frank: {
        const double alpha = spec.param;
        const auto v = static_cast<double>(sample_log_series(-std::expm1(-alpha), -alpha, rng));
        for (double& u : out)
            u = detail::frank_inv_generator(alpha, standard_exponential(rng) / v);
        return;
    }
    }
}

std::vector<double> sample_copula(const CopulaSpec& spec, std::int64_t d, Rng& rng)
{
    if (d < 1)
        throw DomainError("sample_copula: dimension must be at least 1");
    std::vector<double> out(static_cast<std::size_t>(d));
    sample_copula(spec, out, rng);
    return out;
}

} // namespace fas
