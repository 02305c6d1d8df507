#include "fas/analysis.hpp"

#include "fas/errors.hpp"
#include "fas/special_functions.hpp"

#include "copula_detail.hpp"

#include <cmath>
#include <string>

namespace fas {

namespace {

double amplitude_threshold(const FasConfig& config)
{
    return config.snr_threshold == 0.0 ? 0.0 : gamma_hat(config.snr_threshold, config.avg_snr);
}

std::vector<double> port_cdfs(const FasConfig& config, double r)
{
    std::vector<double> u(static_cast<std::size_t>(config.ports));
    for (std::int64_t k = 0; k < config.ports; ++k)
        u[static_cast<std::size_t>(k)] = marginal_cdf(config.port_marginal(k), r);
    return u;
}

// The closed forms below are written out per family, independently of
// diagonal_cdf, so the two routes check each other.

double frank_outage(double alpha, double f, double ports)
{
    // -(1/α) ln(1 + [e^{-αF} - 1]^K / (e^{-α} - 1)^{K-1}) with g = (e^{-αF}-1)/(e^{-α}-1):
    // the argument of the log is 1 - (1 - e^{-α}) g^K.
    const double log_gk = ports * (detail::log1mexp(alpha * f) - detail::log1mexp(alpha));
    if (log_gk > -1.0)
        return -std::log(-std::expm1(log_gk) + std::exp(log_gk - alpha)) / alpha;
    return -std::log1p(std::expm1(-alpha) * std::exp(log_gk)) / alpha;
}

double clayton_outage(double beta, double f, double ports)
{
    // [K(F^{-β} - 1) + 1]^{-1/β}, formed as exp(-(1/β) ln(1 + K expm1(-β ln F))).
    const double t = -beta * std::log(f);
    double log_bracket = 0.0;
    if (t > 30.0)
        log_bracket = std::log(ports) + t + std::log1p((1.0 / ports - 1.0) * std::exp(-t));
    else
        log_bracket = std::log1p(ports * std::expm1(t));
    return std::exp(-log_bracket / beta);
}

double gumbel_outage(double theta, double f, double ports)
{
    return std::exp(std::pow(ports, 1.0 / theta) * std::log(f));
}

double closed_form_from_marginal(const CopulaSpec& copula, double f, std::int64_t ports)
{
    if (f == 0.0 || f == 1.0)
        return f;
    const auto k = static_cast<double>(ports);
    switch (copula.family) {
    case CopulaFamily::Independence:
        return std::pow(f, k);
    case CopulaFamily::Frank:
        return frank_outage(copula.param, f, k);
    case CopulaFamily::Clayton:
        return clayton_outage(copula.param, f, k);
    case CopulaFamily::Gumbel:
        return gumbel_outage(copula.param, f, k);
    }
    throw UnsupportedConfiguration("outage_closed_form: unsupported copula family");
}

void check_port_counts(std::span<const std::int64_t> port_counts)
{
    for (std::size_t i = 0; i < port_counts.size(); ++i) {
        if (port_counts[i] < 1)
            throw DomainError("asymptotic_port_limit: port counts must be positive");
        if (i > 0 && port_counts[i] <= port_counts[i - 1])
            throw DomainError("asymptotic_port_limit: port counts must be strictly increasing");
    }
}

} // namespace

void FasConfig::validate() const
{
    if (ports < 1)
        throw InvalidParameter("FasConfig: port count must be at least 1");
    if (!(avg_snr > 0.0) || !std::isfinite(avg_snr))
        throw InvalidParameter("FasConfig: average SNR must be positive and finite");
    if (!(snr_threshold >= 0.0) || !std::isfinite(snr_threshold))
        throw InvalidParameter("FasConfig: SNR threshold must be non-negative and finite");
    copula.validate();
    if (per_port.empty()) {
        marginal.validate();
    } else {
        if (static_cast<std::int64_t>(per_port.size()) != ports)
            throw InvalidParameter("FasConfig: per-port marginals must have exactly K entries, got " +
                                   std::to_string(per_port.size()) + " for K=" + std::to_string(ports));
        for (const auto& p : per_port)
            p.validate();
    }
}

const NakagamiParams& FasConfig::port_marginal(std::int64_t k) const
{
    return per_port.empty() ? marginal : per_port.at(static_cast<std::size_t>(k));
}

double gamma_hat(double snr_threshold, double avg_snr)
{
    if (!(snr_threshold > 0.0) || !(avg_snr > 0.0))
        throw DomainError("gamma_hat: SNR threshold and average SNR must be positive");
    return std::sqrt(snr_threshold / avg_snr);
}

double cdf_h_fas(const FasConfig& config, double r)
{
    config.validate();
    if (!(r >= 0.0))
        throw DomainError("cdf_h_fas: amplitude must be non-negative");
    if (config.homogeneous())
        return diagonal_cdf(config.copula, marginal_cdf(config.marginal, r), config.ports);
    const auto u = port_cdfs(config, r);
    return copula_cdf(config.copula, u);
}

double pdf_h_fas(const FasConfig& config, double r)
{
    config.validate();
    if (!(r > 0.0))
        throw DomainError("pdf_h_fas: amplitude must be positive");
    if (std::isinf(r))
        return 0.0;

    if (config.homogeneous()) {
        const double f = marginal_cdf(config.marginal, r);
        const double density = marginal_pdf(config.marginal, r);
        if (density == 0.0)
            return 0.0;
        return diagonal_cdf_derivative(config.copula, f, config.ports) * density;
    }

    const double h = std::min(1e-5 * std::max(r, 1.0), 0.5 * r);
    const double slope = (cdf_h_fas(config, r + h) - cdf_h_fas(config, r - h)) / (2.0 * h);
    return std::max(slope, 0.0);
}

OutageResult outage_general(const FasConfig& config)
{
    config.validate();
    const double threshold = amplitude_threshold(config);
    return {cdf_h_fas(config, threshold), threshold};
}

OutageResult outage_closed_form(const FasConfig& config)
{
    config.validate();
    if (!config.homogeneous())
        throw UnsupportedConfiguration(
            "outage_closed_form: closed forms require identical port marginals; use outage_general");

    const double threshold = amplitude_threshold(config);
    if (threshold == 0.0)
        return {0.0, 0.0};

    const NakagamiParams& nak = config.marginal;
    const double f = reg_lower_inc_gamma(nak.m, nak.m / nak.mu * threshold * threshold);
    return {closed_form_from_marginal(config.copula, f, config.ports), threshold};
}

std::vector<double> asymptotic_port_limit(const FasConfig& base,
                                          std::span<const std::int64_t> port_counts)
{
    check_port_counts(port_counts);
    std::vector<double> out;
    out.reserve(port_counts.size());
    FasConfig config = base;
    for (std::int64_t k : port_counts) {
        config.ports = k;
        out.push_back(outage_closed_form(config).p_out);
    }
    return out;
}

std::vector<double> asymptotic_port_limit(const CopulaSpec& copula, double marginal_prob,
                                          std::span<const std::int64_t> port_counts)
{
    copula.validate();
    if (!(marginal_prob >= 0.0 && marginal_prob <= 1.0))
        throw DomainError("asymptotic_port_limit: marginal probability must lie in [0, 1]");
    check_port_counts(port_counts);
    std::vector<double> out;
    out.reserve(port_counts.size());
    for (std::int64_t k : port_counts)
        out.push_back(closed_form_from_marginal(copula, marginal_prob, k));
    return out;
}

} // namespace fas
