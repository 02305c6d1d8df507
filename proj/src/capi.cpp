#include "fas/fas.h"

#include "fas/analysis.hpp"
#include "fas/copula.hpp"
#include "fas/errors.hpp"
#include "fas/monte_carlo.hpp"
#include "fas/special_functions.hpp"

#include <algorithm>
#include <exception>
#include <new>
#include <span>
#include <string>

struct fas_config {
    fas::FasConfig value;
};

namespace {

thread_local std::string last_error;

int fail(int status, const char* message)
{
    last_error = message;
    return status;
}

// Runs `fn`, translating library exceptions to status codes.
template <typename Fn>
int guarded(Fn&& fn)
{
    try {
        fn();
        last_error.clear();
        return FAS_OK;
    } catch (const fas::DomainError& e) {
        return fail(FAS_ERR_DOMAIN, e.what());
    } catch (const fas::InvalidParameter& e) {
        return fail(FAS_ERR_INVALID_PARAMETER, e.what());
    } catch (const fas::UnsupportedConfiguration& e) {
        return fail(FAS_ERR_UNSUPPORTED, e.what());
    } catch (const fas::NonConvergence& e) {
        return fail(FAS_ERR_NO_CONVERGENCE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(FAS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(FAS_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(FAS_ERR_INTERNAL, "unknown error");
    }
}

fas::CopulaSpec make_copula(int family, double param)
{
    switch (family) {
    case FAS_COPULA_INDEPENDENCE:
        return fas::CopulaSpec::independence();
    case FAS_COPULA_FRANK:
        return fas::CopulaSpec::frank(param);
    case FAS_COPULA_CLAYTON:
        return fas::CopulaSpec::clayton(param);
    case FAS_COPULA_GUMBEL:
        return fas::CopulaSpec::gumbel(param);
    default:
        throw fas::InvalidParameter("unknown copula family code " + std::to_string(family));
    }
}

int family_code(fas::CopulaFamily family)
{
    switch (family) {
    case fas::CopulaFamily::Independence:
        return FAS_COPULA_INDEPENDENCE;
    case fas::CopulaFamily::Frank:
        return FAS_COPULA_FRANK;
    case fas::CopulaFamily::Clayton:
        return FAS_COPULA_CLAYTON;
    case fas::CopulaFamily::Gumbel:
        return FAS_COPULA_GUMBEL;
    }
    return -1;
}

// Applies `edit` to a copy and commits it only if the result validates.
template <typename Edit>
int update(fas_config* config, Edit&& edit)
{
    if (config == nullptr)
        return fail(FAS_ERR_NULL_ARGUMENT, "config is null");
    return guarded([&] {
        fas::FasConfig candidate = config->value;
        edit(candidate);
        candidate.validate();
        config->value = std::move(candidate);
    });
}

#define FAS_REQUIRE(ptr)                                                                           \
    do {                                                                                           \
        if ((ptr) == nullptr)                                                                      \
            return fail(FAS_ERR_NULL_ARGUMENT, #ptr " is null");                                   \
    } while (0)

} // namespace

extern "C" {

const char* fas_version(void)
{
    return "0.1.0";
}

const char* fas_status_string(int status)
{
    switch (status) {
    case FAS_OK:
        return "ok";
    case FAS_ERR_NULL_ARGUMENT:
        return "null argument";
    case FAS_ERR_DOMAIN:
        return "domain error";
    case FAS_ERR_INVALID_PARAMETER:
        return "invalid parameter";
    case FAS_ERR_UNSUPPORTED:
        return "unsupported configuration";
    case FAS_ERR_NO_CONVERGENCE:
        return "no convergence";
    case FAS_ERR_INTERNAL:
        return "internal error";
    default:
        return "unknown status";
    }
}

const char* fas_last_error(void)
{
    return last_error.c_str();
}

int fas_parse_family(const char* name, int* family_out)
{
    FAS_REQUIRE(name);
    FAS_REQUIRE(family_out);
    return guarded([&] { *family_out = family_code(fas::parse_copula_family(name)); });
}

const char* fas_family_name(int family)
{
    switch (family) {
    case FAS_COPULA_INDEPENDENCE:
        return "independence";
    case FAS_COPULA_FRANK:
        return "frank";
    case FAS_COPULA_CLAYTON:
        return "clayton";
    case FAS_COPULA_GUMBEL:
        return "gumbel";
    default:
        return nullptr;
    }
}

int fas_config_create(int64_t ports, double m, double mu, int family, double param, double avg_snr,
                      double snr_threshold, fas_config** out)
{
    FAS_REQUIRE(out);
    return guarded([&] {
        fas::FasConfig value;
        value.ports = ports;
        value.marginal = {m, mu};
        value.copula = make_copula(family, param);
        value.avg_snr = avg_snr;
        value.snr_threshold = snr_threshold;
        value.validate();
        *out = new fas_config{std::move(value)};
    });
}

int fas_config_clone(const fas_config* config, fas_config** out)
{
    FAS_REQUIRE(config);
    FAS_REQUIRE(out);
    return guarded([&] { *out = new fas_config{config->value}; });
}

void fas_config_destroy(fas_config* config)
{
    delete config;
}

int fas_config_set_ports(fas_config* config, int64_t ports)
{
    return update(config, [&](fas::FasConfig& c) { c.ports = ports; });
}

int fas_config_set_marginal(fas_config* config, double m, double mu)
{
    return update(config, [&](fas::FasConfig& c) {
        c.marginal = {m, mu};
        c.per_port.clear();
    });
}

int fas_config_set_copula(fas_config* config, int family, double param)
{
    return update(config, [&](fas::FasConfig& c) { c.copula = make_copula(family, param); });
}

int fas_config_set_snr(fas_config* config, double avg_snr, double snr_threshold)
{
    return update(config, [&](fas::FasConfig& c) {
        c.avg_snr = avg_snr;
        c.snr_threshold = snr_threshold;
    });
}

int fas_config_set_port_marginals(fas_config* config, const double* m, const double* mu, size_t count)
{
    FAS_REQUIRE(m);
    FAS_REQUIRE(mu);
    return update(config, [&](fas::FasConfig& c) {
        c.per_port.clear();
        for (size_t k = 0; k < count; ++k)
            c.per_port.push_back({m[k], mu[k]});
    });
}

int fas_config_get_ports(const fas_config* config, int64_t* ports)
{
    FAS_REQUIRE(config);
    FAS_REQUIRE(ports);
    *ports = config->value.ports;
    return FAS_OK;
}

int fas_gamma_hat(double snr_threshold, double avg_snr, double* out)
{
    FAS_REQUIRE(out);
    return guarded([&] { *out = fas::gamma_hat(snr_threshold, avg_snr); });
}

int fas_cdf_h_fas(const fas_config* config, double r, double* out)
{
    FAS_REQUIRE(config);
    FAS_REQUIRE(out);
    return guarded([&] { *out = fas::cdf_h_fas(config->value, r); });
}

int fas_pdf_h_fas(const fas_config* config, double r, double* out)
{
    FAS_REQUIRE(config);
    FAS_REQUIRE(out);
    return guarded([&] { *out = fas::pdf_h_fas(config->value, r); });
}

int fas_outage_general(const fas_config* config, fas_outage_result* out)
{
    FAS_REQUIRE(config);
    FAS_REQUIRE(out);
    return guarded([&] {
        const auto r = fas::outage_general(config->value);
        *out = {r.p_out, r.gamma_hat};
    });
}

int fas_outage_closed_form(const fas_config* config, fas_outage_result* out)
{
    FAS_REQUIRE(config);
    FAS_REQUIRE(out);
    return guarded([&] {
        const auto r = fas::outage_closed_form(config->value);
        *out = {r.p_out, r.gamma_hat};
    });
}

int fas_asymptotic_port_limit(const fas_config* config, const int64_t* port_counts, size_t count,
                              double* out)
{
    FAS_REQUIRE(config);
    FAS_REQUIRE(port_counts);
    FAS_REQUIRE(out);
    return guarded([&] {
        const auto values =
            fas::asymptotic_port_limit(config->value, std::span<const std::int64_t>(port_counts, count));
        std::copy(values.begin(), values.end(), out);
    });
}

int fas_simulate_outage(const fas_config* config, int64_t trials, uint64_t seed, unsigned workers,
                        fas_sim_result* out)
{
    FAS_REQUIRE(config);
    FAS_REQUIRE(out);
    return guarded([&] {
        fas::SimOptions options;
        options.workers = workers;
        const auto r = fas::simulate_outage(config->value, trials, seed, options);
        *out = {r.trials, r.outage_count, r.p_hat, r.ci_half_width, r.seed};
    });
}

int fas_empirical_cdf_h_fas(const fas_config* config, int64_t trials, uint64_t seed, unsigned workers,
                            const double* r_grid, size_t count, double* out)
{
    FAS_REQUIRE(config);
    FAS_REQUIRE(r_grid);
    FAS_REQUIRE(out);
    return guarded([&] {
        fas::SimOptions options;
        options.workers = workers;
        const auto values = fas::empirical_cdf_h_fas(config->value, trials, seed,
                                                     std::span<const double>(r_grid, count), options);
        std::copy(values.begin(), values.end(), out);
    });
}

int fas_copula_cdf(int family, double param, const double* u, size_t d, double* out)
{
    FAS_REQUIRE(u);
    FAS_REQUIRE(out);
    return guarded([&] { *out = fas::copula_cdf(make_copula(family, param), std::span<const double>(u, d)); });
}

int fas_copula_diagonal(int family, double param, double u, int64_t d, double* out)
{
    FAS_REQUIRE(out);
    return guarded([&] { *out = fas::diagonal_cdf(make_copula(family, param), u, d); });
}

int fas_kendall_tau(int family, double param, double* out)
{
    FAS_REQUIRE(out);
    return guarded([&] { *out = fas::kendall_tau(make_copula(family, param)); });
}

int fas_marginal_pdf(double m, double mu, double r, double* out)
{
    FAS_REQUIRE(out);
    return guarded([&] { *out = fas::marginal_pdf({m, mu}, r); });
}

int fas_marginal_cdf(double m, double mu, double r, double* out)
{
    FAS_REQUIRE(out);
    return guarded([&] { *out = fas::marginal_cdf({m, mu}, r); });
}

int fas_marginal_quantile(double m, double mu, double p, double* out)
{
    FAS_REQUIRE(out);
    return guarded([&] { *out = fas::marginal_quantile({m, mu}, p); });
}

int fas_log_gamma(double x, double* out)
{
    FAS_REQUIRE(out);
    return guarded([&] { *out = fas::log_gamma(x); });
}

int fas_reg_lower_inc_gamma(double a, double x, double* out)
{
    FAS_REQUIRE(out);
    return guarded([&] { *out = fas::reg_lower_inc_gamma(a, x); });
}

int fas_inv_reg_lower_inc_gamma(double a, double p, double* out)
{
    FAS_REQUIRE(out);
    return guarded([&] { *out = fas::inv_reg_lower_inc_gamma(a, p); });
}

} // extern "C"
