#include "fas/nakagami.hpp"

#include "fas/errors.hpp"
#include "fas/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace fas {

void NakagamiParams::validate() const
{
    if (!(m >= 0.5) || !std::isfinite(m))
        throw InvalidParameter("Nakagami shape m must be >= 0.5");
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw InvalidParameter("Nakagami spread mu must be positive");
}

double marginal_pdf(const NakagamiParams& params, double r)
{
    params.validate();
    if (!(r >= 0.0))
        throw DomainError("marginal_pdf: amplitude must be non-negative");
    if (std::isinf(r))
        return 0.0;

    const double m = params.m;
    if (r == 0.0) {
        // r^{2m-1} is 1 only in the m = 1/2 (one-sided Gaussian) case.
        if (m == 0.5)
            return 2.0 * std::sqrt(0.5 / params.mu) / std::sqrt(std::numbers::pi);
        return 0.0;
    }
    const double log_density = std::log(2.0) + m * std::log(m / params.mu) - log_gamma(m) +
                               (2.0 * m - 1.0) * std::log(r) - m * r * r / params.mu;
    return std::exp(log_density);
}

double marginal_cdf(const NakagamiParams& params, double r)
{
    params.validate();
    if (!(r >= 0.0))
        throw DomainError("marginal_cdf: amplitude must be non-negative");
    return reg_lower_inc_gamma(params.m, params.m * r * r / params.mu);
}

double marginal_quantile(const NakagamiParams& params, double p)
{
    params.validate();
    if (!(p >= 0.0 && p < 1.0))
        throw DomainError("marginal_quantile: p must be in [0, 1)");
    return std::sqrt(params.mu / params.m * inv_reg_lower_inc_gamma(params.m, p));
}

} // namespace fas
