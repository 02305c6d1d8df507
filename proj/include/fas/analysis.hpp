#pragma once

#include "fas/copula.hpp"
#include "fas/nakagami.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fas {

/// Single-user fluid antenna receiver that activates the strongest of K ports.
///
/// SNR quantities are linear (avg_snr = P/N). All ports share `marginal`
/// unless `per_port` is non-empty, in which case it must hold exactly K entries
/// and overrides `marginal`. Only outage_general / cdf_h_fas / pdf_h_fas accept
/// heterogeneous ports.
struct FasConfig {
    std::int64_t ports = 1;
    NakagamiParams marginal;
    std::vector<NakagamiParams> per_port;
    CopulaSpec copula;
    double avg_snr = 1.0;
    double snr_threshold = 1.0; // γ_th >= 0; 0 means "never in outage"

    void validate() const;
    bool homogeneous() const { return per_port.empty(); }
    const NakagamiParams& port_marginal(std::int64_t k) const;
};

struct OutageResult {
    double p_out = 0.0;
    double gamma_hat = 0.0; // sqrt(γ_th / γ̄), the amplitude threshold
};

/// Amplitude threshold sqrt(γ_th / γ̄). Both arguments must be positive.
double gamma_hat(double snr_threshold, double avg_snr);

/// CDF of h_FAS = max_k |h_k| at amplitude r: C(F_1(r), ..., F_K(r)).
double cdf_h_fas(const FasConfig& config, double r);

/// Density of h_FAS at r > 0.
///
/// Identical ports use the analytic derivative of the copula diagonal times the
/// marginal density; heterogeneous ports fall back to a central difference of
/// cdf_h_fas.
double pdf_h_fas(const FasConfig& config, double r);

/// Outage through the general copula route, P(h_FAS <= γ̂) = cdf_h_fas(γ̂).
/// Valid for any marginal/copula combination the library exposes.
OutageResult outage_general(const FasConfig& config);

/// Outage from the closed-form Nakagami expressions for Frank, Clayton, Gumbel
/// and Independence. Throws UnsupportedConfiguration for heterogeneous ports.
OutageResult outage_closed_form(const FasConfig& config);

/// Closed-form outage for each K in `port_counts` (strictly increasing), all
/// other fields taken from `base`.
std::vector<double> asymptotic_port_limit(const FasConfig& base,
                                          std::span<const std::int64_t> port_counts);

/// Same, with the per-port outage marginal F(γ̂) given directly.
std::vector<double> asymptotic_port_limit(const CopulaSpec& copula, double marginal_prob,
                                          std::span<const std::int64_t> port_counts);

} // namespace fas
