#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fas {

enum class CopulaFamily { Independence, Frank, Clayton, Gumbel };

std::string_view to_string(CopulaFamily family);

/// Parses "independence", "frank", "clayton" or "gumbel" (case-insensitive).
/// Throws InvalidParameter for anything else.
CopulaFamily parse_copula_family(std::string_view name);

/// Archimedean dependence structure shared by all ports.
///
/// `param` is α for Frank (α > 0), β for Clayton (β > 0) and θ for Gumbel
/// (θ >= 1). It is ignored for Independence. Exact independence inside the
/// Frank and Clayton families (α = 0, β = 0) is not representable; use
/// CopulaFamily::Independence instead.
struct CopulaSpec {
    CopulaFamily family = CopulaFamily::Independence;
    double param = 0.0;

    static CopulaSpec independence() { return {CopulaFamily::Independence, 0.0}; }
    static CopulaSpec frank(double alpha) { return {CopulaFamily::Frank, alpha}; }
    static CopulaSpec clayton(double beta) { return {CopulaFamily::Clayton, beta}; }
    static CopulaSpec gumbel(double theta) { return {CopulaFamily::Gumbel, theta}; }

    void validate() const;

    friend bool operator==(const CopulaSpec&, const CopulaSpec&) = default;
};

/// C(u_1, ..., u_d), evaluated through the generator representation
/// ψ(φ(u_1) + ... + φ(u_d)). Independence returns the product.
double copula_cdf(const CopulaSpec& spec, std::span<const double> u);

/// Diagonal section C(u, ..., u) for d coordinates, from the per-family closed
/// forms. This is the CDF of max(U_1, ..., U_d).
double diagonal_cdf(const CopulaSpec& spec, double u, std::int64_t d);

/// d/du of diagonal_cdf(spec, u, d) for u in (0, 1].
double diagonal_cdf_derivative(const CopulaSpec& spec, double u, std::int64_t d);

/// Generator φ(t), t in (0, 1]. φ(1) = 0, decreasing.
double generator(const CopulaSpec& spec, double t);

/// Inverse generator ψ(s), s >= 0 (s = +inf gives 0).
double inv_generator(const CopulaSpec& spec, double s);

/// Population Kendall's tau of the bivariate member of the family.
double kendall_tau(const CopulaSpec& spec);

/// First Debye function D1(x) = (1/x) ∫_0^x t / (e^t - 1) dt.
double debye1(double x);

// ---------------------------------------------------------------------------
// Sampling

using Rng = std::mt19937_64;

/// Independent generator for substream `stream` of master seed `seed`.
Rng make_substream(std::uint64_t seed, std::uint64_t stream);

/// Uniform variate strictly inside (0, 1).
double open_unit(Rng& rng);

/// Positive stable variate with Laplace transform exp(-s^index), index in (0, 1].
double sample_positive_stable(double index, Rng& rng);

/// Logarithmic-series variate, P(V = k) = -p^k / (k ln(1 - p)), p in (0, 1).
/// `log1m_p` must equal ln(1 - p); passing it separately keeps precision when p ~ 1.
std::int64_t sample_log_series(double p, double log1m_p, Rng& rng);

/// One draw (U_1, ..., U_d) from the copula, written to `out` (d = out.size()).
void sample_copula(const CopulaSpec& spec, std::span<double> out, Rng& rng);

std::vector<double> sample_copula(const CopulaSpec& spec, std::int64_t d, Rng& rng);

// ---------------------------------------------------------------------------
// Rank correlation

/// Sample Kendall's tau-b of paired observations in O(n log n).
double empirical_kendall_tau(std::span<const double> x, std::span<const double> y);

} // namespace fas
