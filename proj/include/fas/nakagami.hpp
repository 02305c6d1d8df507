#pragma once

namespace fas {

// Nakagami-m amplitude law |h| of a single port. m = 1 is Rayleigh.
struct NakagamiParams {
    double m = 1.0;  // shape (fading severity), m >= 0.5
    double mu = 1.0; // spread, E[|h|^2]

    void validate() const;

    friend bool operator==(const NakagamiParams&, const NakagamiParams&) = default;
};

// Density of |h| at amplitude r >= 0.
double marginal_pdf(const NakagamiParams& params, double r);

// P(|h| <= r) = P(m, m r^2 / mu).
double marginal_cdf(const NakagamiParams& params, double r);

// Inverse of marginal_cdf for p in [0, 1).
double marginal_quantile(const NakagamiParams& params, double p);

} // namespace fas
