#pragma once

namespace fas {

/// Convergence controls for the iterative special functions.
struct Tolerance {
    double rel_eps = 1e-15;
    int max_iter = 5000;

    /// Throws InvalidParameter unless rel_eps is in (0, 1e-6] and max_iter >= 50.
    void validate() const;
};

/// ln Γ(x) for x > 0.
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) = γ(a, x) / Γ(a).
///
/// Uses the power series below x = a + 1 and a Lentz continued fraction for the
/// complement above it. Throws DomainError for a <= 0 or x < 0 (NaN included).
double reg_lower_inc_gamma(double a, double x, const Tolerance& tol = {});

/// Solves P(a, x) = p for x. p must lie in [0, 1); returns 0 for p = 0.
///
/// Safeguarded Newton iteration started from a Wilson–Hilferty estimate. Throws
/// NonConvergence if the iteration cap is reached.
double inv_reg_lower_inc_gamma(double a, double p, const Tolerance& tol = {});

namespace detail {
// Q(a, x) = 1 - P(a, x), evaluated without cancellation for large x.
double reg_upper_inc_gamma(double a, double x, const Tolerance& tol);
} // namespace detail

} // namespace fas
