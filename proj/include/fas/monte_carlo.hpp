#pragma once

#include "fas/analysis.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fas {

struct SimResult {
    std::int64_t trials = 0;
    std::int64_t outage_count = 0;
    double p_hat = 0.0;
    double ci_half_width = 0.0; // 1.96 sqrt(p_hat (1 - p_hat) / trials)
    std::uint64_t seed = 0;
};

struct SimOptions {
    // 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;
    // Trials per random substream. Results depend on (seed, block_size) only,
    // never on the worker count.
    std::int64_t block_size = 1 << 16;
};

/// Monte Carlo outage estimate. Each trial draws (U_1..U_K) from the copula,
/// maps them through the marginal quantile, selects the strongest port and
/// counts an outage when avg_snr * h_FAS^2 <= snr_threshold.
SimResult simulate_outage(const FasConfig& config, std::int64_t trials, std::uint64_t seed,
                          const SimOptions& options = {});

/// Fraction of trials with h_FAS <= r for every r in the ascending grid.
std::vector<double> empirical_cdf_h_fas(const FasConfig& config, std::int64_t trials,
                                        std::uint64_t seed, std::span<const double> r_grid,
                                        const SimOptions& options = {});

/// One realisation of h_FAS; exposed for diagnostics and tests.
double draw_h_fas(const FasConfig& config, std::span<double> scratch, Rng& rng);

} // namespace fas
