#include "fas/monte_carlo.hpp"

#include "fas/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace fas {

namespace {

double quantile_or_inf(const NakagamiParams& params, double u)
{
    return u >= 1.0 ? std::numeric_limits<double>::infinity() : marginal_quantile(params, u);
}

unsigned resolve_workers(const SimOptions& options, std::int64_t blocks)
{
    unsigned workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
    workers = std::max(workers, 1u);
    return static_cast<unsigned>(std::min<std::int64_t>(workers, std::max<std::int64_t>(blocks, 1)));
}

// Runs `body(rng, count, accumulator)` for every block, each with
// its own substream, and returns the per-block accumulators in block order.
template <typename Accumulator, typename Body>
std::vector<Accumulator> run_blocks(std::int64_t trials, std::uint64_t seed, const SimOptions& options,
                                    const Accumulator& init, Body body)
{
    if (options.block_size < 1)
        throw InvalidParameter("SimOptions: block_size must be positive");
    const std::int64_t blocks = (trials + options.block_size - 1) / options.block_size;
    std::vector<Accumulator> results(static_cast<std::size_t>(blocks), init);

    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        try {
            for (std::int64_t b = next++; b < blocks; b = next++) {
                Rng rng = make_substream(seed, static_cast<std::uint64_t>(b));
                const std::int64_t first = b * options.block_size;
                const std::int64_t count = std::min(options.block_size, trials - first);
                body(rng, count, results[static_cast<std::size_t>(b)]);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next = blocks;
        }
    };

    const unsigned workers = resolve_workers(options, blocks);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);
    return results;
}

} // namespace

double draw_h_fas(const FasConfig& config, std::span<double> scratch, Rng& rng)
{
    sample_copula(config.copula, scratch, rng);
    if (config.homogeneous()) {
        // The quantile is increasing, so the largest uniform maps to the best port.
        return quantile_or_inf(config.marginal, *std::max_element(scratch.begin(), scratch.end()));
    }
    double best = 0.0;
    for (std::size_t k = 0; k < scratch.size(); ++k)
        best = std::max(best, quantile_or_inf(config.per_port[k], scratch[k]));
    return best;
}

SimResult simulate_outage(const FasConfig& config, std::int64_t trials, std::uint64_t seed,
                          const SimOptions& options)
{
    config.validate();
    if (trials < 1)
        throw InvalidParameter("simulate_outage: trials must be at least 1");

    const double avg_snr = config.avg_snr;
    const double threshold = config.snr_threshold;
    const auto blocks = run_blocks<std::int64_t>(
        trials, seed, options, 0, [&](Rng& rng, std::int64_t count, std::int64_t& outages) {
            std::vector<double> scratch(static_cast<std::size_t>(config.ports));
            for (std::int64_t i = 0; i < count; ++i) {
                const double h = draw_h_fas(config, scratch, rng);
                if (avg_snr * h * h <= threshold)
                    ++outages;
            }
        });

    SimResult result;
    result.trials = trials;
    result.seed = seed;
    for (std::int64_t c : blocks)
        result.outage_count += c;
    result.p_hat = static_cast<double>(result.outage_count) / static_cast<double>(trials);
    result.ci_half_width =
        1.96 * std::sqrt(result.p_hat * (1.0 - result.p_hat) / static_cast<double>(trials));
    return result;
}

std::vector<double> empirical_cdf_h_fas(const FasConfig& config, std::int64_t trials,
                                        std::uint64_t seed, std::span<const double> r_grid,
                                        const SimOptions& options)
{
    config.validate();
    if (trials < 1)
        throw InvalidParameter("empirical_cdf_h_fas: trials must be at least 1");
    if (!std::is_sorted(r_grid.begin(), r_grid.end()))
        throw DomainError("empirical_cdf_h_fas: grid must be sorted ascending");
    if (r_grid.empty())
        return {};

    // counts[i] = trials whose h_FAS falls at or below r_grid[i] but above r_grid[i-1].
    const std::vector<std::int64_t> zero(r_grid.size(), 0);
    const auto blocks = run_blocks<std::vector<std::int64_t>>(
        trials, seed, options, zero,
        [&](Rng& rng, std::int64_t count, std::vector<std::int64_t>& counts) {
            std::vector<double> scratch(static_cast<std::size_t>(config.ports));
            for (std::int64_t i = 0; i < count; ++i) {
                const double h = draw_h_fas(config, scratch, rng);
                const auto it = std::lower_bound(r_grid.begin(), r_grid.end(), h);
                if (it != r_grid.end())
                    ++counts[static_cast<std::size_t>(it - r_grid.begin())];
            }
        });

    std::vector<double> cdf(r_grid.size(), 0.0);
    std::int64_t running = 0;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        for (const auto& counts : blocks)
            running += counts[i];
        cdf[i] = static_cast<double>(running) / static_cast<double>(trials);
    }
    return cdf;
}

} // namespace fas
