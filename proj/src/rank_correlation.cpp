#include "fas/copula.hpp"

#include "fas/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace fas {

namespace {

std::int64_t tied_pairs(std::span<const double> sorted)
{
    std::int64_t total = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        const auto run = static_cast<std::int64_t>(j - i);
        total += run * (run - 1) / 2;
        i = j;
    }
    return total;
}

// Stable merge sort of `values` that returns the number of inversions
// (pairs i < j with values[i] > values[j]).
std::int64_t count_inversions(std::vector<double>& values, std::vector<double>& scratch)
{
    const std::size_t n = values.size();
    std::int64_t swaps = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t i = lo;
            std::size_t j = mid;
            std::size_t k = lo;
            while (i < mid && j < hi) {
                if (values[j] < values[i]) {
                    scratch[k++] = values[j++];
                    swaps += static_cast<std::int64_t>(mid - i);
                } else {
                    scratch[k++] = values[i++];
                }
            }
            while (i < mid)
                scratch[k++] = values[i++];
            while (j < hi)
                scratch[k++] = values[j++];
        }
        values.swap(scratch);
    }
    return swaps;
}

} // namespace

// Knight's algorithm for tau-b.
double empirical_kendall_tau(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw DomainError("empirical_kendall_tau: samples must have equal length");
    if (x.size() < 2)
        throw DomainError("empirical_kendall_tau: need at least two observations");

    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
    });

    std::vector<double> xs(n);
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = x[order[i]];
        ys[i] = y[order[i]];
    }

    const auto total = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
    const std::int64_t x_ties = tied_pairs(xs);

    std::int64_t joint_ties = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && xs[j] == xs[i] && ys[j] == ys[i])
            ++j;
        const auto run = static_cast<std::int64_t>(j - i);
        joint_ties += run * (run - 1) / 2;
        i = j;
    }

    std::vector<double> scratch(n);
    const std::int64_t discordant = count_inversions(ys, scratch);
    const std::int64_t y_ties = tied_pairs(ys);

    const double numerator =
        static_cast<double>(total - x_ties - y_ties + joint_ties - 2 * discordant);
    const double denominator =
        std::sqrt(static_cast<double>(total - x_ties) * static_cast<double>(total - y_ties));
    if (denominator == 0.0)
        return 0.0;
    return numerator / denominator;
}

} // namespace fas
