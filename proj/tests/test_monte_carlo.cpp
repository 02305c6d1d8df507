#include "fas/errors.hpp"
#include "fas/monte_carlo.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace fas;

namespace {

FasConfig make_config(CopulaSpec copula, std::int64_t ports, double avg_snr, double threshold = 1.0)
{
    FasConfig cfg;
    cfg.ports = ports;
    cfg.copula = copula;
    cfg.avg_snr = avg_snr;
    cfg.snr_threshold = threshold;
    return cfg;
}

// One-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> samples, const NakagamiParams& params)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = marginal_cdf(params, samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

} // namespace

TEST(SimulateOutage, ResultInvariants)
{
    const auto r = simulate_outage(make_config(CopulaSpec::clayton(3.0), 4, 10.0), 12345, 7);
    EXPECT_EQ(r.trials, 12345);
    EXPECT_EQ(r.seed, 7u);
    EXPECT_LE(r.outage_count, r.trials);
    EXPECT_DOUBLE_EQ(r.p_hat, static_cast<double>(r.outage_count) / 12345.0);
    EXPECT_DOUBLE_EQ(r.ci_half_width, 1.96 * std::sqrt(r.p_hat * (1.0 - r.p_hat) / 12345.0));
}

TEST(SimulateOutage, DeterministicAcrossWorkerCounts)
{
    const auto cfg = make_config(CopulaSpec::frank(10.0), 5, 3.0);
    SimOptions opts;
    opts.block_size = 1000;
    opts.workers = 1;
    const auto reference = simulate_outage(cfg, 25500, 99, opts);
    for (unsigned workers : {1u, 2u, 3u, 8u}) {
        opts.workers = workers;
        const auto again = simulate_outage(cfg, 25500, 99, opts);
        EXPECT_EQ(again.outage_count, reference.outage_count) << workers;
        EXPECT_EQ(again.p_hat, reference.p_hat);
        EXPECT_EQ(again.ci_half_width, reference.ci_half_width);
    }
    const auto other = simulate_outage(cfg, 25500, 100, opts);
    EXPECT_NE(other.outage_count, reference.outage_count);
}

TEST(SimulateOutage, ZeroThresholdNeverOutage)
{
    for (const auto& spec : {CopulaSpec::frank(5.0), CopulaSpec::clayton(5.0), CopulaSpec::gumbel(5.0)}) {
        const auto r = simulate_outage(make_config(spec, 3, 10.0, 0.0), 10000, 1);
        EXPECT_EQ(r.outage_count, 0);
        EXPECT_EQ(r.p_hat, 0.0);
    }
}

TEST(SimulateOutage, SingleTrialIsDegenerate)
{
    const auto r = simulate_outage(make_config(CopulaSpec::gumbel(2.0), 3, 1.0), 1, 5);
    EXPECT_TRUE(r.p_hat == 0.0 || r.p_hat == 1.0);
    EXPECT_EQ(r.ci_half_width, 0.0);
}

TEST(SimulateOutage, SisoMatchesExponentialCdf)
{
    const auto r = simulate_outage(make_config(CopulaSpec::independence(), 1, 10.0), 1000000, 2024);
    const double exact = -std::expm1(-0.1);
    EXPECT_NEAR(r.p_hat, exact, 4.0 * oracle::binomial_sigma(exact, 1e6));
}

TEST(SimulateOutage, MatchesClosedFormAtTenMillionTrials)
{
    for (const auto& spec : {CopulaSpec::frank(30.0), CopulaSpec::clayton(30.0)}) {
        const auto cfg = make_config(spec, 6, 100.0);
        const double exact = outage_closed_form(cfg).p_out;
        const auto r = simulate_outage(cfg, 10000000, 31337);
        EXPECT_NEAR(r.p_hat, exact, 4.0 * oracle::binomial_sigma(exact, 1e7)) << to_string(spec.family);
    }
}

TEST(SimulateOutage, RejectsInvalidInput)
{
    EXPECT_THROW(simulate_outage(make_config(CopulaSpec::frank(2.0), 2, 1.0), 0, 1), InvalidParameter);
    EXPECT_THROW(simulate_outage(make_config(CopulaSpec::frank(-2.0), 2, 1.0), 10, 1), InvalidParameter);
    SimOptions opts;
    opts.block_size = 0;
    EXPECT_THROW(simulate_outage(make_config(CopulaSpec::frank(2.0), 2, 1.0), 10, 1, opts), InvalidParameter);
}

TEST(Marginals, PortSamplesPassKolmogorovSmirnov)
{
    const NakagamiParams params{2.0, 1.5};
    const std::size_t n = 100000;
    const double critical = 1.628 / std::sqrt(static_cast<double>(n)); // 1% level

    FasConfig single = make_config(CopulaSpec::gumbel(4.0), 1, 1.0);
    single.marginal = params;
    Rng rng = make_substream(77, 0);
    std::vector<double> scratch(1);
    std::vector<double> h(n);
    for (auto& x : h)
        x = draw_h_fas(single, scratch, rng);
    EXPECT_LT(ks_statistic(h, params), critical);

    // Pool every port of a correlated draw, one port per draw to keep samples independent.
    for (const auto& spec : {CopulaSpec::frank(20.0), CopulaSpec::clayton(8.0), CopulaSpec::gumbel(6.0)}) {
        std::vector<double> u(5);
        std::vector<double> pooled(n);
        for (std::size_t i = 0; i < n; ++i) {
            sample_copula(spec, u, rng);
            pooled[i] = marginal_quantile(params, u[i % u.size()]);
        }
        EXPECT_LT(ks_statistic(pooled, params), critical) << to_string(spec.family);
    }
}

TEST(EmpiricalCdf, ZeroGridAndMonotone)
{
    const auto cfg = make_config(CopulaSpec::frank(4.0), 3, 1.0);
    const std::vector<double> zero{0.0};
    EXPECT_EQ(empirical_cdf_h_fas(cfg, 1000, 1, zero), std::vector<double>{0.0});
    EXPECT_TRUE(empirical_cdf_h_fas(cfg, 10, 1, std::vector<double>{}).empty());

    std::vector<double> grid;
    for (double r = 0.0; r < 3.0; r += 0.05)
        grid.push_back(r);
    const auto cdf = empirical_cdf_h_fas(cfg, 50000, 4, grid);
    EXPECT_TRUE(std::is_sorted(cdf.begin(), cdf.end()));
    EXPECT_LE(cdf.back(), 1.0);

    const std::vector<double> unsorted{1.0, 0.5};
    EXPECT_THROW(empirical_cdf_h_fas(cfg, 10, 1, unsorted), DomainError);
}

TEST(EmpiricalCdf, IndependentPairAtUnitAmplitude)
{
    const auto cfg = make_config(CopulaSpec::independence(), 2, 1.0);
    const std::vector<double> grid{1.0};
    const double exact = std::pow(-std::expm1(-1.0), 2);
    const auto cdf = empirical_cdf_h_fas(cfg, 1000000, 8, grid);
    EXPECT_NEAR(cdf[0], exact, 4.0 * oracle::binomial_sigma(exact, 1e6));
}

TEST(EmpiricalCdf, ClaytonMatchesAnalyticAtEveryGridPoint)
{
    const auto cfg = make_config(CopulaSpec::clayton(10.0), 6, 1.0);
    std::vector<double> grid;
    for (int i = 1; i <= 20; ++i)
        grid.push_back(0.12 * i);
    const std::int64_t n = 1000000;
    const auto cdf = empirical_cdf_h_fas(cfg, n, 12, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double exact = cdf_h_fas(cfg, grid[i]);
        EXPECT_NEAR(cdf[i], exact, 4.0 * oracle::binomial_sigma(exact, static_cast<double>(n)) + 1e-12)
            << "r=" << grid[i];
    }
}

TEST(EmpiricalCdf, HeterogeneousPortsMatchGeneralForm)
{
    auto cfg = make_config(CopulaSpec::gumbel(3.0), 3, 1.0);
    cfg.per_port = {{1.0, 1.0}, {3.0, 0.5}, {0.6, 2.0}};
    const std::vector<double> grid{0.3, 0.7, 1.1, 1.6};
    const std::int64_t n = 400000;
    const auto cdf = empirical_cdf_h_fas(cfg, n, 21, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double exact = cdf_h_fas(cfg, grid[i]);
        EXPECT_NEAR(cdf[i], exact, 4.0 * oracle::binomial_sigma(exact, static_cast<double>(n)) + 1e-12);
    }
}
