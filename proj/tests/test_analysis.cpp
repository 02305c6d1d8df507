#include "fas/analysis.hpp"
#include "fas/errors.hpp"
#include "fas/special_functions.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace fas;

namespace {

FasConfig make_config(CopulaSpec copula, std::int64_t ports, double avg_snr = 100.0, double threshold = 1.0,
                      NakagamiParams marginal = {1.0, 1.0})
{
    FasConfig cfg;
    cfg.ports = ports;
    cfg.marginal = marginal;
    cfg.copula = copula;
    cfg.avg_snr = avg_snr;
    cfg.snr_threshold = threshold;
    return cfg;
}

CopulaSpec family_spec(CopulaFamily family, double param)
{
    switch (family) {
    case CopulaFamily::Frank: return CopulaSpec::frank(param);
    case CopulaFamily::Clayton: return CopulaSpec::clayton(param);
    case CopulaFamily::Gumbel: return CopulaSpec::gumbel(param);
    case CopulaFamily::Independence: break;
    }
    return CopulaSpec::independence();
}

constexpr CopulaFamily kFamilies[] = {CopulaFamily::Frank, CopulaFamily::Clayton, CopulaFamily::Gumbel};

} // namespace

TEST(GammaHat, Examples)
{
    EXPECT_DOUBLE_EQ(gamma_hat(1.0, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(gamma_hat(1.0, 100.0), 0.1);
    EXPECT_DOUBLE_EQ(gamma_hat(2.0, 50.0), 0.2);
    EXPECT_THROW(gamma_hat(0.0, 1.0), DomainError);
    EXPECT_THROW(gamma_hat(1.0, -1.0), DomainError);
}

TEST(FasConfig, Validation)
{
    EXPECT_NO_THROW(make_config(CopulaSpec::frank(3.0), 4).validate());
    EXPECT_THROW(make_config(CopulaSpec::frank(3.0), 0).validate(), InvalidParameter);
    EXPECT_THROW(make_config(CopulaSpec::frank(3.0), 2, 0.0).validate(), InvalidParameter);
    EXPECT_THROW(make_config(CopulaSpec::frank(3.0), 2, 1.0, -1.0).validate(), InvalidParameter);
    EXPECT_THROW(make_config(CopulaSpec::gumbel(0.5), 2).validate(), InvalidParameter);
    auto cfg = make_config(CopulaSpec::clayton(2.0), 3);
    cfg.per_port = {{1.0, 1.0}, {2.0, 1.0}};
    EXPECT_THROW(cfg.validate(), InvalidParameter);
}

TEST(CdfHFas, Examples)
{
    EXPECT_NEAR(cdf_h_fas(make_config(CopulaSpec::frank(12.0), 1), 1.0), 1.0 - std::exp(-1.0), 1e-15);
    for (auto family : kFamilies)
        EXPECT_EQ(cdf_h_fas(make_config(family_spec(family, 4.0), 7), 0.0), 0.0);
    EXPECT_NEAR(cdf_h_fas(make_config(CopulaSpec::gumbel(1.0), 4), 1.0), 0.15966130015118527, 1e-14);
    EXPECT_THROW(cdf_h_fas(make_config(CopulaSpec::gumbel(1.0), 4), -1.0), DomainError);
}

TEST(PdfHFas, Examples)
{
    EXPECT_NEAR(pdf_h_fas(make_config(CopulaSpec::clayton(5.0), 1), 1.0), 2.0 * std::exp(-1.0), 1e-15);
    // 3 (1 - e^-1)^2 2 e^-1 = 0.88197565839648528 (mpmath)
    EXPECT_NEAR(pdf_h_fas(make_config(CopulaSpec::gumbel(1.0), 3), 1.0), 0.88197565839648528, 1e-14);

    const auto cfg = make_config(CopulaSpec::frank(30.0), 6);
    const double h = 1e-5;
    const double fd = (cdf_h_fas(cfg, 1.0 + h) - cdf_h_fas(cfg, 1.0 - h)) / (2 * h);
    EXPECT_NEAR(pdf_h_fas(cfg, 1.0), fd, 1e-6);
    // 0.73576874626082249 (mpmath)
    EXPECT_NEAR(pdf_h_fas(cfg, 1.0), 0.73576874626082249, 1e-12);
    EXPECT_THROW(pdf_h_fas(cfg, 0.0), DomainError);
}

TEST(PdfHFas, IntegratesToOneAndIsNonnegative)
{
    for (auto family : kFamilies) {
        for (double param : {2.0, 10.0, 30.0}) {
            for (std::int64_t ports : {2, 6, 20}) {
                for (NakagamiParams marginal : {NakagamiParams{1.0, 1.0}, NakagamiParams{3.0, 2.0}}) {
                    const auto cfg = make_config(family_spec(family, param), ports, 1.0, 1.0, marginal);
                    const double total = oracle::integrate_pieces(
                        [&](long double r) {
                            return r <= 0.0L ? 0.0L
                                             : static_cast<long double>(pdf_h_fas(cfg, static_cast<double>(r)));
                        },
                        0.0L, 12.0L, 48, 1e-10L);
                    EXPECT_NEAR(total, 1.0, 1e-6)
                        << to_string(family) << " " << param << " K=" << ports << " m=" << marginal.m;
                    for (double r = 0.01; r < 6.0; r += 0.173)
                        EXPECT_GE(pdf_h_fas(cfg, r), 0.0);
                }
            }
        }
    }
}

TEST(PdfHFas, MatchesFiniteDifferenceOfCdf)
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> shape(0.5, 10.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> ports(1, 32);
    for (int i = 0; i < 300; ++i) {
        const auto family = kFamilies[i % 3];
        const double param = family == CopulaFamily::Gumbel ? 1.0 + 29.0 * unit(rng) : 0.5 + 29.5 * unit(rng);
        const auto cfg = make_config(family_spec(family, param), ports(rng), 1.0, 1.0, {shape(rng), 1.0});
        const double r = marginal_quantile(cfg.marginal, 0.05 + 0.9 * unit(rng));
        const double h = 1e-6 * r;
        const double fd = (cdf_h_fas(cfg, r + h) - cdf_h_fas(cfg, r - h)) / (2 * h);
        EXPECT_NEAR(pdf_h_fas(cfg, r), fd, 1e-5 * std::max(1.0, fd))
            << to_string(family) << " " << param << " K=" << cfg.ports << " r=" << r;
    }
}

TEST(Outage, SisoBaseline)
{
    const auto cfg = make_config(CopulaSpec::frank(30.0), 1, 10.0, 1.0);
    EXPECT_NEAR(outage_general(cfg).p_out, -std::expm1(-0.1), 1e-15);
    EXPECT_NEAR(outage_closed_form(cfg).p_out, -std::expm1(-0.1), 1e-15);
    EXPECT_NEAR(outage_general(cfg).gamma_hat, std::sqrt(0.1), 1e-16);
}

TEST(Outage, ClosedFormExamples)
{
    // (1 - e^{-0.1})^4 = 8.2009632820695840e-5
    const auto indep = make_config(CopulaSpec::gumbel(1.0), 4, 10.0, 1.0);
    EXPECT_NEAR(outage_closed_form(indep).p_out, 8.200963282069584e-5, 1e-18);
    EXPECT_NEAR(outage_closed_form(make_config(CopulaSpec::independence(), 4, 10.0, 1.0)).p_out,
                8.200963282069584e-5, 1e-18);

    // mpmath, 40 digits
    EXPECT_NEAR(outage_closed_form(make_config(CopulaSpec::frank(30.0), 6)).p_out, 9.849236227075410e-6, 1e-18);
    EXPECT_NEAR(outage_closed_form(make_config(CopulaSpec::clayton(30.0), 6)).p_out, 0.009373288020330743515,
                1e-15);
    EXPECT_NEAR(outage_closed_form(make_config(CopulaSpec::gumbel(30.0), 6)).p_out, 0.007492158767659658461,
                1e-15);
}

TEST(Outage, FrankClosedFormMatchesGeneral)
{
    const auto cfg = make_config(CopulaSpec::frank(30.0), 6);
    EXPECT_NEAR(outage_closed_form(cfg).p_out, outage_general(cfg).p_out, 1e-12);
}

TEST(Outage, SinglePortEqualsMarginalForEveryFamily)
{
    for (auto family : kFamilies) {
        for (double param : {1.0, 5.0, 50.0}) {
            const auto cfg = make_config(family_spec(family, param), 1, 7.0, 2.0, {2.5, 0.8});
            const double f = reg_lower_inc_gamma(2.5, 2.5 / 0.8 * (2.0 / 7.0));
            EXPECT_NEAR(outage_closed_form(cfg).p_out, f, 1e-12);
            EXPECT_NEAR(outage_general(cfg).p_out, f, 1e-12);
        }
    }
}

TEST(Outage, ClosedFormAgreesWithGeneralOnRandomConfigs)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> ports(1, 32);
    for (int i = 0; i < 2000; ++i) {
        const auto family = static_cast<CopulaFamily>(i % 4);
        double param = 0.0;
        if (family == CopulaFamily::Gumbel)
            param = 1.0 + 49.0 * unit(rng);
        else if (family != CopulaFamily::Independence)
            param = 0.1 + 49.9 * unit(rng);
        const double snr_db = 40.0 * unit(rng);
        const double thr_db = -10.0 + 20.0 * unit(rng);
        const auto cfg = make_config(CopulaSpec{family, param}, ports(rng), std::pow(10.0, snr_db / 10.0),
                                     std::pow(10.0, thr_db / 10.0), {0.5 + 9.5 * unit(rng), 0.2 + 4.8 * unit(rng)});
        const double closed = outage_closed_form(cfg).p_out;
        const double general = outage_general(cfg).p_out;
        EXPECT_NEAR(closed, general, 1e-12) << to_string(family) << " " << param << " K=" << cfg.ports;
    }
}

TEST(Outage, MonotoneInThresholdSnrPortsAndDependence)
{
    for (auto family : kFamilies) {
        const std::vector<double> params = family == CopulaFamily::Gumbel
                                               ? std::vector<double>{1.0, 1.5, 2.0, 5.0, 10.0, 30.0, 50.0}
                                               : std::vector<double>{0.1, 0.5, 1.0, 5.0, 10.0, 30.0, 50.0};
        for (double param : params) {
            const auto spec = family_spec(family, param);
            double prev = -1.0;
            for (double thr_db = -20.0; thr_db <= 20.0; thr_db += 0.5) {
                const double p = outage_closed_form(make_config(spec, 6, 100.0, std::pow(10.0, thr_db / 10))).p_out;
                EXPECT_GE(p, prev);
                prev = p;
            }
            prev = 2.0;
            for (double snr_db = 0.0; snr_db <= 60.0; snr_db += 0.5) {
                const double p = outage_closed_form(make_config(spec, 6, std::pow(10.0, snr_db / 10))).p_out;
                EXPECT_LE(p, prev);
                prev = p;
            }
            prev = 2.0;
            for (std::int64_t k = 1; k <= 200; ++k) {
                const double p = outage_closed_form(make_config(spec, k, 10.0)).p_out;
                EXPECT_LE(p, prev);
                prev = p;
            }
        }
        for (std::int64_t k : {2, 6, 32}) {
            for (double snr : {1.0, 10.0, 100.0}) {
                double prev = -1.0;
                for (double param : params) {
                    const double p = outage_closed_form(make_config(family_spec(family, param), k, snr)).p_out;
                    EXPECT_GE(p, prev - 1e-15) << to_string(family) << " " << param << " K=" << k;
                    prev = p;
                }
            }
        }
    }
}

TEST(Outage, StaysInUnitIntervalAtExtremes)
{
    for (auto family : kFamilies) {
        for (double param : {1.0, 50.0}) {
            for (double snr : {1e-3, 1.0, 1e6}) {
                for (std::int64_t k : {1, 2, 32, 10000}) {
                    for (NakagamiParams marginal : {NakagamiParams{0.5, 1.0}, NakagamiParams{10.0, 3.0}}) {
                        const auto cfg = make_config(family_spec(family, param), k, snr, 1.0, marginal);
                        const double p = outage_closed_form(cfg).p_out;
                        EXPECT_GE(p, 0.0);
                        EXPECT_LE(p, 1.0);
                        EXPECT_TRUE(std::isfinite(outage_general(cfg).p_out));
                    }
                }
            }
        }
    }
}

TEST(Outage, Degeneracies)
{
    for (auto family : kFamilies) {
        auto cfg = make_config(family_spec(family, 3.0), 5, 10.0, 0.0);
        EXPECT_EQ(outage_closed_form(cfg).p_out, 0.0);
        EXPECT_EQ(outage_general(cfg).p_out, 0.0);
        EXPECT_EQ(outage_closed_form(cfg).gamma_hat, 0.0);
        // Threshold far above the support mass
        cfg.snr_threshold = 1e300;
        cfg.avg_snr = 1e-10;
        EXPECT_EQ(outage_closed_form(cfg).p_out, 1.0);
        EXPECT_EQ(outage_general(cfg).p_out, 1.0);
    }
}

TEST(Outage, HeterogeneousPortsUseGeneralRouteOnly)
{
    auto cfg = make_config(CopulaSpec::clayton(4.0), 3, 10.0, 1.0);
    cfg.per_port = {{1.0, 1.0}, {2.0, 0.5}, {0.7, 3.0}};
    EXPECT_THROW(outage_closed_form(cfg), UnsupportedConfiguration);

    std::vector<double> u;
    for (const auto& p : cfg.per_port)
        u.push_back(marginal_cdf(p, std::sqrt(0.1)));
    EXPECT_NEAR(outage_general(cfg).p_out, oracle::clayton_cdf_naive(4.0, u), 1e-13);

    // Identical per-port entries reduce to the homogeneous case.
    auto same = make_config(CopulaSpec::frank(9.0), 4, 10.0, 1.0, {2.0, 1.5});
    auto listed = same;
    listed.per_port.assign(4, NakagamiParams{2.0, 1.5});
    EXPECT_NEAR(outage_general(listed).p_out, outage_closed_form(same).p_out, 1e-12);
    EXPECT_NEAR(pdf_h_fas(listed, 0.8), pdf_h_fas(same, 0.8), 1e-6);
}

TEST(AsymptoticPortLimit, Examples)
{
    const std::vector<std::int64_t> ks{1, 4, 16};
    const auto gumbel = asymptotic_port_limit(CopulaSpec::gumbel(2.0), 0.5, ks);
    EXPECT_NEAR(gumbel[0], 0.5, 1e-15);
    EXPECT_NEAR(gumbel[1], 0.25, 1e-15);
    EXPECT_NEAR(gumbel[2], 0.0625, 1e-15);

    const std::vector<std::int64_t> ks3{1, 2, 3};
    const auto indep = asymptotic_port_limit(CopulaSpec::independence(), 0.5, ks3);
    EXPECT_NEAR(indep[0], 0.5, 1e-16);
    EXPECT_NEAR(indep[1], 0.25, 1e-16);
    EXPECT_NEAR(indep[2], 0.125, 1e-16);

    std::vector<std::int64_t> many;
    for (std::int64_t k = 1; k <= 50; ++k)
        many.push_back(k);
    const auto frank = asymptotic_port_limit(make_config(CopulaSpec::frank(30.0), 1), many);
    for (std::size_t i = 1; i < frank.size(); ++i)
        EXPECT_LT(frank[i], frank[i - 1]) << "K=" << many[i];
}

TEST(AsymptoticPortLimit, LargePortCounts)
{
    const std::vector<std::int64_t> ks{1, 10000};
    const auto frank = asymptotic_port_limit(CopulaSpec::frank(5.0), 0.9, ks);
    const auto gumbel = asymptotic_port_limit(CopulaSpec::gumbel(2.0), 0.9, ks);
    const auto clayton = asymptotic_port_limit(CopulaSpec::clayton(5.0), 0.9, ks);
    // mpmath references
    EXPECT_NEAR(frank[1], 1.3928820389512448e-20, 1e-30);
    EXPECT_NEAR(gumbel[1], 2.6561398887587477e-5, 1e-17);
    // Clayton decays only like K^{-1/beta}.
    EXPECT_NEAR(clayton[1], 0.17052069085421375, 1e-13);
    EXPECT_LT(clayton[1], clayton[0]);
}

TEST(AsymptoticPortLimit, RejectsUnsortedPorts)
{
    const std::vector<std::int64_t> bad{3, 3};
    EXPECT_THROW(asymptotic_port_limit(CopulaSpec::frank(1.0), 0.5, bad), DomainError);
    const std::vector<std::int64_t> zero{0, 1};
    EXPECT_THROW(asymptotic_port_limit(CopulaSpec::frank(1.0), 0.5, zero), DomainError);
    const std::vector<std::int64_t> ok{1};
    EXPECT_THROW(asymptotic_port_limit(CopulaSpec::frank(1.0), 1.5, ok), DomainError);
}
